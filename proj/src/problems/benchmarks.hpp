#pragma once

#include <moepap/problems.hpp>

#include <cmath>
#include <functional>
#include <numbers>

namespace moepap::detail {

inline constexpr double pi = std::numbers::pi;

std::unique_ptr<Problem> make_zdt(int index);
std::unique_ptr<Problem> make_dtlz(int index);
std::unique_ptr<Problem> make_wfg(int index);
std::unique_ptr<Problem> make_uf(int index);

inline Bounds uniform_bounds(int n, double lo, double hi)
{
    return {VectorXd::Constant(n, lo), VectorXd::Constant(n, hi)};
}

/// First variable in [0,1], the rest in [lo, hi].
inline Bounds head_unit_bounds(int n, int unit_vars, double lo, double hi)
{
    Bounds b = uniform_bounds(n, lo, hi);
    b.lower.head(unit_vars).setZero();
    b.upper.head(unit_vars).setOnes();
    return b;
}

/// Drops exact duplicate rows and rows dominated by another row.
PointSetXd clean_front(const PointSetXd& points);

/// Evaluates `curve(t)` on `resolution` evenly spaced t in [lo, hi]
/// (endpoints included), doubling the resolution until at least `count`
/// non-dominated points survive.
PointSetXd sample_curve(std::size_t count, double lo, double hi, int m,
                        const std::function<VectorXd(double)>& curve);

/// Same as sample_curve over a square grid of (s, t) in [0,1]^2.
PointSetXd sample_surface(std::size_t count, const std::function<VectorXd(double, double)>& surface);

} // namespace moepap::detail
