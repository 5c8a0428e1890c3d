#pragma once

#include <moepap/types.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace moepap {

/// Decision vector plus its evaluated objectives (minimization).
struct Individual {
    VectorXd x;
    VectorXd f;

    bool operator==(const Individual&) const = default;
};

using Population = std::vector<Individual>;

/// Mutually non-dominated individuals; the unit of algorithm output.
using SolutionSet = std::vector<Individual>;

enum class Dominance { a_dominates, b_dominates, incomparable, equal };

/// Pareto relation between two objective vectors under minimization.
/// Comparisons are exact: no epsilon is applied.
template <typename DA, typename DB>
Dominance dominance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b)
{
    if (a.size() != b.size())
        throw ContractViolation("dominance: objective vectors differ in length");
    bool a_better = false;
    bool b_better = false;
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i))
            a_better = true;
        else if (b(i) < a(i))
            b_better = true;
        if (a_better && b_better)
            return Dominance::incomparable;
    }
    if (a_better)
        return Dominance::a_dominates;
    if (b_better)
        return Dominance::b_dominates;
    return Dominance::equal;
}

template <typename DA, typename DB>
bool dominates(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b)
{
    return dominance(a, b) == Dominance::a_dominates;
}

/// Rows of `points` not dominated by any other row, in ascending row order.
/// Identical rows do not dominate each other, so duplicates survive together.
template <typename Derived>
std::vector<Index> nondominated_rows(const Eigen::MatrixBase<Derived>& points)
{
    const Index n = points.rows();
    std::vector<Index> kept;
    for (Index i = 0; i < n; ++i) {
        bool beaten = false;
        for (Index j = 0; j < n && !beaten; ++j)
            beaten = j != i && dominates(points.row(j), points.row(i));
        if (!beaten)
            kept.push_back(i);
    }
    return kept;
}

/// Fast non-dominated sort. Returns fronts of row indices; front 0 is the
/// non-dominated set, front k the non-dominated set once fronts < k are removed.
template <typename Derived>
std::vector<std::vector<Index>> nondominated_sort(const Eigen::MatrixBase<Derived>& points)
{
    const Index n = points.rows();
    std::vector<std::vector<Index>> dominated_by(static_cast<std::size_t>(n));
    std::vector<Index> count(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const auto rel = dominance(points.row(i), points.row(j));
            if (rel == Dominance::a_dominates) {
                dominated_by[i].push_back(j);
                ++count[j];
            }
            else if (rel == Dominance::b_dominates) {
                dominated_by[j].push_back(i);
                ++count[i];
            }
        }
    }

    std::vector<std::vector<Index>> fronts;
    std::vector<Index> current;
    for (Index i = 0; i < n; ++i)
        if (count[i] == 0)
            current.push_back(i);
    while (!current.empty()) {
        std::vector<Index> next;
        for (Index i : current)
            for (Index j : dominated_by[i])
                if (--count[j] == 0)
                    next.push_back(j);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

/// Crowding distance of each listed row within the sub-front they form.
/// Boundary rows get +inf; objectives with zero range contribute 0.
template <typename Derived>
Vector<typename Derived::Scalar> crowding_distance(const Eigen::MatrixBase<Derived>& points,
                                                   std::span<const Index> rows)
{
    using Scalar = typename Derived::Scalar;
    const auto n = static_cast<Index>(rows.size());
    Vector<Scalar> distance = Vector<Scalar>::Zero(n);
    if (n == 0)
        return distance;
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index obj = 0; obj < points.cols(); ++obj) {
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
            return points(rows[a], obj) < points(rows[b], obj);
        });
        const Scalar lo = points(rows[order.front()], obj);
        const Scalar hi = points(rows[order.back()], obj);
        distance(order.front()) = std::numeric_limits<Scalar>::infinity();
        distance(order.back()) = std::numeric_limits<Scalar>::infinity();
        const Scalar range = hi - lo;
        if (range <= Scalar(0))
            continue;
        for (Index k = 1; k + 1 < n; ++k)
            distance(order[k]) += (points(rows[order[k + 1]], obj) - points(rows[order[k - 1]], obj)) / range;
    }
    return distance;
}

/// Reduces `rows` to k entries by repeatedly removing the most crowded one and
/// updating its neighbours' distances. Among equally crowded rows the one listed
/// last is removed first. Returns the survivors in their input order.
template <typename Derived>
std::vector<Index> crowding_select(const Eigen::MatrixBase<Derived>& points, std::span<const Index> rows,
                                   std::size_t k)
{
    using Scalar = typename Derived::Scalar;
    if (k > rows.size())
        throw ContractViolation("crowding_truncate: k exceeds front size");
    const auto n = static_cast<Index>(rows.size());
    const Index m = points.cols();
    if (k == rows.size())
        return {rows.begin(), rows.end()};

    // Per-objective doubly linked lists over the sorted order.
    Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> prev(n, m), next(n, m);
    Vector<Scalar> range(m);
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
            return points(rows[a], obj) < points(rows[b], obj);
        });
        for (Index pos = 0; pos < n; ++pos) {
            prev(order[pos], obj) = pos == 0 ? -1 : order[pos - 1];
            next(order[pos], obj) = pos + 1 == n ? -1 : order[pos + 1];
        }
        range(obj) = points(rows[order.back()], obj) - points(rows[order.front()], obj);
    }

    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    auto distance_of = [&](Index i) {
        Scalar d = 0;
        for (Index obj = 0; obj < m; ++obj) {
            const Index p = prev(i, obj);
            const Index q = next(i, obj);
            if (p < 0 || q < 0)
                return inf;
            if (range(obj) > Scalar(0))
                d += (points(rows[q], obj) - points(rows[p], obj)) / range(obj);
        }
        return d;
    };

    Vector<Scalar> distance(n);
    for (Index i = 0; i < n; ++i)
        distance(i) = distance_of(i);

    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    for (Index remaining = n; remaining > static_cast<Index>(k); --remaining) {
        Index victim = -1;
        for (Index i = 0; i < n; ++i)
            if (alive[i] && (victim < 0 || distance(i) <= distance(victim)))
                victim = i;
        alive[victim] = 0;
        for (Index obj = 0; obj < m; ++obj) {
            const Index p = prev(victim, obj);
            const Index q = next(victim, obj);
            if (p >= 0)
                next(p, obj) = q;
            if (q >= 0)
                prev(q, obj) = p;
        }
        for (Index obj = 0; obj < m; ++obj) {
            if (const Index p = prev(victim, obj); p >= 0)
                distance(p) = distance_of(p);
            if (const Index q = next(victim, obj); q >= 0)
                distance(q) = distance_of(q);
        }
    }

    std::vector<Index> kept;
    kept.reserve(k);
    for (Index i = 0; i < n; ++i)
        if (alive[i])
            kept.push_back(rows[i]);
    return kept;
}

// Individual-level wrappers.

PointSetXd objective_matrix(std::span<const Individual> pop);

SolutionSet nondominated_filter(std::span<const Individual> pop);

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const Individual> pop);

std::vector<Individual> crowding_truncate(std::span<const Individual> front, std::size_t k);

/// True when no member dominates another.
bool is_mutually_nondominated(std::span<const Individual> set);

} // namespace moepap
