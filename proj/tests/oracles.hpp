#pragma once
// Slow, obviously-correct reference implementations used by the tests.

#include <moepap/core.hpp>
#include <moepap/rng.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace oracle {

using moepap::Index;
using moepap::PointSetXd;
using moepap::VectorXd;

inline bool dominates(const VectorXd& a, const VectorXd& b)
{
    bool strict = false;
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) > b(i))
            return false;
        if (a(i) < b(i))
            strict = true;
    }
    return strict;
}

/// Rows not dominated by any other row.
inline std::vector<Index> nondominated(const PointSetXd& p)
{
    std::vector<Index> out;
    for (Index i = 0; i < p.rows(); ++i) {
        bool beaten = false;
        for (Index j = 0; j < p.rows(); ++j)
            if (dominates(p.row(j).transpose(), p.row(i).transpose()))
                beaten = true;
        if (!beaten)
            out.push_back(i);
    }
    return out;
}

/// Rank of every row by repeatedly peeling the non-dominated layer.
inline std::vector<int> peel_ranks(const PointSetXd& p)
{
    std::vector<int> rank(static_cast<std::size_t>(p.rows()), -1);
    int level = 0;
    for (std::size_t left = rank.size(); left > 0; ++level) {
        std::vector<Index> layer;
        for (Index i = 0; i < p.rows(); ++i) {
            if (rank[i] >= 0)
                continue;
            bool beaten = false;
            for (Index j = 0; j < p.rows(); ++j)
                if (rank[j] < 0 && dominates(p.row(j).transpose(), p.row(i).transpose()))
                    beaten = true;
            if (!beaten)
                layer.push_back(i);
        }
        for (Index i : layer)
            rank[i] = level;
        left -= layer.size();
    }
    return rank;
}

/// 2-D hypervolume as a union of rectangles over the grid of all distinct coordinates.
inline double hv_rectangles(const PointSetXd& p, const VectorXd& ref)
{
    std::vector<double> xs{ref(0)}, ys{ref(1)};
    for (Index i = 0; i < p.rows(); ++i) {
        if (p(i, 0) < ref(0) && p(i, 1) < ref(1)) {
            xs.push_back(p(i, 0));
            ys.push_back(p(i, 1));
        }
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    double area = 0.0;
    for (std::size_t a = 0; a + 1 < xs.size(); ++a) {
        for (std::size_t b = 0; b + 1 < ys.size(); ++b) {
            // A grid cell is covered iff some point lies weakly below its lower-left corner.
            bool covered = false;
            for (Index i = 0; i < p.rows() && !covered; ++i)
                covered = p(i, 0) <= xs[a] && p(i, 1) <= ys[b];
            if (covered)
                area += (xs[a + 1] - xs[a]) * (ys[b + 1] - ys[b]);
        }
    }
    return area;
}

/// 3-D hypervolume by the same grid-cell union (cubic; for small sets only).
inline double hv_cells3(const PointSetXd& p, const VectorXd& ref)
{
    std::vector<double> c[3];
    for (int k = 0; k < 3; ++k)
        c[k].push_back(ref(k));
    std::vector<Index> inside;
    for (Index i = 0; i < p.rows(); ++i) {
        if ((p.row(i).transpose().array() < ref.array()).all()) {
            inside.push_back(i);
            for (int k = 0; k < 3; ++k)
                c[k].push_back(p(i, k));
        }
    }
    for (auto& v : c) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    double vol = 0.0;
    for (std::size_t a = 0; a + 1 < c[0].size(); ++a)
        for (std::size_t b = 0; b + 1 < c[1].size(); ++b)
            for (std::size_t d = 0; d + 1 < c[2].size(); ++d) {
                bool covered = false;
                for (Index i : inside)
                    if (p(i, 0) <= c[0][a] && p(i, 1) <= c[1][b] && p(i, 2) <= c[2][d]) {
                        covered = true;
                        break;
                    }
                if (covered)
                    vol += (c[0][a + 1] - c[0][a]) * (c[1][b + 1] - c[1][b]) * (c[2][d + 1] - c[2][d]);
            }
    return vol;
}

/// Two-sided rank-sum p-value by enumerating every assignment of ranks to the first sample.
inline double rank_sum_p(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size();
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        double below = 0, equal = 0;
        for (double v : pooled) {
            below += v < pooled[i];
            equal += v == pooled[i];
        }
        rank[i] = below + (equal + 1.0) / 2.0;
    }
    double observed = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        observed += rank[i];
    const double expected = a.size() * (n + 1) / 2.0;
    long extreme = 0, total = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.size())
            continue;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                s += rank[i];
        ++total;
        if (std::abs(s - expected) >= std::abs(observed - expected) - 1e-9)
            ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

inline PointSetXd random_points(moepap::Rng& rng, Index n, Index m)
{
    PointSetXd p(n, m);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j)
            p(i, j) = moepap::uniform01(rng);
    return p;
}

/// Random mutually non-dominated 2-D or 3-D points (on a noisy simplex-like surface).
inline PointSetXd random_front(moepap::Rng& rng, Index n, Index m)
{
    PointSetXd p = random_points(rng, n, m);
    for (Index i = 0; i < n; ++i)
        p.row(i) /= p.row(i).sum();
    const auto keep = nondominated(p);
    PointSetXd out(static_cast<Index>(keep.size()), m);
    for (std::size_t k = 0; k < keep.size(); ++k)
        out.row(static_cast<Index>(k)) = p.row(keep[k]);
    return out;
}

} // namespace oracle
