#include "oracles.hpp"

#include <moepap/core.hpp>
#include <moepap/rng.hpp>

#include <doctest.h>

using namespace moepap;

namespace {

Individual ind(std::initializer_list<double> f)
{
    VectorXd v(static_cast<Index>(f.size()));
    Index i = 0;
    for (double x : f)
        v(i++) = x;
    return {VectorXd::Zero(1), v};
}

PointSetXd pts(std::initializer_list<std::initializer_list<double>> rows)
{
    PointSetXd p(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (auto r : rows) {
        Index j = 0;
        for (double x : r)
            p(i, j++) = x;
        ++i;
    }
    return p;
}

} // namespace

TEST_CASE("dominance relation")
{
    Eigen::Vector2d a(1, 2), b(2, 3), c(1, 3), d(2, 2);
    CHECK(dominance(a, b) == Dominance::a_dominates);
    CHECK(dominance(b, a) == Dominance::b_dominates);
    CHECK(dominance(a, a) == Dominance::equal);
    CHECK(dominance(c, d) == Dominance::incomparable);
    CHECK_THROWS_AS(dominance(a, VectorXd::Zero(3)), ContractViolation);
}

TEST_CASE("non-dominated filter")
{
    CHECK(nondominated_rows(pts({{1, 2}, {2, 1}, {2, 2}})) == std::vector<Index>{0, 1});
    CHECK(nondominated_rows(pts({{0, 0}})) == std::vector<Index>{0});

    SUBCASE("agrees with all-pairs oracle")
    {
        Rng rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            const PointSetXd p = oracle::random_points(rng, 50, 2 + trial % 2);
            CHECK(nondominated_rows(p) == oracle::nondominated(p));
        }
    }
    SUBCASE("duplicates survive together")
    {
        const SolutionSet s = nondominated_filter(std::vector{ind({1, 1}), ind({1, 1}), ind({2, 2})});
        CHECK(s.size() == 2);
        CHECK(is_mutually_nondominated(s));
    }
}

TEST_CASE("non-dominated sorting")
{
    const auto chain = nondominated_sort(pts({{1, 1}, {2, 2}, {3, 3}}));
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == std::vector<Index>{0});
    CHECK(chain[2] == std::vector<Index>{2});
    CHECK(nondominated_sort(pts({{0, 3}, {1, 2}, {2, 1}, {3, 0}})).size() == 1);

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const PointSetXd p = oracle::random_points(rng, 100, 3);
        const auto fronts = nondominated_sort(p);
        const auto ranks = oracle::peel_ranks(p);
        std::size_t seen = 0;
        for (std::size_t k = 0; k < fronts.size(); ++k)
            for (Index row : fronts[k]) {
                CHECK(ranks[row] == static_cast<int>(k));
                ++seen;
            }
        CHECK(seen == 100);
    }
}

TEST_CASE("crowding distance")
{
    const PointSetXd p = pts({{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}});
    const std::vector<Index> rows{0, 1, 2, 3, 4};
    const VectorXd d = crowding_distance(p, std::span<const Index>(rows));
    CHECK(std::isinf(d(0)));
    CHECK(std::isinf(d(4)));
    // (2/4) per objective for each interior point
    CHECK(d(1) == doctest::Approx(1.0));
    CHECK(d(2) == doctest::Approx(1.0));
}

TEST_CASE("crowding truncation")
{
    const PointSetXd p = pts({{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}});
    const std::vector<Index> rows{0, 1, 2, 3, 4};

    CHECK(crowding_select(p, std::span<const Index>(rows), 5) == rows);
    // Ties among the interior points: the later one goes first, then the
    // neighbour distances are recomputed and (2,2) ends up the widest.
    CHECK(crowding_select(p, std::span<const Index>(rows), 3) == std::vector<Index>{0, 2, 4});
    CHECK(crowding_select(p, std::span<const Index>(rows), 2) == std::vector<Index>{0, 4});
    CHECK_THROWS_AS(crowding_select(p, std::span<const Index>(rows), 6), ContractViolation);

    SUBCASE("k = 2 keeps the extremes of any front")
    {
        Rng rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            const PointSetXd f = oracle::random_front(rng, 30, 2);
            std::vector<Index> all(static_cast<std::size_t>(f.rows()));
            std::iota(all.begin(), all.end(), Index{0});
            const auto kept = crowding_select(f, std::span<const Index>(all), 2);
            Index lo, hi;
            f.col(0).minCoeff(&lo);
            f.col(0).maxCoeff(&hi);
            CHECK(((kept[0] == lo && kept[1] == hi) || (kept[0] == hi && kept[1] == lo)));
        }
    }
}

TEST_CASE("individual wrappers")
{
    const std::vector pop{ind({1, 1}), ind({0, 2}), ind({2, 2}), ind({3, 3})};
    const auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 3);
    CHECK(fronts[0] == std::vector<std::size_t>{0, 1});
    CHECK(objective_matrix(pop).rows() == 4);
    CHECK(crowding_truncate(std::vector{ind({0, 1}), ind({0.5, 0.5}), ind({1, 0})}, 2).size() == 2);
    CHECK_FALSE(is_mutually_nondominated(pop));
}

TEST_CASE("derived seeds are distinct and stable")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s)
        seen.insert(derive_seed(42, s));
    CHECK(seen.size() == 1000);
    static_assert(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
