#include <moepap/operators.hpp>
#include <moepap/problems.hpp>

#include <doctest.h>

#include <cmath>

using namespace moepap;

namespace {

Bounds unit(Index n) { return {VectorXd::Zero(n), VectorXd::Ones(n)}; }

VectorXd v1(double x) { return VectorXd::Constant(1, x); }

} // namespace

TEST_CASE("SBX spread factor and children")
{
    CHECK(sbx_beta(0.5, 20) == 1.0);
    auto [a, b] = sbx_pair(0.3, 0.7, 1.0);
    CHECK(a == 0.3);
    CHECK(b == 0.7);

    const double beta = sbx_beta(0.2, 1);
    CHECK(beta == doctest::Approx(std::sqrt(0.4)));
    std::tie(a, b) = sbx_pair(0.0, 1.0, beta);
    CHECK(a == doctest::Approx(0.1838).epsilon(1e-3));
    CHECK(b == doctest::Approx(0.8162).epsilon(1e-3));
    CHECK(sbx_beta(0.9, 2) == doctest::Approx(std::pow(1.0 / 0.2, 1.0 / 3.0)));

    Rng rng(1);
    const VectorXd x = VectorXd::Constant(5, 0.4);
    auto [c1, c2] = sbx_crossover(x, x, {20, 1.0}, unit(5), rng);
    CHECK(c1.isApprox(x, 1e-15));
    CHECK(c2.isApprox(x, 1e-15));
    CHECK_THROWS_AS(sbx_crossover(x, VectorXd::Zero(4), {20, 1.0}, unit(5), rng), ContractViolation);
}

TEST_CASE("SBX concentrates as eta grows")
{
    double previous = 1e9;
    for (int eta : {1, 10, 100}) {
        Rng rng(5);
        double total = 0.0;
        for (int t = 0; t < 10000; ++t) {
            const VectorXd x1 = v1(0.3), x2 = v1(0.7);
            auto [c1, c2] = sbx_crossover(x1, x2, {eta, 1.0}, unit(1), rng);
            total += std::min(std::abs(c1(0) - 0.3), std::abs(c1(0) - 0.7));
        }
        CHECK(total < previous);
        previous = total;
    }
}

TEST_CASE("polynomial mutation")
{
    // x at the lower bound: delta1 = 1 and the low branch yields no move.
    for (double r : {0.0, 0.1, 0.3, 0.5})
        CHECK(pm_delta(r, 1.0, 0.0, 20) == doctest::Approx(0.0));

    const double r = 0.3, eta = 20;
    const double expected = std::pow(2 * r + (1 - 2 * r) * std::pow(0.5, eta + 1), 1 / (eta + 1)) - 1;
    CHECK(pm_delta(r, 0.5, 0.5, eta) == doctest::Approx(expected));
    CHECK(pm_delta(0.5, 0.5, 0.5, eta) == doctest::Approx(0.0));
    CHECK(pm_delta(0.9, 0.5, 0.5, eta) > 0.0);

    Rng rng(2);
    const VectorXd x = VectorXd::LinSpaced(10, 0.0, 1.0);
    CHECK(polynomial_mutation(x, {20, 0.0}, unit(10), rng) == x);
    for (int t = 0; t < 200; ++t) {
        const VectorXd y = polynomial_mutation(x, {5, 1.0}, unit(10), rng);
        CHECK((y.array() >= 0.0).all());
        CHECK((y.array() <= 1.0).all());
    }
    CHECK(PmParams{}.probability(30) == doctest::Approx(1.0 / 30));
}

TEST_CASE("DE trial vectors")
{
    Rng rng(3);
    const Bounds b = unit(1);
    DeParams rand1{DeVariant::rand_p, 0.5, 0.5, 1, 1.0};
    const std::vector donors{v1(0.2), v1(0.6), v1(0.1)};
    CHECK(de_trial(v1(0.9), donors, nullptr, rand1, b, rng)(0) == doctest::Approx(0.45));

    rand1.F = 0.0;
    CHECK(de_trial(v1(0.9), donors, nullptr, rand1, b, rng)(0) == doctest::Approx(0.2));

    const Bounds b3 = unit(3);
    const VectorXd same = VectorXd::Constant(3, 0.25);
    const std::vector<VectorXd> five(5, same);
    DeParams rand2{DeVariant::rand_p, 1.3, 0.5, 2, 1.0};
    CHECK(de_trial(VectorXd::Zero(3), five, nullptr, rand2, b3, rng) == same);

    DeParams best{DeVariant::best_p, 0.5, 0.5, 1, 1.0};
    const VectorXd top = v1(0.7);
    CHECK(de_trial(v1(0.0), std::vector{v1(0.5), v1(0.3)}, &top, best, b, rng)(0) == doctest::Approx(0.8));
    CHECK_THROWS_AS(de_trial(v1(0.0), std::vector{v1(0.5), v1(0.3)}, nullptr, best, b, rng), ContractViolation);

    DeParams ctr{DeVariant::current_to_rand_p, 0.5, 0.5, 1, 1.0};
    // 0.2 + 0.5 (0.6 - 0.2) + 0.5 (0.5 - 0.3)
    CHECK(de_trial(v1(0.2), std::vector{v1(0.6), v1(0.5), v1(0.3)}, nullptr, ctr, b, rng)(0) ==
          doctest::Approx(0.5));

    CHECK(de_donor_count(rand2) == 5);
    CHECK(de_donor_count(best) == 2);
    CHECK_THROWS_AS(de_trial(v1(0.0), std::vector{v1(0.5)}, nullptr, rand1, b, rng), ContractViolation);

    SUBCASE("forced index takes the mutant even with a tiny CR")
    {
        DeParams low{DeVariant::rand_p, 0.5, 0.5, 1, 1e-9};
        const VectorXd target = VectorXd::Constant(4, 0.9);
        const std::vector<VectorXd> d(3, VectorXd::Constant(4, 0.1));
        for (int t = 0; t < 50; ++t) {
            const VectorXd trial = de_trial(target, d, nullptr, low, unit(4), rng);
            CHECK((trial.array() == 0.1).count() == 1);
        }
    }
}

TEST_CASE("PSO velocity update")
{
    const Bounds b{VectorXd::Constant(1, -10), VectorXd::Constant(1, 10)};
    Rng rng(4);
    PsoParams frozen;
    frozen.w = 0;
    frozen.c1 = frozen.c2 = 0;
    auto move = pso_update(v1(0.3), v1(0.2), v1(1.0), v1(2.0), frozen, b, rng);
    CHECK(move.velocity(0) == 0.0);
    CHECK(move.position(0) == 0.3);

    PsoParams p;
    p.w = 0.5;
    p.c1 = p.c2 = 2;
    move = pso_update(v1(0.3), v1(0.2), v1(0.3), v1(0.3), p, b, rng);
    CHECK(move.velocity(0) == doctest::Approx(0.1));

    // Replay the two uniform draws the update consumes per variable.
    Rng replay(9), live(9);
    const double r1 = uniform01(replay), r2 = uniform01(replay);
    move = pso_update(v1(0.0), v1(0.2), v1(0.1), v1(0.3), p, b, live);
    CHECK(move.velocity(0) == doctest::Approx(0.5 * 0.2 + 2 * r1 * 0.1 + 2 * r2 * 0.3));
    CHECK(0.5 * 0.2 + 2 * 0.5 * 0.1 + 2 * 0.5 * 0.3 == doctest::Approx(0.5));

    CHECK(smpso_constriction(1.5, 1.5) == doctest::Approx(1.0));
    CHECK(smpso_constriction(2.5, 2.5) == doctest::Approx(2.0 / (3.0 + std::sqrt(5.0))));

    SUBCASE("velocity cap and bound damping")
    {
        PsoParams q;
        q.w = 1;
        q.c1 = q.c2 = 0;
        q.vmax_ratio = 0.1; // 10% of the 20-wide range
        move = pso_update(v1(0.0), v1(5.0), v1(0), v1(0), q, b, rng);
        CHECK(move.velocity(0) == doctest::Approx(2.0));
        q.vmax_ratio = 1.0;
        q.v_change = 0.5;
        move = pso_update(v1(9.0), v1(5.0), v1(0), v1(0), q, b, rng);
        CHECK(move.position(0) == 10.0);
        CHECK(move.velocity(0) == doctest::Approx(-2.5));
    }
}

TEST_CASE("PSO mutations stay in bounds")
{
    Rng rng(6);
    const Bounds b = unit(8);
    const VectorXd x = VectorXd::Constant(8, 0.5);
    for (int t = 0; t < 200; ++t) {
        const VectorXd u = uniform_mutation(x, 1.0, 5, b, rng);
        CHECK(((u - x).array().abs() <= 0.05 + 1e-12).all());
        const VectorXd n = nonuniform_mutation(x, 1.0, t % 50, 50, b, rng);
        CHECK(((n.array() >= 0.0) && (n.array() <= 1.0)).all());
    }
    CHECK(nonuniform_mutation(x, 0.0, 3, 50, b, rng) == x);
}

TEST_CASE("binary operators")
{
    const std::array<int, 2> layout{4, 4};
    const BitString zeros(8, 0), ones(8, 1);
    const std::array<int, 2> none{0, 0};
    auto [a, b] = one_point_crossover(zeros, ones, layout, none);
    CHECK(a == zeros);
    CHECK(b == ones);

    const std::array<int, 2> cuts{1, 3};
    std::tie(a, b) = one_point_crossover(zeros, ones, layout, cuts);
    CHECK(a == BitString{0, 1, 1, 1, 0, 0, 0, 1});
    CHECK(b == BitString{1, 0, 0, 0, 1, 1, 1, 0});

    SUBCASE("flip count follows the binomial expectation")
    {
        Rng rng(8);
        const double p = 0.05;
        const int n = 80;
        double total = 0.0;
        for (int t = 0; t < 1000; ++t) {
            BitString parent(n);
            for (auto& bit : parent)
                bit = static_cast<std::uint8_t>(uniform_int(rng, 0, 1));
            const auto [c, d] = binary_variation(parent, parent, std::span<const int>(zdt5_layout), p, rng);
            int flips = 0;
            for (int i = 0; i < n; ++i)
                flips += c[i] != parent[i];
            total += flips;
        }
        const double mean = total / 1000.0;
        const double sigma = std::sqrt(n * p * (1 - p) / 1000.0);
        CHECK(std::abs(mean - n * p) < 3 * sigma);
    }
}
