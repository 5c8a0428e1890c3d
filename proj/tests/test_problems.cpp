#include "oracles.hpp"

#include <moepap/indicators.hpp>
#include <moepap/problems.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace moepap;

namespace {

VectorXd random_x(const Problem& p, Rng& rng)
{
    VectorXd x(p.variables());
    for (Index i = 0; i < x.size(); ++i)
        x(i) = uniform(rng, p.bounds().lower(i), p.bounds().upper(i));
    return x;
}

} // namespace

TEST_CASE("benchmark names and dimensions")
{
    CHECK(all_benchmarks().size() == 32);
    CHECK(BenchmarkId::parse("dtlz7").name() == "DTLZ7");
    CHECK_THROWS(BenchmarkId::parse("ZDT7"));
    CHECK_THROWS(BenchmarkId::parse("MaOP1"));

    const std::map<std::string, std::pair<int, int>> dims{
        {"ZDT1", {30, 2}}, {"ZDT4", {10, 2}}, {"ZDT5", {11, 2}}, {"ZDT6", {10, 2}}, {"DTLZ1", {11, 2}},
        {"DTLZ7", {11, 2}}, {"WFG1", {12, 3}}, {"WFG9", {12, 3}}, {"UF1", {30, 2}},  {"UF10", {30, 3}},
    };
    for (const auto& [name, nm] : dims) {
        const auto p = make_problem(name);
        CHECK(p->dimension() == nm.first);
        CHECK(p->objectives() == nm.second);
    }
    CHECK_THROWS_AS(make_problem(BenchmarkId::parse("DTLZ2"), 12, 2), ContractViolation);
}

TEST_CASE("hand-evaluated points")
{
    const auto zdt1 = make_problem("ZDT1");
    VectorXd x = VectorXd::Zero(30);
    CHECK(zdt1->evaluate(x)(0) == 0.0);
    CHECK(zdt1->evaluate(x)(1) == 1.0);
    x(0) = 1.0;
    CHECK(zdt1->evaluate(x)(1) == doctest::Approx(0.0));

    const auto dtlz2 = make_problem("DTLZ2");
    const VectorXd f = dtlz2->evaluate(VectorXd::Constant(11, 0.5));
    CHECK(f(0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(f(1) == doctest::Approx(std::sqrt(0.5)));

    CHECK_THROWS_AS(zdt1->evaluate(VectorXd::Zero(29)), ContractViolation);
    CHECK_THROWS_AS(zdt1->evaluate(VectorXd::Constant(30, 2.0)), ContractViolation);
}

TEST_CASE("ZDT5 bit genotype")
{
    BitString bits(80, 0);
    VectorXd f = evaluate_zdt5_bits(bits);
    CHECK(f(0) == 1.0);  // 1 + u(x1) with no ones
    CHECK(f(1) == 20.0); // g = 10 * 2, h = 1
    std::fill(bits.begin(), bits.end(), 1);
    f = evaluate_zdt5_bits(bits);
    CHECK(f(0) == 31.0);
    CHECK(f(1) == doctest::Approx(10.0 / 31.0));
    CHECK_THROWS_AS(evaluate_zdt5_bits(BitString(79, 0)), ContractViolation);
}

TEST_CASE("reference fronts")
{
    SUBCASE("ZDT1 lies on 1 - sqrt(f1)")
    {
        const auto front = sample_reference_front(BenchmarkId::parse("ZDT1"), 1001);
        CHECK(front.points.rows() == 1001);
        for (Index i = 0; i < front.points.rows(); ++i)
            CHECK(front.points(i, 1) == doctest::Approx(1.0 - std::sqrt(front.points(i, 0))));
    }
    SUBCASE("DTLZ2 lies on the unit circle")
    {
        const auto front = sample_reference_front(BenchmarkId::parse("DTLZ2"), 1000);
        for (Index i = 0; i < front.points.rows(); ++i)
            CHECK(front.points.row(i).norm() == doctest::Approx(1.0));
    }
    SUBCASE("finite fronts")
    {
        CHECK(sample_reference_front(BenchmarkId::parse("ZDT5"), 1000).points.rows() == 31);
        CHECK(sample_reference_front(BenchmarkId::parse("UF5"), 1000).points.rows() == 21);
    }
    SUBCASE("every front is mutually non-dominated and large enough")
    {
        for (const BenchmarkId id : all_benchmarks()) {
            CAPTURE(id.name());
            const auto front = sample_reference_front(id, 1000);
            if (id.name() != "ZDT5" && id.name() != "UF5")
                CHECK(front.points.rows() >= 1000);
            CHECK(oracle::nondominated(front.points).size() == static_cast<std::size_t>(front.points.rows()));
        }
    }
    SUBCASE("file round trip")
    {
        const auto front = sample_reference_front(BenchmarkId::parse("WFG4"), 1000);
        std::stringstream s;
        write_reference_front(s, front);
        const auto back = read_reference_front(s);
        CHECK(back.name == "WFG4");
        CHECK(back.points == front.points);
        std::istringstream bad("# X m=2\n1 2 3\n");
        CHECK_THROWS_AS(read_reference_front(bad), ParseError);
    }
}

// Random decision vectors never beat the true front, and never leave the objective box.
TEST_CASE("fronts and boxes against random evaluations")
{
    Rng rng(2024);
    for (const BenchmarkId id : all_benchmarks()) {
        CAPTURE(id.name());
        const auto problem = make_problem(id);
        const auto front = sample_reference_front(id, 1000);
        const ObjectiveBox box = objective_box(front, problem->objective_upper_bound());
        int outside = 0, beats_front = 0;
        for (int s = 0; s < 10000; ++s) {
            const VectorXd f = problem->evaluate(random_x(*problem, rng));
            if ((f.array() > box.upper.array()).any() || (f.array() < box.ideal.array() - 1e-9).any())
                ++outside;
            if (s % 10 == 0)
                for (Index i = 0; i < front.points.rows(); ++i)
                    if (oracle::dominates(f + VectorXd::Constant(f.size(), 1e-9), front.points.row(i).transpose()))
                        ++beats_front;
        }
        CHECK(outside == 0);
        CHECK(beats_front == 0);
    }
}

TEST_CASE("documented upper bounds")
{
    auto upper = [](const char* name) { return make_problem(name)->objective_upper_bound(); };
    CHECK(upper("ZDT1") == Eigen::Vector2d(1, 10));
    CHECK(upper("ZDT5") == Eigen::Vector2d(31, 60));
    CHECK(upper("WFG1") == Eigen::Vector3d(3, 5, 7));
}

TEST_CASE("shipped data matches the generators")
{
    const ProblemData data(ProblemData::default_directory());
    const auto front = data.front("UF1");
    CHECK(front->points == sample_reference_front(BenchmarkId::parse("UF1"), 1000).points);
    const ObjectiveBox box = data.objective_box("ZDT1");
    CHECK(box.ideal == Eigen::Vector2d(0, 0));
    CHECK(box.upper == Eigen::Vector2d(1, 10));
    CHECK_THROWS_AS(data.front("ZDT9"), std::exception);

    BoxMetadata meta;
    meta.boxes["ZDT1"] = box;
    CHECK(read_box_metadata(write_box_metadata(meta)).boxes.at("ZDT1").upper == box.upper);
    CHECK_THROWS_AS(read_box_metadata("{\"version\": 9, \"problems\": {}}"), ParseError);
    CHECK_THROWS_AS(read_box_metadata("not json"), ParseError);
}
