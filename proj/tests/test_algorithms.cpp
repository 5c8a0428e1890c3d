#include "oracles.hpp"

#include <moepap/algorithms.hpp>
#include <moepap/indicators.hpp>
#include <moepap/portfolio.hpp>

#include <doctest.h>

#include <algorithm>

using namespace moepap;

namespace {

// Objective rows of the initial population, reproduced from the seed.
PointSetXd initial_front(const Problem& p, int pop, std::uint64_t seed)
{
    Rng rng(seed);
    PointSetXd f(pop, p.objectives());
    for (int i = 0; i < pop; ++i) {
        VectorXd x(p.variables());
        for (Index j = 0; j < x.size(); ++j)
            x(j) = uniform(rng, p.bounds().lower(j), p.bounds().upper(j));
        f.row(i) = p.evaluate(x).transpose();
    }
    const auto keep = oracle::nondominated(f);
    PointSetXd out(static_cast<Index>(keep.size()), f.cols());
    for (std::size_t k = 0; k < keep.size(); ++k)
        out.row(static_cast<Index>(k)) = f.row(keep[k]);
    return out;
}

std::vector<std::vector<double>> sorted_rows(const PointSetXd& p)
{
    std::vector<std::vector<double>> rows;
    for (Index i = 0; i < p.rows(); ++i) {
        std::vector<double> r;
        for (Index j = 0; j < p.cols(); ++j)
            r.push_back(p(i, j));
        rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

const AlgorithmConfig moead_default = AlgorithmConfig::moead_sbx_pm(20, 20, {0.9, 2, 20});

} // namespace

TEST_CASE("configuration names and validation")
{
    CHECK(parse_foundation("nsga2") == Foundation::nsga2);
    CHECK(parse_operator("current_to_best_p") == OperatorKind::current_to_best_p);
    CHECK_THROWS_AS(parse_operator("rand/9"), ConfigError);

    CHECK_NOTHROW(AlgorithmConfig::nsga2_de(OperatorKind::rand_p, 0.5, 2, 0.9).validate());
    CHECK_THROWS_AS(AlgorithmConfig::moead_de(OperatorKind::best_p, 0.5, 1, 0.9, {}).validate(), ConfigError);
    CHECK_THROWS_AS(AlgorithmConfig::nsga2_sbx_pm(0, 20).validate(), ConfigError);
    CHECK_THROWS_AS(AlgorithmConfig::nsga2_de(OperatorKind::current_to_rand_p, 0.5, 2, 0.9).validate(), ConfigError);
    CHECK_THROWS_AS(AlgorithmConfig::moead_sbx_pm(20, 20, {0.9, 11, 20}).validate(), ConfigError);
    PsoParams bad;
    bad.v_change = 0.5;
    CHECK_THROWS_AS(AlgorithmConfig::mopso(OperatorKind::omopso, bad).validate(), ConfigError);
}

TEST_CASE("weight lattice and scalarization")
{
    CHECK(simplex_lattice(2, 100).rows() == 100);
    CHECK(simplex_lattice(3, 100).rows() == 91);
    CHECK(simplex_lattice(3, 150).rows() == 136);
    const PointSetXd w = simplex_lattice(3, 91);
    CHECK((w.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK((w.array() >= 0.0).all());

    CHECK(tchebycheff(Eigen::Vector2d(1, 3), Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0, 0)) == 1.5);
    CHECK(tchebycheff(Eigen::Vector2d(1, 3), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 0)) ==
          doctest::Approx(1.0));
}

TEST_CASE("grid archive")
{
    Rng rng(1);
    GridArchive archive(3, 5);
    auto ind = [](double a, double b) { return Individual{VectorXd::Zero(1), Eigen::Vector2d(a, b)}; };
    CHECK(archive.insert(ind(0.5, 0.5), rng));
    CHECK_FALSE(archive.insert(ind(0.5, 0.5), rng));
    CHECK_FALSE(archive.insert(ind(0.6, 0.6), rng));
    CHECK(archive.insert(ind(0.4, 0.4), rng));
    CHECK(archive.size() == 1);
    archive.insert(ind(0.0, 1.0), rng);
    archive.insert(ind(1.0, 0.0), rng);
    archive.insert(ind(0.3, 0.45), rng);
    CHECK(archive.size() == 3);
    CHECK(is_mutually_nondominated(archive.members()));
}

TEST_CASE("zero generations return the initial first front")
{
    const auto zdt1 = make_problem("ZDT1");
    const RunResult r = run(AlgorithmConfig::nsga2_sbx_pm(20, 20), *zdt1, {40, 0}, 17);
    CHECK(r.evaluations == 40);
    CHECK(sorted_rows(objective_matrix(r.solutions)) == sorted_rows(initial_front(*zdt1, 40, 17)));
}

TEST_CASE("frozen swarm keeps the initial archive")
{
    const auto zdt2 = make_problem("ZDT2");
    PsoParams still;
    still.w = 0;
    still.c1 = still.c2 = 0;
    const RunResult r = run_mopso(*zdt2, AlgorithmConfig::mopso(OperatorKind::no_mutation, still), {30, 5}, 3);
    CHECK(sorted_rows(objective_matrix(r.solutions)) == sorted_rows(initial_front(*zdt2, 30, 3)));
}

TEST_CASE("runs are deterministic and well formed")
{
    const auto uf8 = make_problem("UF8");
    const auto zdt5 = make_problem("ZDT5");
    for (const AlgorithmConfig& c :
         {AlgorithmConfig::nsga2_sbx_pm(20, 20), AlgorithmConfig::nsga2_de(OperatorKind::current_to_best_p, 0.5, 1, 0.9),
          moead_default, AlgorithmConfig::moead_de(OperatorKind::current_to_rand_p, 0.5, 1, 0.9, {0.8, 2, 10}),
          AlgorithmConfig::mopso(OperatorKind::smpso, {}), AlgorithmConfig::mopso(OperatorKind::omopso, {})}) {
        for (const Problem* p : {uf8.get(), zdt5.get()}) {
            CAPTURE(format_config(c));
            CAPTURE(p->name());
            const RunResult a = run(c, *p, {30, 10}, 99);
            const RunResult b = run(c, *p, {30, 10}, 99);
            CHECK(a.solutions == b.solutions);
            CHECK(is_mutually_nondominated(a.solutions));
            CHECK(static_cast<int>(a.solutions.size()) <= a.pop_size);
            for (const auto& s : a.solutions) {
                CHECK(((s.x.array() >= p->bounds().lower.array()) && (s.x.array() <= p->bounds().upper.array())).all());
                CHECK(s.f == p->evaluate(s.x));
            }
        }
    }
    CHECK(run(moead_default, *uf8, {100, 1}, 1).pop_size == 91);
}

TEST_CASE("error paths")
{
    const auto zdt1 = make_problem("ZDT1");
    CHECK_THROWS_AS(run(AlgorithmConfig::nsga2_sbx_pm(20, 20), *zdt1, {3, 5}, 1), ConfigError);
    CHECK_THROWS_AS(run(AlgorithmConfig::nsga2_sbx_pm(20, 20), *zdt1, {10, -1}, 1), ConfigError);
    // 20 neighbours requested from a 4-weight lattice
    CHECK_THROWS_AS(run(moead_default, *zdt1, {4, 5}, 1), ConfigError);
    CHECK_THROWS_AS(run_moead(*zdt1, AlgorithmConfig::nsga2_sbx_pm(20, 20), {50, 5}, 1), ConfigError);
}

TEST_CASE("ZDT1 convergence sanity")
{
    const auto zdt1 = make_problem("ZDT1");
    const auto front = ContextCache::shared().front("ZDT1");
    const RunResult r = run(AlgorithmConfig::nsga2_sbx_pm(20, 20), *zdt1, {100, 250}, 5);
    CHECK(r.evaluations == 100 * 251);
    CHECK(igd(r.solutions, front->points) <= 0.05);
}
