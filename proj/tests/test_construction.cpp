#include <moepap/construction.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace moepap;

namespace {

TrainingSet toy_training()
{
    return {{"ZDT1", {20, 10}, {1, 2}}, {"DTLZ2", {20, 10}, {7}}};
}

// One NSGA-II subspace whose only freedom is a three-value grid for eta_sbx.
Subspace eta_grid()
{
    Subspace s{"eta", Foundation::nsga2, {OperatorKind::sbx_pm}, {}};
    s.params.push_back(Parameter{"eta_sbx", ParamKind::grid, 1, 60, false, {1.0, 20.0, 60.0}, {},
                                 [](AlgorithmConfig& c, double v) { c.sbx.eta = int(v); },
                                 [](const AlgorithmConfig& c) { return double(c.sbx.eta); }});
    return s;
}

bool on_grid(double v) { return std::abs(v * 1000.0 - std::round(v * 1000.0)) < 1e-6; }

} // namespace

TEST_CASE("standard space samples valid configurations")
{
    const ConfigSpace space = ConfigSpace::standard();
    REQUIRE(space.subspaces.size() == 3);
    Rng rng(11);
    for (const Subspace& sub : space.subspaces) {
        CAPTURE(sub.name);
        for (int t = 0; t < 300; ++t) {
            const AlgorithmConfig c = sub.sample(rng);
            CHECK(c.foundation == sub.foundation);
            CHECK_NOTHROW(c.validate());
            for (const Parameter& p : sub.params) {
                const double v = p.get(c);
                if (p.kind == ParamKind::real) {
                    CHECK(on_grid(v));
                    CHECK(v <= p.hi);
                    CHECK((p.lo_open ? v > p.lo : v >= p.lo));
                }
            }
            const AlgorithmConfig q = sub.perturb(c, rng);
            CHECK_NOTHROW(q.validate());
            // one dimension moves; fields an operator switch pins (p for current-to) do not count
            int changed = q.op != c.op;
            for (const Parameter& p : sub.params)
                changed += p.active(c.op) && p.active(q.op) && p.get(q) != p.get(c);
            CHECK(changed <= 1);
        }
    }
}

TEST_CASE("manifests")
{
    std::istringstream in("# comment\nproblem ZDT1 pop=50 gens=20 seeds=4,5\nproblem uf9\nunavailable MaOP1\n");
    const Manifest m = read_manifest(in);
    REQUIRE(m.problems.size() == 2);
    CHECK(m.problems[0].budget.pop_size == 50);
    CHECK(m.problems[0].seeds == std::vector<std::uint64_t>{4, 5});
    CHECK(m.problems[1].problem == "UF9");
    CHECK(m.problems[1].budget.pop_size == 150);
    CHECK(m.problems[1].budget.max_generations == 600);
    CHECK(m.problems[1].seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(m.unavailable == std::vector<std::string>{"MaOP1"});

    std::stringstream s;
    write_manifest(s, m);
    const Manifest back = read_manifest(s);
    CHECK(back.problems[1].budget.max_generations == 600);
    CHECK(back.unavailable == m.unavailable);

    CHECK(default_budget(BenchmarkId::parse("UF3")).max_generations == 500);
    CHECK(default_budget(BenchmarkId::parse("WFG4")).pop_size == 150);
    CHECK(default_budget(BenchmarkId::parse("DTLZ1")).max_generations == 250);

    auto parse = [](const std::string& text) {
        std::istringstream i(text);
        return read_manifest(i);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("unavailable MaOP1\n"), ParseError);
    CHECK_THROWS_AS(parse("problem ZDT1\nproblem zdt1\n"), ParseError);
    CHECK_THROWS_AS(parse("problme ZDT1\n"), ParseError);
    CHECK_THROWS_AS(parse("problem ZDT9\n"), ParseError);
    CHECK_THROWS_AS(parse("problem ZDT1 pop=x\n"), ParseError);
    CHECK_THROWS_AS(parse("problem ZDT1 seeds=1,,2\n"), ParseError);
    CHECK_THROWS_AS(parse("problem ZDT1 pop=0\n"), ParseError);
    CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.txt"), ConfigError);
}

TEST_CASE("trainer scores")
{
    const auto cache = std::make_shared<EvalCache>();
    const Trainer trainer(toy_training(), ContextCache::shared(), cache);
    const AlgorithmConfig a = AlgorithmConfig::nsga2_sbx_pm(20, 20);
    const AlgorithmConfig b = AlgorithmConfig::nsga2_de(OperatorKind::rand_p, 0.5, 1, 0.9);

    CHECK(trainer.omega(std::vector<AlgorithmConfig>{}) == 0.0);

    // Common random numbers: member runs use the raw training seeds.
    const auto zdt1 = make_problem("ZDT1");
    const RunResult direct = run(a, *zdt1, {20, 10}, 2);
    const auto cached = trainer.member_run(a, 0, 1);
    CHECK(cached->solutions == direct.solutions);
    CHECK(cached->metric == ihvr(direct.solutions, *ContextCache::shared().get("ZDT1")));

    // Hand-computed Omega of {a, b}
    double expected = 0.0;
    for (std::size_t z = 0; z < 2; ++z) {
        const auto& entry = trainer.training()[z];
        const auto ctx = ContextCache::shared().get(entry.problem);
        double per_problem = 0.0;
        for (std::size_t s = 0; s < entry.seeds.size(); ++s) {
            const auto ra = trainer.member_run(a, z, s), rb = trainer.member_run(b, z, s);
            const double restructured =
                ihvr(restructure_union(std::vector{ra->solutions, rb->solutions}), *ctx);
            per_problem += std::max({ra->metric, rb->metric, restructured});
        }
        expected += per_problem / double(entry.seeds.size());
    }
    expected /= 2.0;
    const std::vector<AlgorithmConfig> pair{a, b};
    CHECK(trainer.omega(pair) == doctest::Approx(expected).epsilon(1e-14));

    // With an empty portfolio the contribution is the mean member IHVR.
    const double alone = (0.5 * (trainer.member_run(a, 0, 0)->metric + trainer.member_run(a, 0, 1)->metric) +
                          trainer.member_run(a, 1, 0)->metric) /
                         2.0;
    CHECK(trainer.marginal_contribution({}, a) == doctest::Approx(alone).epsilon(1e-14));
    CHECK(trainer.marginal_contribution(pair, a) == 0.0);
    CHECK(trainer.marginal_contribution(std::vector{a}, b) >= 0.0);

    const long executed = trainer.runs_executed();
    trainer.omega(pair);
    CHECK(trainer.runs_executed() == executed); // everything is cached now
    CHECK(cache->size() == 6);

    CHECK_THROWS_AS(Trainer({}, ContextCache::shared(), cache), ConfigError);
    CHECK_THROWS_AS(Trainer({{"ZDT1", {20, 10}, {}}}, ContextCache::shared(), cache), ConfigError);
}

TEST_CASE("failed members score zero")
{
    const Trainer trainer(toy_training(), ContextCache::shared(), std::make_shared<EvalCache>());
    // 40 neighbours cannot fit a population of 20
    const AlgorithmConfig broken = AlgorithmConfig::moead_sbx_pm(20, 20, {0.9, 2, 40});
    CHECK(trainer.member_run(broken, 0, 0)->failed);
    CHECK(trainer.omega(std::vector{broken}) == 0.0);
    const AlgorithmConfig good = AlgorithmConfig::nsga2_sbx_pm(20, 20);
    CHECK(trainer.omega(std::vector{good, broken}) == doctest::Approx(trainer.omega(std::vector{good})));
}

TEST_CASE("contributions are never negative under common random numbers")
{
    const Trainer trainer({{"WFG4", {60, 15}, {3, 4}}, {"DTLZ7", {60, 15}, {3}}}, ContextCache::shared(),
                          std::make_shared<EvalCache>());
    const ConfigSpace space = ConfigSpace::standard();
    Rng rng(8);
    std::vector<AlgorithmConfig> portfolio;
    for (int t = 0; t < 12; ++t) {
        const AlgorithmConfig theta = space.subspaces[std::size_t(t % 3)].sample(rng);
        CHECK(trainer.marginal_contribution(portfolio, theta) >= 0.0);
        if (portfolio.size() < 4)
            portfolio.push_back(theta);
    }
}

TEST_CASE("configurator")
{
    const Trainer trainer(toy_training(), ContextCache::shared(), std::make_shared<EvalCache>());
    const Subspace sub = eta_grid();

    Rng rng(42);
    const SearchResult one = configure_subspace({}, sub, trainer, 1, 42);
    CHECK(one.best == sub.sample(rng));
    CHECK(one.evaluations == 1);
    CHECK_THROWS_AS(configure_subspace({}, sub, trainer, 0, 42), ConfigError);

    // With a generous budget every grid point is visited, so the winner is the brute-force argmax.
    double best = -1.0;
    for (double eta : {1.0, 20.0, 60.0}) {
        AlgorithmConfig c = sub.sample(rng);
        c.sbx.eta = int(eta);
        best = std::max(best, trainer.marginal_contribution({}, c));
    }
    const SearchResult full = configure_subspace({}, sub, trainer, 30, 3);
    CHECK(full.evaluations == 30);
    CHECK(full.contribution == best);
    CHECK(configure_subspace({}, sub, trainer, 30, 3).best == full.best);
}

TEST_CASE("greedy construction")
{
    const Trainer trainer(toy_training(), ContextCache::shared(), std::make_shared<EvalCache>(), 2);
    ConfigSpace space;
    space.subspaces = {eta_grid()};
    space.subspaces.push_back(ConfigSpace::standard().subspaces[0]);

    ConstructOptions options;
    options.max_members = 1;
    options.searches_per_iteration = 2;
    options.budget_per_search = 3;
    const auto [single, single_report] = construct(space, trainer, options);
    CHECK(single.members.size() == 1);
    CHECK(single_report.stop_reason == "reached the maximum portfolio size");

    options.max_members = 4;
    options.max_iterations = 4;
    const auto [p, report] = construct(space, trainer, options);
    REQUIRE_FALSE(p.members.empty());
    CHECK(p.members.size() <= 4);
    for (std::size_t i = 1; i < report.omega_trajectory.size(); ++i)
        CHECK(report.omega_trajectory[i] > report.omega_trajectory[i - 1]);
    CHECK(trainer.omega(p.members) == doctest::Approx(report.omega_trajectory.back()));
    // After simplification no member can be dropped without lowering Omega.
    if (p.members.size() > 1)
        for (std::size_t j = 0; j < p.members.size(); ++j) {
            auto reduced = p.members;
            reduced.erase(reduced.begin() + long(j));
            CHECK(trainer.omega(reduced) < report.omega_trajectory.back());
        }

    const auto again = construct(space, trainer, options).first;
    CHECK(again.members == p.members);

    std::ostringstream csv;
    write_report_csv(csv, report);
    CHECK(csv.str().rfind("iteration,event,", 0) == 0);
    CHECK(csv.str().find(",insert,") != std::string::npos);

    SUBCASE("a space with no working configuration yields nothing")
    {
        Subspace broken{"broken", Foundation::moead, {OperatorKind::sbx_pm}, {}};
        broken.params.push_back(Parameter{"neighbor_size", ParamKind::grid, 40, 40, false, {40.0}, {},
                                          [](AlgorithmConfig& c, double v) { c.moead.neighbor_size = int(v); },
                                          [](const AlgorithmConfig& c) { return double(c.moead.neighbor_size); }});
        ConfigSpace none{{broken}};
        const auto [empty, why] = construct(none, trainer, options);
        CHECK(empty.members.empty());
        CHECK(why.stop_reason == "no candidate improves the portfolio");
    }

    CHECK_THROWS_AS(construct(ConfigSpace{}, trainer, options), ConfigError);
    options.max_members = 11;
    CHECK_THROWS_AS(construct(space, trainer, options), ConfigError);
}
