// moepap: construct, evaluate and compare MOEA portfolios.
#include <moepap/experiment.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace moepap;

namespace {

struct Common {
    std::string manifest;
    std::string data_dir;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    std::size_t workers = 1;
};

void add_common(CLI::App& cmd, Common& c, bool needs_manifest = true)
{
    auto* m = cmd.add_option("--manifest", c.manifest, "problem manifest");
    if (needs_manifest)
        m->required()->check(CLI::ExistingFile);
    cmd.add_option("--data-dir", c.data_dir, "reference fronts and objective boxes (default: built-in data dir)");
    cmd.add_option("--output-dir,-o", c.output_dir, "directory for written files");
    cmd.add_option("--seed", c.seed, "master seed");
    cmd.add_option("--workers,-j", c.workers, "worker threads")->check(CLI::PositiveNumber);
}

ContextCache contexts_for(const Common& c)
{
    const fs::path dir = c.data_dir.empty() ? ProblemData::default_directory() : fs::path(c.data_dir);
    if (!fs::is_directory(dir / "fronts"))
        throw ConfigError("data directory " + dir.string() + " has no fronts/ (run `moepap generate-data`)");
    return ContextCache(std::make_shared<const ProblemData>(dir));
}

std::ofstream open_output(const Common& c, const std::string& file)
{
    fs::create_directories(c.output_dir);
    const fs::path path = fs::path(c.output_dir) / file;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    return out;
}

// Touches every front and box so that missing data fails before any run starts.
void check_resolvable(const Manifest& manifest, const ContextCache& contexts)
{
    for (const auto& e : manifest.problems) {
        make_problem(e.problem);
        contexts.get(e.problem);
    }
}

std::vector<Indicator> parse_indicators(const std::vector<std::string>& names)
{
    std::vector<Indicator> out;
    for (const auto& n : names)
        out.push_back(parse_indicator(n));
    return out;
}

// --- generate-data ---------------------------------------------------------

Portfolio published_portfolio()
{
    using C = AlgorithmConfig;
    Portfolio p;
    p.name = "published";
    p.members = {
        C::moead_sbx_pm(1, 48, {0.903, 9, 50}),
        C::nsga2_de(OperatorKind::rand_p, 1.072, 1, 0.026),
        C::moead_sbx_pm(62, 5, {0.794, 9, 29}),
        C::nsga2_de(OperatorKind::rand_p, 0.136, 1, 0.681),
        C::moead_de(OperatorKind::rand_p, 0.753, 1, 0.963, {0.645, 3, 42}),
        C::moead_sbx_pm(89, 2, {0.303, 2, 38}),
    };
    return p;
}

Manifest split(const std::vector<std::string>& problems, const std::vector<std::string>& unavailable)
{
    Manifest m;
    for (const auto& name : problems)
        m.problems.push_back({name, default_budget(BenchmarkId::parse(name)), {1, 2, 3}});
    m.unavailable = unavailable;
    return m;
}

void generate_data(const fs::path& dir, std::size_t points)
{
    fs::create_directories(dir / "fronts");
    fs::create_directories(dir / "boxes");
    fs::create_directories(dir / "manifests");
    fs::create_directories(dir / "portfolios");

    std::map<std::string, BoxMetadata> suites;
    for (const BenchmarkId id : all_benchmarks()) {
        const ReferenceFront front = sample_reference_front(id, points);
        std::ofstream out(dir / "fronts" / (id.name() + ".txt"), std::ios::binary);
        write_reference_front(out, front);
        std::string suite = id.name();
        while (!suite.empty() && std::isdigit(static_cast<unsigned char>(suite.back())))
            suite.pop_back();
        for (char& ch : suite)
            ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        suites[suite].boxes[id.name()] = objective_box(front, make_problem(id)->objective_upper_bound());
        std::cout << id.name() << ": " << front.points.rows() << " front points\n";
    }
    for (const auto& [suite, meta] : suites) {
        std::ofstream out(dir / "boxes" / (suite + ".json"), std::ios::binary);
        out << write_box_metadata(meta);
    }

    const Manifest train = split({"UF2", "UF3", "UF5", "UF9", "UF10", "WFG2", "WFG3", "WFG4", "WFG6", "WFG9", "DTLZ3",
                                  "DTLZ4", "DTLZ6", "ZDT3", "ZDT4", "ZDT5"},
                                 {"MaOP5", "MaOP7", "MaOP8", "MaOP10"});
    const Manifest test = split({"UF1", "UF4", "UF6", "UF7", "UF8", "WFG1", "WFG5", "WFG7", "WFG8", "DTLZ1", "DTLZ2",
                                 "DTLZ5", "DTLZ6", "DTLZ7", "ZDT1", "ZDT2", "ZDT6"},
                                {"MaOP1", "MaOP3", "MaOP4", "MaOP6", "MaOP9"});
    std::ofstream(dir / "manifests" / "train.txt", std::ios::binary) << [&] {
        std::ostringstream s;
        write_manifest(s, train);
        return s.str();
    }();
    std::ofstream(dir / "manifests" / "test.txt", std::ios::binary) << [&] {
        std::ostringstream s;
        write_manifest(s, test);
        return s.str();
    }();
    save_portfolio(published_portfolio(), dir / "portfolios" / "published.txt");
}

// --- printing ----------------------------------------------------------------

void print_table(const ResultTable& table, const ContextCache& contexts)
{
    std::cout << "mean (variance, divisor n) over repetitions\n";
    for (const auto& [key, cell] : table.cells) {
        const auto& [alg, prob, ind] = key;
        std::cout << "  " << alg << "  " << prob << "  " << to_string(ind) << "  " << cell.mean << " ("
                  << cell.variance << ")";
        if (ind == Indicator::hv)
            std::cout << "  ref=" << contexts.get(prob)->reference_point.transpose().format(
                                           Eigen::IOFormat(Eigen::StreamPrecision, Eigen::DontAlignCols, ",", ","));
        std::cout << '\n';
    }
    for (const auto& cmp : table.comparisons)
        std::cout << table.algorithms.front() << " vs " << cmp.opponent << " [" << to_string(cmp.indicator)
                  << "] W-D-L " << cmp.wdl.win << '-' << cmp.wdl.draw << '-' << cmp.wdl.loss << '\n';
}

void write_tables(const Common& c, const ResultTable& table)
{
    auto runs = open_output(c, "runs.csv");
    write_runs_csv(runs, table);
    auto summary = open_output(c, "summary.csv");
    write_summary(summary, table);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parallel portfolios of multi-objective evolutionary algorithms"};
    app.require_subcommand(1);

    // construct
    Common cons;
    ConstructOptions copt;
    auto* construct_cmd = app.add_subcommand("construct", "greedily build a portfolio on a training manifest");
    add_common(*construct_cmd, cons);
    construct_cmd->add_option("--max-members", copt.max_members)->check(CLI::Range(1, int(max_portfolio_size)));
    construct_cmd->add_option("--searches", copt.searches_per_iteration, "configurator runs per iteration")
        ->check(CLI::PositiveNumber);
    construct_cmd->add_option("--budget", copt.budget_per_search, "candidate evaluations per configurator run")
        ->required()
        ->check(CLI::PositiveNumber);
    construct_cmd->add_option("--max-iterations", copt.max_iterations)->check(CLI::PositiveNumber);
    std::string portfolio_name = "constructed";
    construct_cmd->add_option("--name", portfolio_name);

    // evaluate
    Common eval;
    std::string eval_portfolio;
    int eval_reps = 30;
    std::vector<std::string> eval_indicators{"HV", "IGD", "IHVR"};
    bool eval_time = false;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "run a portfolio on a manifest");
    add_common(*evaluate_cmd, eval);
    evaluate_cmd->add_option("--portfolio,-p", eval_portfolio)->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--repetitions,-r", eval_reps)->check(CLI::PositiveNumber);
    evaluate_cmd->add_option("--indicators", eval_indicators);
    evaluate_cmd->add_flag("--record-time", eval_time, "write wall-clock times (breaks byte-identical output)");

    // compare
    Common cmp;
    std::string cmp_portfolio;
    std::vector<std::string> cmp_configs, cmp_portfolios;
    int cmp_reps = 30, cmp_n = 1;
    std::string cmp_variant = "BASE";
    std::vector<std::string> cmp_indicators{"HV", "IGD", "IHVR"};
    bool cmp_time = false;
    auto* compare_cmd = app.add_subcommand("compare", "compare a portfolio against other algorithms");
    add_common(*compare_cmd, cmp);
    compare_cmd->add_option("--portfolio,-p", cmp_portfolio, "baseline portfolio")->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--against-config", cmp_configs,
                            "single configuration, e.g. \"nsga2 sbx_pm eta_sbx=20 pc=1 eta_pm=20 pm=1/n\"");
    compare_cmd->add_option("--against-portfolio", cmp_portfolios)->check(CLI::ExistingFile);
    compare_cmd->add_option("--repetitions,-r", cmp_reps)->check(CLI::PositiveNumber);
    compare_cmd->add_option("--variant", cmp_variant, "BASE, NGEN or NSIZE (single configurations only)");
    compare_cmd->add_option("--N", cmp_n, "budget multiplier for NGEN/NSIZE")->check(CLI::PositiveNumber);
    compare_cmd->add_option("--indicators", cmp_indicators);
    compare_cmd->add_flag("--record-time", cmp_time);

    // analyze-members
    Common ana;
    std::string ana_portfolio;
    int ana_reps = 30;
    auto* analyze_cmd = app.add_subcommand("analyze-members", "per-member vs. portfolio IHVR table");
    add_common(*analyze_cmd, ana);
    analyze_cmd->add_option("--portfolio,-p", ana_portfolio)->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--repetitions,-r", ana_reps)->check(CLI::PositiveNumber);

    // generate-data
    std::string gen_dir = ProblemData::default_directory().string();
    std::size_t gen_points = 1000;
    auto* generate_cmd = app.add_subcommand("generate-data", "write reference fronts, boxes, manifests");
    generate_cmd->add_option("--output-dir,-o", gen_dir);
    generate_cmd->add_option("--points", gen_points)->check(CLI::Range(std::size_t{1000}, std::size_t{1000000}));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*construct_cmd) {
            const ContextCache contexts = contexts_for(cons);
            const Manifest manifest = load_manifest(cons.manifest);
            check_resolvable(manifest, contexts);
            copt.seed = cons.seed;
            const Trainer trainer(manifest.problems, contexts, std::make_shared<EvalCache>(), cons.workers);
            auto [portfolio, report] = construct(ConfigSpace::standard(), trainer, copt);
            portfolio.name = portfolio_name;
            auto out = open_output(cons, "portfolio.txt");
            write_portfolio(out, portfolio);
            auto csv = open_output(cons, "construction.csv");
            write_report_csv(csv, report);
            std::cout << "members: " << portfolio.members.size() << "  stop: " << report.stop_reason
                      << "  runs: " << trainer.runs_executed() << '\n';
            if (!report.omega_trajectory.empty())
                std::cout << "omega: " << report.omega_trajectory.back() << '\n';
        }
        else if (*evaluate_cmd) {
            const ContextCache contexts = contexts_for(eval);
            ExperimentConfig cfg;
            cfg.manifest = load_manifest(eval.manifest);
            const Portfolio p = load_portfolio(eval_portfolio);
            cfg.algorithms.push_back({p.name, p, std::nullopt});
            cfg.repetitions = eval_reps;
            cfg.indicators = parse_indicators(eval_indicators);
            cfg.master_seed = eval.seed;
            cfg.workers = eval.workers;
            cfg.record_time = eval_time;
            check_resolvable(cfg.manifest, contexts);
            const ResultTable table = run_experiment(cfg, contexts);
            write_tables(eval, table);
            print_table(table, contexts);
        }
        else if (*compare_cmd) {
            const ContextCache contexts = contexts_for(cmp);
            ExperimentConfig cfg;
            cfg.manifest = load_manifest(cmp.manifest);
            const Portfolio base = load_portfolio(cmp_portfolio);
            cfg.algorithms.push_back({base.name, base, std::nullopt});
            for (const auto& path : cmp_portfolios) {
                const Portfolio p = load_portfolio(path);
                cfg.algorithms.push_back({p.name, p, std::nullopt});
            }
            for (const auto& line : cmp_configs) {
                const AlgorithmConfig c = parse_config(line.rfind("member", 0) == 0 ? line : "member " + line);
                cfg.algorithms.push_back({std::string(to_string(c.foundation)) + "-" + fingerprint(c).substr(0, 8),
                                          std::nullopt, c});
            }
            if (cfg.algorithms.size() < 2)
                throw ConfigError("compare: give at least one --against-config or --against-portfolio");
            cfg.repetitions = cmp_reps;
            cfg.variant = parse_variant(cmp_variant);
            cfg.N = cmp_n;
            cfg.indicators = parse_indicators(cmp_indicators);
            cfg.master_seed = cmp.seed;
            cfg.workers = cmp.workers;
            cfg.record_time = cmp_time;
            check_resolvable(cfg.manifest, contexts);
            const ResultTable table = run_experiment(cfg, contexts);
            write_tables(cmp, table);
            print_table(table, contexts);
        }
        else if (*analyze_cmd) {
            const ContextCache contexts = contexts_for(ana);
            const Manifest manifest = load_manifest(ana.manifest);
            const Portfolio p = load_portfolio(ana_portfolio);
            check_resolvable(manifest, contexts);
            const auto rows = member_analysis(p, manifest, ana_reps, ana.seed, contexts, ana.workers);
            auto out = open_output(ana, "members.csv");
            write_member_analysis_csv(out, p, rows);
            write_member_analysis_csv(std::cout, p, rows);
        }
        else if (*generate_cmd) {
            generate_data(gen_dir, gen_points);
        }
    }
    catch (const ParseError& e) {
        std::cerr << "error: kind=parse message=\"" << e.what() << "\"\n";
        return 3;
    }
    catch (const ConfigError& e) {
        std::cerr << "error: kind=config message=\"" << e.what() << "\"\n";
        return 2;
    }
    catch (const Unsupported& e) {
        std::cerr << "error: kind=unsupported message=\"" << e.what() << "\"\n";
        return 4;
    }
    catch (const ContractViolation& e) {
        std::cerr << "error: kind=contract message=\"" << e.what() << "\"\n";
        return 5;
    }
    catch (const std::exception& e) {
        std::cerr << "error: kind=internal message=\"" << e.what() << "\"\n";
        return 1;
    }
    return 0;
}
