#include <moepap/experiment.hpp>
#include <moepap/parallel.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace moepap {

namespace {

constexpr std::array indicator_names{"HV", "IGD", "IHVR"};
constexpr std::array variant_names{"BASE", "NGEN", "NSIZE"};

std::string upper(std::string_view text)
{
    std::string s(text);
    for (char& ch : s)
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

std::string number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

} // namespace

std::string_view to_string(Indicator indicator) { return indicator_names[static_cast<std::size_t>(indicator)]; }

Indicator parse_indicator(std::string_view text)
{
    const std::string u = upper(text);
    for (std::size_t i = 0; i < indicator_names.size(); ++i)
        if (u == indicator_names[i])
            return static_cast<Indicator>(i);
    throw ConfigError("unknown indicator '" + std::string(text) + "'");
}

bool higher_is_better(Indicator indicator) { return indicator != Indicator::igd; }

std::string_view to_string(Variant variant) { return variant_names[static_cast<std::size_t>(variant)]; }

Variant parse_variant(std::string_view text)
{
    const std::string u = upper(text);
    for (std::size_t i = 0; i < variant_names.size(); ++i)
        if (u == variant_names[i])
            return static_cast<Variant>(i);
    throw ConfigError("unknown variant '" + std::string(text) + "'");
}

double indicator_value(Indicator indicator, const SolutionSet& set, const HvContext& ctx, const PointSetXd& front)
{
    switch (indicator) {
    case Indicator::hv:
        return set.empty() ? 0.0 : hypervolume(clip_to_box(objective_matrix(set), ctx), ctx.reference_point);
    case Indicator::igd: return igd(set, front);
    case Indicator::ihvr: return ihvr(set, ctx);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------

MemberAnalysisRow analyze_member_sets(const std::string& problem,
                                      const std::vector<std::vector<SolutionSet>>& sets,
                                      const HvContext& ctx)
{
    if (sets.empty() || sets.front().empty())
        throw ContractViolation("analyze_member_sets: no repetitions or no members");
    const std::size_t k = sets.front().size();
    MemberAnalysisRow row;
    row.problem = problem;
    row.member.assign(k, 0.0);
    for (const auto& rep : sets) {
        if (rep.size() != k)
            throw ContractViolation("analyze_member_sets: member count differs between repetitions");
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < k; ++i) {
            const double v = ihvr(rep[i], ctx);
            row.member[i] += v;
            best = std::max(best, v);
        }
        row.no_restructure += best;
        row.full += std::max(best, ihvr(restructure_union(rep), ctx));
    }
    const auto reps = static_cast<double>(sets.size());
    for (double& v : row.member)
        v /= reps;
    row.no_restructure /= reps;
    row.full /= reps;
    row.best_member = static_cast<std::size_t>(std::max_element(row.member.begin(), row.member.end()) - row.member.begin());
    return row;
}

std::vector<MemberAnalysisRow> member_analysis(const Portfolio& portfolio, const Manifest& manifest,
                                               int repetitions, std::uint64_t master_seed,
                                               const ContextCache& contexts, std::size_t workers)
{
    if (repetitions < 1)
        throw ConfigError("member_analysis: repetitions must be at least 1");
    const std::size_t k = portfolio.members.size();
    std::vector<MemberAnalysisRow> rows;
    for (const auto& entry : manifest.problems) {
        const auto problem = make_problem(entry.problem);
        const auto ctx = contexts.get(entry.problem);
        std::vector<std::vector<SolutionSet>> sets(static_cast<std::size_t>(repetitions), std::vector<SolutionSet>(k));
        parallel_for(sets.size() * k, workers, [&](std::size_t job) {
            const std::size_t r = job / k, i = job % k;
            const std::uint64_t seed = derive_seed(derive_seed(master_seed, r), i);
            sets[r][i] = run(portfolio.members[i], *problem, entry.budget, seed).solutions;
        });
        rows.push_back(analyze_member_sets(entry.problem, sets, *ctx));
    }
    return rows;
}

void write_member_analysis_csv(std::ostream& out, const Portfolio& portfolio,
                               const std::vector<MemberAnalysisRow>& rows)
{
    out << "problem";
    for (std::size_t i = 0; i < portfolio.members.size(); ++i)
        out << ",member" << i + 1;
    out << ",pap_no_restructure,pap_full,best_member\n";
    for (const auto& row : rows) {
        out << row.problem;
        for (double v : row.member)
            out << ',' << number(v);
        out << ',' << number(row.no_restructure) << ',' << number(row.full) << ",member" << row.best_member + 1
            << '\n';
    }
}

// ---------------------------------------------------------------------------

ResultTable run_experiment(const ExperimentConfig& config, const ContextCache& contexts)
{
    if (config.algorithms.empty())
        throw ConfigError("experiment: no algorithms");
    if (config.repetitions < 1 || config.N < 1)
        throw ConfigError("experiment: repetitions and N must be at least 1");
    if (config.manifest.problems.empty())
        throw ConfigError("experiment: no problems");
    if (config.indicators.empty())
        throw ConfigError("experiment: no indicators");
    for (const auto& alg : config.algorithms) {
        if (alg.portfolio.has_value() == alg.single.has_value())
            throw ConfigError("experiment: contender '" + alg.name + "' needs exactly one of portfolio or config");
        if (alg.single)
            alg.single->validate();
        else
            for (const auto& m : alg.portfolio->members)
                m.validate();
    }

    // Resolve everything before the first run.
    std::vector<std::unique_ptr<Problem>> problems;
    std::vector<std::shared_ptr<const HvContext>> ctxs;
    std::vector<std::shared_ptr<const ReferenceFront>> fronts;
    for (const auto& entry : config.manifest.problems) {
        problems.push_back(make_problem(entry.problem));
        ctxs.push_back(contexts.get(entry.problem));
        fronts.push_back(contexts.front(entry.problem));
    }

    const std::size_t na = config.algorithms.size();
    const std::size_t np = problems.size();
    const auto reps = static_cast<std::size_t>(config.repetitions);
    struct Outcome {
        std::vector<double> values;
        double wall_ms = 0.0;
    };
    std::vector<Outcome> outcomes(na * np * reps);

    parallel_for(outcomes.size(), config.workers, [&](std::size_t job) {
        const std::size_t a = job / (np * reps);
        const std::size_t p = (job / reps) % np;
        const std::size_t r = job % reps;
        const Contender& alg = config.algorithms[a];
        const RunBudget budget = config.manifest.problems[p].budget;
        const std::uint64_t seed = derive_seed(config.master_seed, r);

        SolutionSet output;
        double wall = 0.0;
        if (alg.portfolio) {
            const PapRunResult pap = run_pap(*alg.portfolio, *problems[p], budget, seed, *ctxs[p]);
            output = pap.output;
            for (const auto& m : pap.members)
                if (m)
                    wall = std::max(wall, m->wall_ms);
        }
        else {
            RunBudget scaled = budget;
            if (config.variant == Variant::ngen)
                scaled.max_generations *= config.N;
            else if (config.variant == Variant::nsize)
                scaled.pop_size *= config.N;
            RunResult result = run(*alg.single, *problems[p], scaled, seed);
            wall = result.wall_ms;
            output = config.variant == Variant::nsize
                         ? restructure(std::span<const SolutionSet>(&result.solutions, 1),
                                       static_cast<std::size_t>(budget.pop_size))
                         : std::move(result.solutions);
        }
        Outcome& o = outcomes[job];
        o.wall_ms = config.record_time ? wall : 0.0;
        for (Indicator ind : config.indicators)
            o.values.push_back(indicator_value(ind, output, *ctxs[p], fronts[p]->points));
    });

    ResultTable table;
    for (const auto& alg : config.algorithms)
        table.algorithms.push_back(alg.name);
    for (const auto& entry : config.manifest.problems)
        table.problems.push_back(entry.problem);

    for (std::size_t job = 0; job < outcomes.size(); ++job) {
        const std::size_t a = job / (np * reps);
        const std::size_t p = (job / reps) % np;
        const std::size_t r = job % reps;
        const Contender& alg = config.algorithms[a];
        const Variant variant = alg.portfolio ? Variant::base : config.variant;
        for (std::size_t i = 0; i < config.indicators.size(); ++i) {
            table.rows.push_back({static_cast<long>(job), derive_seed(config.master_seed, r), alg.name,
                                  table.problems[p], variant, config.indicators[i], outcomes[job].values[i],
                                  outcomes[job].wall_ms});
            table.cells[{alg.name, table.problems[p], config.indicators[i]}].values.push_back(outcomes[job].values[i]);
        }
    }
    for (auto& [key, cell] : table.cells) {
        cell.mean = mean(cell.values);
        cell.variance = variance(cell.values);
    }

    if (reps >= 3) {
        for (std::size_t a = 1; a < na; ++a) {
            for (Indicator ind : config.indicators) {
                Comparison cmp;
                cmp.opponent = table.algorithms[a];
                cmp.indicator = ind;
                std::vector<SamplePair> pairs;
                for (const auto& prob : table.problems) {
                    SamplePair pair{table.cells.at({table.algorithms[0], prob, ind}).values,
                                    table.cells.at({table.algorithms[a], prob, ind}).values};
                    cmp.per_problem[prob] = wilcoxon_rank_sum(pair.baseline, pair.opponent);
                    pairs.push_back(std::move(pair));
                }
                cmp.wdl = wdl_summary(pairs, higher_is_better(ind));
                table.comparisons.push_back(std::move(cmp));
            }
        }
    }
    return table;
}

void write_runs_csv(std::ostream& out, const ResultTable& table)
{
    out << "run_id,seed,algorithm,problem,variant,indicator,value,wall_ms\n";
    for (const auto& row : table.rows)
        out << row.run_id << ',' << row.seed << ',' << row.algorithm << ',' << row.problem << ','
            << to_string(row.variant) << ',' << to_string(row.indicator) << ',' << number(row.value) << ','
            << number(row.wall_ms) << '\n';
}

void write_summary(std::ostream& out, const ResultTable& table)
{
    out << "# mean and variance (divisor n) per algorithm, problem and indicator\n";
    out << "algorithm,problem,indicator,runs,mean,variance\n";
    for (const auto& [key, cell] : table.cells) {
        const auto& [alg, prob, ind] = key;
        out << alg << ',' << prob << ',' << to_string(ind) << ',' << cell.values.size() << ',' << number(cell.mean)
            << ',' << number(cell.variance) << '\n';
    }
    if (table.comparisons.empty())
        return;
    out << "\n# two-sided Wilcoxon rank-sum, p < 0.05; W-D-L from the view of " << table.algorithms.front() << '\n';
    out << "opponent,indicator,problem,p_value,significant\n";
    for (const auto& cmp : table.comparisons)
        for (const auto& [prob, test] : cmp.per_problem)
            out << cmp.opponent << ',' << to_string(cmp.indicator) << ',' << prob << ',' << number(test.p_value) << ','
                << (test.p_value < significance_level ? "yes" : "no") << '\n';
    out << "\nopponent,indicator,win,draw,loss\n";
    for (const auto& cmp : table.comparisons)
        out << cmp.opponent << ',' << to_string(cmp.indicator) << ',' << cmp.wdl.win << ',' << cmp.wdl.draw << ','
            << cmp.wdl.loss << '\n';
}

} // namespace moepap
