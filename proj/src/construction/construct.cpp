#include <moepap/construction.hpp>
#include <moepap/parallel.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace moepap {

// ---------------------------------------------------------------------------
// Manifests

RunBudget default_budget(BenchmarkId id)
{
    switch (id.suite) {
    case Suite::uf: return id.index <= 7 ? RunBudget{100, 500} : RunBudget{150, 600};
    case Suite::wfg: return {150, 250};
    default: return {100, 250};
    }
}

namespace {

template <typename T>
T parse_number(std::string_view text, const std::string& what)
{
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParseError("manifest: bad value for " + what + ": '" + std::string(text) + "'");
    return v;
}

} // namespace

Manifest read_manifest(std::istream& in)
{
    Manifest manifest;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream words(line);
        std::string head;
        if (!(words >> head) || head.front() == '#')
            continue;
        const std::string where = "line " + std::to_string(line_no);
        std::string name;
        if (!(words >> name))
            throw ParseError("manifest " + where + ": missing problem name");
        if (head == "unavailable") {
            manifest.unavailable.push_back(name);
            continue;
        }
        if (head != "problem")
            throw ParseError("manifest " + where + ": unknown directive '" + head + "'");
        BenchmarkId id;
        try {
            id = BenchmarkId::parse(name);
        }
        catch (const std::exception& e) {
            throw ParseError("manifest " + where + ": " + e.what());
        }
        ManifestEntry entry{id.name(), default_budget(id), {}};
        std::string field;
        while (words >> field) {
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                throw ParseError("manifest " + where + ": expected key=value, got '" + field + "'");
            const std::string key = field.substr(0, eq);
            const std::string_view value = std::string_view(field).substr(eq + 1);
            if (key == "pop")
                entry.budget.pop_size = parse_number<int>(value, where + " pop");
            else if (key == "gens")
                entry.budget.max_generations = parse_number<int>(value, where + " gens");
            else if (key == "seeds") {
                std::size_t pos = 0;
                while (pos <= value.size()) {
                    const auto comma = std::min(value.find(',', pos), value.size());
                    entry.seeds.push_back(parse_number<std::uint64_t>(value.substr(pos, comma - pos), where + " seeds"));
                    pos = comma + 1;
                }
            }
            else
                throw ParseError("manifest " + where + ": unknown key '" + key + "'");
        }
        if (entry.budget.pop_size < 1 || entry.budget.max_generations < 0)
            throw ParseError("manifest " + where + ": invalid budget");
        if (entry.seeds.empty())
            entry.seeds = {1, 2, 3};
        for (const auto& existing : manifest.problems)
            if (existing.problem == entry.problem)
                throw ParseError("manifest " + where + ": duplicate problem " + entry.problem);
        manifest.problems.push_back(std::move(entry));
    }
    if (manifest.problems.empty())
        throw ParseError("manifest: no problems listed");
    return manifest;
}

Manifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read manifest " + path.string());
    return read_manifest(in);
}

void write_manifest(std::ostream& out, const Manifest& manifest)
{
    for (const auto& e : manifest.problems) {
        out << "problem " << e.problem << " pop=" << e.budget.pop_size << " gens=" << e.budget.max_generations
            << " seeds=";
        for (std::size_t i = 0; i < e.seeds.size(); ++i)
            out << (i ? "," : "") << e.seeds[i];
        out << '\n';
    }
    for (const auto& name : manifest.unavailable)
        out << "unavailable " << name << '\n';
}

// ---------------------------------------------------------------------------
// Evaluation

std::shared_ptr<const CachedRun> EvalCache::find(const Key& key) const
{
    std::lock_guard lock(mutex_);
    const auto it = runs_.find(key);
    return it == runs_.end() ? nullptr : it->second;
}

void EvalCache::store(const Key& key, std::shared_ptr<const CachedRun> run)
{
    std::lock_guard lock(mutex_);
    runs_[key] = std::move(run);
}

std::size_t EvalCache::size() const
{
    std::lock_guard lock(mutex_);
    return runs_.size();
}

Trainer::Trainer(TrainingSet training, const ContextCache& contexts, std::shared_ptr<EvalCache> cache,
                 std::size_t workers)
    : training_(std::move(training)), cache_(std::move(cache)), workers_(std::max<std::size_t>(1, workers))
{
    if (training_.empty())
        throw ConfigError("training set is empty");
    for (const auto& entry : training_) {
        if (entry.seeds.empty())
            throw ConfigError("training problem " + entry.problem + " has no seeds");
        problems_.push_back(make_problem(entry.problem));
        contexts_.push_back(contexts.get(entry.problem));
    }
}

std::shared_ptr<const CachedRun> Trainer::member_run(const AlgorithmConfig& config, std::size_t z,
                                                     std::size_t s) const
{
    const ManifestEntry& entry = training_.at(z);
    const std::uint64_t seed = entry.seeds.at(s);
    EvalCache::Key key{fingerprint(config), entry.problem, seed};
    if (cache_)
        if (auto hit = cache_->find(key))
            return hit;

    auto run_record = std::make_shared<CachedRun>();
    try {
        RunResult r = run(config, *problems_[z], entry.budget, seed);
        run_record->metric = ihvr(r.solutions, *contexts_[z]);
        run_record->solutions = std::move(r.solutions);
    }
    catch (const std::exception& e) {
        run_record->failed = true;
        run_record->error = e.what();
    }
    ++runs_executed_;
    if (cache_)
        cache_->store(key, run_record);
    return run_record;
}

void Trainer::prime(std::span<const AlgorithmConfig> configs) const
{
    if (!cache_)
        return;
    struct Job {
        std::size_t config, z, s;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (std::size_t z = 0; z < training_.size(); ++z)
            for (std::size_t s = 0; s < training_[z].seeds.size(); ++s)
                jobs.push_back({c, z, s});
    parallel_for(jobs.size(), workers_, [&](std::size_t j) { member_run(configs[jobs[j].config], jobs[j].z, jobs[j].s); });
}

double Trainer::omega_seed(std::span<const AlgorithmConfig> portfolio, std::size_t z, std::size_t s) const
{
    if (portfolio.empty())
        return 0.0;
    double best = 0.0;
    std::vector<SolutionSet> sets;
    for (const auto& config : portfolio) {
        const auto r = member_run(config, z, s);
        if (r->failed)
            continue;
        best = std::max(best, r->metric);
        sets.push_back(r->solutions);
    }
    if (sets.empty())
        return 0.0;
    return std::max(best, ihvr(restructure_union(sets), *contexts_[z]));
}

double Trainer::omega(std::span<const AlgorithmConfig> portfolio, std::size_t z) const
{
    const std::size_t seeds = training_.at(z).seeds.size();
    double total = 0.0;
    for (std::size_t s = 0; s < seeds; ++s)
        total += omega_seed(portfolio, z, s);
    return total / static_cast<double>(seeds);
}

double Trainer::omega(std::span<const AlgorithmConfig> portfolio) const
{
    prime(portfolio);
    double total = 0.0;
    for (std::size_t z = 0; z < training_.size(); ++z)
        total += omega(portfolio, z);
    return total / static_cast<double>(training_.size());
}

double Trainer::marginal_contribution(std::span<const AlgorithmConfig> portfolio, const AlgorithmConfig& theta) const
{
    if (std::find(portfolio.begin(), portfolio.end(), theta) != portfolio.end())
        return 0.0;
    std::vector<AlgorithmConfig> extended(portfolio.begin(), portfolio.end());
    extended.push_back(theta);
    prime(extended);
    double total = 0.0;
    for (std::size_t z = 0; z < training_.size(); ++z)
        total += omega(extended, z) - omega(portfolio, z);
    return total / static_cast<double>(training_.size());
}

// ---------------------------------------------------------------------------
// Search

SearchResult configure_subspace(std::span<const AlgorithmConfig> portfolio, const Subspace& subspace,
                                const Trainer& trainer, int budget, std::uint64_t seed)
{
    if (budget < 1)
        throw ConfigError("configure_subspace: budget must be at least 1");
    Rng rng(seed);
    SearchResult result;
    result.best = subspace.sample(rng);
    result.contribution = trainer.marginal_contribution(portfolio, result.best);
    result.evaluations = 1;

    while (result.evaluations < budget) {
        const int size = std::min(configurator_batch, budget - result.evaluations);
        std::vector<AlgorithmConfig> batch;
        for (int j = 0; j < size; ++j) {
            const bool explore = (result.evaluations + j) % 2 == 0;
            batch.push_back(explore ? subspace.sample(rng) : subspace.perturb(result.best, rng));
        }
        std::vector<double> scores(batch.size());
        parallel_for(batch.size(), trainer.workers(),
                     [&](std::size_t j) { scores[j] = trainer.marginal_contribution(portfolio, batch[j]); });
        for (std::size_t j = 0; j < batch.size(); ++j) {
            if (scores[j] > result.contribution) {
                result.best = batch[j];
                result.contribution = scores[j];
            }
        }
        result.evaluations += size;
    }
    return result;
}

std::pair<Portfolio, ConstructionReport> construct(const ConfigSpace& space, const Trainer& trainer,
                                                   const ConstructOptions& options)
{
    if (space.subspaces.empty())
        throw ConfigError("construct: configuration space has no subspaces");
    if (options.max_members < 1 || options.max_members > max_portfolio_size)
        throw ConfigError("construct: max_members must lie in 1..10");
    if (options.searches_per_iteration < 1)
        throw ConfigError("construct: searches_per_iteration must be at least 1");

    const auto c = static_cast<int>(space.subspaces.size());
    std::vector<AlgorithmConfig> members;
    ConstructionReport report;
    double current = 0.0;

    for (int iteration = 1;; ++iteration) {
        if (members.size() >= options.max_members) {
            report.stop_reason = "reached the maximum portfolio size";
            break;
        }
        if (iteration > options.max_iterations) {
            report.stop_reason = "reached the iteration limit";
            break;
        }
        IterationRecord record;
        record.iteration = iteration;
        record.omega_before = current;

        for (int i = 1; i <= options.searches_per_iteration; ++i) {
            const int re = i % c;
            const auto stream = static_cast<std::uint64_t>(iteration) * 1000 + static_cast<std::uint64_t>(i);
            SearchResult found = configure_subspace(members, space.subspaces[static_cast<std::size_t>(re)], trainer,
                                                    options.budget_per_search, derive_seed(options.seed, stream));
            record.candidates.push_back({i, re, found.best, found.contribution});
        }
        const auto best = std::max_element(record.candidates.begin(), record.candidates.end(),
                                           [](const auto& a, const auto& b) { return a.contribution < b.contribution; });

        std::vector<AlgorithmConfig> extended = members;
        extended.push_back(best->config);
        const double extended_omega = trainer.omega(extended);
        if (extended_omega <= current) {
            record.omega_after = current;
            report.iterations.push_back(std::move(record));
            report.stop_reason = "no candidate improves the portfolio";
            break;
        }
        record.inserted = best->config;
        members = std::move(extended);
        current = extended_omega;

        // Simplification: drop members whose removal does not lower Omega, until stable.
        for (bool removed = true; removed && members.size() > 1;) {
            removed = false;
            for (std::size_t j = 0; j < members.size(); ++j) {
                std::vector<AlgorithmConfig> reduced = members;
                reduced.erase(reduced.begin() + static_cast<long>(j));
                const double reduced_omega = trainer.omega(reduced);
                if (reduced_omega >= current) {
                    record.removals.push_back({members[j], current, reduced_omega});
                    members = std::move(reduced);
                    current = reduced_omega;
                    removed = true;
                    break;
                }
            }
        }
        record.omega_after = current;
        report.omega_trajectory.push_back(current);
        report.iterations.push_back(std::move(record));
    }

    Portfolio portfolio{members, "constructed"};
    report.portfolio = portfolio;
    return {portfolio, report};
}

void write_report_csv(std::ostream& out, const ConstructionReport& report)
{
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    out << "iteration,event,search,subspace,value,omega_before,omega_after,config\n";
    for (const auto& it : report.iterations) {
        for (const auto& cand : it.candidates)
            out << it.iteration << ",candidate," << cand.search << ',' << cand.subspace << ',' << num(cand.contribution)
                << ",,," << format_config(cand.config) << '\n';
        if (it.inserted)
            out << it.iteration << ",insert,,,," << num(it.omega_before) << ','
                << num(it.removals.empty() ? it.omega_after : it.removals.front().omega_before) << ','
                << format_config(*it.inserted) << '\n';
        for (const auto& r : it.removals)
            out << it.iteration << ",remove,,,," << num(r.omega_before) << ',' << num(r.omega_after) << ','
                << format_config(r.config) << '\n';
    }
    out << ",stop,,,,,," << report.stop_reason << '\n';
}

} // namespace moepap
