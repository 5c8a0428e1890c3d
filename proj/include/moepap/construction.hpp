#pragma once

#include <moepap/portfolio.hpp>

#include <cstdint>
#include <atomic>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace moepap {

// ---------------------------------------------------------------------------
// Configuration space

enum class ParamKind { real, integer, grid };

/// One tunable parameter of a subspace. Reals are sampled in [lo, hi], or (lo, hi]
/// when `lo_open`; integers in lo..hi; grids pick one of `values`.
struct Parameter {
    std::string name;
    ParamKind kind = ParamKind::real;
    double lo = 0.0;
    double hi = 1.0;
    bool lo_open = false;
    std::vector<double> values;
    /// Operators for which the parameter is read; empty means all.
    std::vector<OperatorKind> active_for;
    std::function<void(AlgorithmConfig&, double)> set;
    std::function<double(const AlgorithmConfig&)> get;

    bool active(OperatorKind op) const;
};

/// Configurations of one foundation algorithm.
struct Subspace {
    std::string name;
    Foundation foundation = Foundation::nsga2;
    std::vector<OperatorKind> operators;
    std::vector<Parameter> params;

    AlgorithmConfig sample(Rng& rng) const;
    /// Changes one active dimension (the operator or one parameter) of `config`:
    /// reals and integers move by 10% of their range, grids and operators to an adjacent value.
    AlgorithmConfig perturb(const AlgorithmConfig& config, Rng& rng) const;
};

struct ConfigSpace {
    std::vector<Subspace> subspaces;

    /// NSGA-II, MOEA/D and MOPSO subspaces with the ranges of the full configuration space.
    static ConfigSpace standard();
};

// ---------------------------------------------------------------------------
// Manifests and training sets

struct ManifestEntry {
    std::string problem;
    RunBudget budget;
    std::vector<std::uint64_t> seeds;
};

/// "problem <NAME> pop=<n> gens=<n> seeds=<s1,s2,...>" lines plus
/// "unavailable <NAME>" lines for listed problems this build does not provide.
struct Manifest {
    std::vector<ManifestEntry> problems;
    std::vector<std::string> unavailable;
};

Manifest read_manifest(std::istream& in);
Manifest load_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const Manifest& manifest);

/// Default run budget of a benchmark.
RunBudget default_budget(BenchmarkId id);

using TrainingSet = std::vector<ManifestEntry>;

// ---------------------------------------------------------------------------
// Evaluation

struct CachedRun {
    SolutionSet solutions;
    double metric = 0.0;
    bool failed = false;
    std::string error;
};

/// (config fingerprint, problem, seed) -> run. Safe for concurrent use.
class EvalCache {
public:
    using Key = std::tuple<std::string, std::string, std::uint64_t>;

    std::shared_ptr<const CachedRun> find(const Key& key) const;
    void store(const Key& key, std::shared_ptr<const CachedRun> run);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const CachedRun>> runs_;
};

/// Runs configs on a training set and scores portfolios with Omega.
/// Every config is run with the raw training seeds (common random numbers), so a
/// member's runs do not depend on which portfolio it is evaluated in.
class Trainer {
public:
    Trainer(TrainingSet training, const ContextCache& contexts, std::shared_ptr<EvalCache> cache,
            std::size_t workers = 1);

    const TrainingSet& training() const { return training_; }
    std::size_t workers() const { return workers_; }

    /// Run of `config` on problem `z` with its `s`-th seed (cached when a cache is set).
    std::shared_ptr<const CachedRun> member_run(const AlgorithmConfig& config, std::size_t z, std::size_t s) const;

    /// Runs all (problem, seed) pairs of the given configs, concurrently.
    void prime(std::span<const AlgorithmConfig> configs) const;

    /// Omega on one problem: mean over seeds of max(max member IHVR, restructured IHVR); 0 for empty P.
    double omega(std::span<const AlgorithmConfig> portfolio, std::size_t z) const;
    /// Mean of omega over the training problems.
    double omega(std::span<const AlgorithmConfig> portfolio) const;

    /// Mean over problems of Omega(P + theta, z) - Omega(P, z). Zero if theta is in P.
    double marginal_contribution(std::span<const AlgorithmConfig> portfolio, const AlgorithmConfig& theta) const;

    /// Number of distinct runs actually executed (cache misses).
    long runs_executed() const { return runs_executed_; }

private:
    double omega_seed(std::span<const AlgorithmConfig> portfolio, std::size_t z, std::size_t s) const;

    TrainingSet training_;
    std::vector<std::unique_ptr<Problem>> problems_;
    std::vector<std::shared_ptr<const HvContext>> contexts_;
    std::shared_ptr<EvalCache> cache_;
    std::size_t workers_;
    mutable std::atomic<long> runs_executed_{0};
};

/// Candidates are evaluated in batches of this size; the incumbent is updated after
/// each batch, which keeps the search identical for any worker count.
inline constexpr int configurator_batch = 4;

struct SearchResult {
    AlgorithmConfig best;
    double contribution = 0.0;
    int evaluations = 0;
};

/// Model-free configurator: random samples alternate with perturbations of the incumbent.
SearchResult configure_subspace(std::span<const AlgorithmConfig> portfolio, const Subspace& subspace,
                                const Trainer& trainer, int budget, std::uint64_t seed);

struct CandidateScore {
    int search = 0;
    int subspace = 0;
    AlgorithmConfig config;
    double contribution = 0.0;
};

struct Removal {
    AlgorithmConfig config;
    double omega_before = 0.0;
    double omega_after = 0.0;
};

struct IterationRecord {
    int iteration = 0;
    std::vector<CandidateScore> candidates;
    std::optional<AlgorithmConfig> inserted;
    double omega_before = 0.0;
    double omega_after = 0.0;
    std::vector<Removal> removals;
};

struct ConstructionReport {
    std::vector<IterationRecord> iterations;
    Portfolio portfolio;
    /// Omega(P, Z) after each accepted insertion and simplification.
    std::vector<double> omega_trajectory;
    std::string stop_reason;
};

struct ConstructOptions {
    std::size_t max_members = max_portfolio_size;
    int searches_per_iteration = 10;
    int budget_per_search = 20;
    std::uint64_t seed = 1;
    /// Safety bound on greedy iterations.
    int max_iterations = 30;
};

std::pair<Portfolio, ConstructionReport> construct(const ConfigSpace& space, const Trainer& trainer,
                                                   const ConstructOptions& options);

/// One row per scored candidate, insertion and removal.
void write_report_csv(std::ostream& out, const ConstructionReport& report);

} // namespace moepap
