#pragma once

#include <moepap/construction.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moepap {

// ---------------------------------------------------------------------------
// Statistics

struct RankSumResult {
    /// Sum of the (mid)ranks of the first sample.
    double statistic = 0.0;
    double p_value = 1.0;
    bool exact = false;
};

/// Two-sided Wilcoxon rank-sum test. Exact (enumeration of rank sums over all
/// assignments) for |a| + |b| <= 20, otherwise the normal approximation with tie
/// and continuity corrections. Both samples need at least 3 values.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

inline constexpr double significance_level = 0.05;

struct Wdl {
    int win = 0;
    int draw = 0;
    int loss = 0;

    bool operator==(const Wdl&) const = default;
};

struct SamplePair {
    std::vector<double> baseline;
    std::vector<double> opponent;
};

/// Win: baseline significantly better (p < 0.05 and better mean); loss: significantly worse.
Wdl wdl_summary(std::span<const SamplePair> per_problem, bool higher_is_better);

double mean(std::span<const double> values);
/// Population variance (divisor n).
double variance(std::span<const double> values);

// ---------------------------------------------------------------------------
// Indicators used in experiment tables

enum class Indicator { hv, igd, ihvr };

std::string_view to_string(Indicator indicator);
Indicator parse_indicator(std::string_view text);
bool higher_is_better(Indicator indicator);

/// HV uses the objective-box upper corner as reference point (after clipping to the box).
double indicator_value(Indicator indicator, const SolutionSet& set, const HvContext& ctx, const PointSetXd& front);

// ---------------------------------------------------------------------------
// Member analysis (per-member, no-Restructure PAP, full PAP)

struct MemberAnalysisRow {
    std::string problem;
    /// Mean IHVR of each member alone.
    std::vector<double> member;
    /// Mean over repetitions of the best member IHVR (output rule without Restructure).
    double no_restructure = 0.0;
    /// Mean over repetitions of max(best member, Restructure) IHVR.
    double full = 0.0;
    std::size_t best_member = 0;
};

/// sets[r][i] is member i's set in repetition r.
MemberAnalysisRow analyze_member_sets(const std::string& problem,
                                      const std::vector<std::vector<SolutionSet>>& sets,
                                      const HvContext& ctx);

std::vector<MemberAnalysisRow> member_analysis(const Portfolio& portfolio, const Manifest& manifest,
                                               int repetitions, std::uint64_t master_seed,
                                               const ContextCache& contexts, std::size_t workers = 1);

void write_member_analysis_csv(std::ostream& out, const Portfolio& portfolio,
                               const std::vector<MemberAnalysisRow>& rows);

// ---------------------------------------------------------------------------
// Experiments

enum class Variant { base, ngen, nsize };

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

/// A compared algorithm: a portfolio, or a single configuration run under the variant.
struct Contender {
    std::string name;
    std::optional<Portfolio> portfolio;
    std::optional<AlgorithmConfig> single;
};

struct ExperimentConfig {
    std::vector<Contender> algorithms;
    Manifest manifest;
    int repetitions = 30;
    Variant variant = Variant::base;
    int N = 1;
    std::vector<Indicator> indicators{Indicator::hv, Indicator::igd, Indicator::ihvr};
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;
    /// Wall-clock times are nondeterministic; they are written as 0 unless requested.
    bool record_time = false;
};

struct RunRow {
    long run_id = 0;
    std::uint64_t seed = 0;
    std::string algorithm;
    std::string problem;
    Variant variant = Variant::base;
    Indicator indicator = Indicator::hv;
    double value = 0.0;
    double wall_ms = 0.0;
};

struct SummaryCell {
    std::vector<double> values;
    double mean = 0.0;
    double variance = 0.0;
};

struct Comparison {
    std::string opponent;
    Indicator indicator = Indicator::hv;
    std::map<std::string, RankSumResult> per_problem;
    Wdl wdl;
};

struct ResultTable {
    std::vector<RunRow> rows;
    /// (algorithm, problem, indicator) -> values over repetitions.
    std::map<std::tuple<std::string, std::string, Indicator>, SummaryCell> cells;
    /// First algorithm against each other algorithm, per indicator.
    std::vector<Comparison> comparisons;
    std::vector<std::string> algorithms;
    std::vector<std::string> problems;
};

/// Seeds: repetition r uses derive_seed(master_seed, r) for every algorithm and problem.
ResultTable run_experiment(const ExperimentConfig& config, const ContextCache& contexts);

void write_runs_csv(std::ostream& out, const ResultTable& table);
void write_summary(std::ostream& out, const ResultTable& table);

} // namespace moepap
