#pragma once

#include <moepap/algorithms.hpp>
#include <moepap/indicators.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace moepap {

inline constexpr std::size_t max_portfolio_size = 10;

struct Portfolio {
    std::vector<AlgorithmConfig> members;
    std::string name = "portfolio";

    bool operator==(const Portfolio&) const = default;
};

/// Union of all sets, exact objective duplicates removed (first occurrence kept),
/// reduced to its non-dominated members. No size cap.
SolutionSet restructure_union(std::span<const SolutionSet> sets);

/// restructure_union, then crowding truncation down to `cap` if larger. Used where a
/// fixed output size is required (the NSIZE variant); portfolio output keeps the whole
/// union, since truncation could make a larger portfolio score lower than a smaller one.
SolutionSet restructure(std::span<const SolutionSet> sets, std::size_t cap);

inline constexpr long restructure_source = -1;

struct PapRunResult {
    /// Per member; empty when that member's run failed.
    std::vector<std::optional<RunResult>> members;
    std::vector<std::string> failures;
    /// IHVR per member; NaN for failed members.
    std::vector<double> member_metric;
    SolutionSet restructured;
    double restructure_metric = 0.0;
    /// Member index, or restructure_source.
    long chosen = restructure_source;
    SolutionSet output;
    double output_metric = 0.0;

    /// Best metric among members only (output rule without Restructure).
    double best_member_metric() const;
};

/// Output selection over already computed member sets. Candidates are compared by
/// IHVR; ties prefer the restructured set, then the lowest member index.
PapRunResult select_output(std::vector<std::optional<RunResult>> members, const HvContext& ctx);

/// Runs every member with seed derive_seed(seed, index) on up to `workers` threads,
/// then restructures and selects the output.
PapRunResult run_pap(const Portfolio& portfolio, const Problem& problem, RunBudget budget, std::uint64_t seed,
                     const HvContext& ctx, std::size_t workers = 1);

// Portfolio file: "# moepap portfolio v1", optional "name <text>", then one
// "member <foundation> <operator> key=value ..." line per member.

/// Canonical single-line form of a config (also the fingerprint input).
std::string format_config(const AlgorithmConfig& config);
AlgorithmConfig parse_config(std::string_view line);

/// 64-bit FNV-1a of format_config, as 16 hex digits.
std::string fingerprint(const AlgorithmConfig& config);

void write_portfolio(std::ostream& out, const Portfolio& portfolio);
Portfolio read_portfolio(std::istream& in);
void save_portfolio(const Portfolio& portfolio, const std::filesystem::path& path);
Portfolio load_portfolio(const std::filesystem::path& path);

} // namespace moepap
