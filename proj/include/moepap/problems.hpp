#pragma once

#include <moepap/core.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moepap {

enum class Suite { zdt, dtlz, wfg, uf };

struct BenchmarkId {
    Suite suite = Suite::zdt;
    int index = 1;

    std::string name() const;

    /// Parses names such as "ZDT1", "dtlz7", "WFG3", "UF10".
    static BenchmarkId parse(std::string_view name);

    auto operator<=>(const BenchmarkId&) const = default;
};

enum class Encoding { real, binary };

struct Bounds {
    VectorXd lower;
    VectorXd upper;
};

/// Per-objective [ideal, upper] box. The upper corner is the fixed HV reference point.
struct ObjectiveBox {
    VectorXd ideal;
    VectorXd upper;
};

/// Sampled true Pareto front of a problem, one objective vector per row.
struct ReferenceFront {
    std::string name;
    PointSetXd points;

    int objectives() const { return static_cast<int>(points.cols()); }
};

/// A minimization problem over a box-bounded decision space.
/// Benchmarks derive from this; user problems (e.g. further suites) may too.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::string name() const = 0;
    virtual int objectives() const = 0;

    /// Nominal decision dimension as commonly reported for the problem.
    virtual int dimension() const { return variables(); }
    /// Length of the decision vector handed to evaluate().
    int variables() const { return static_cast<int>(bounds_.lower.size()); }

    virtual Encoding encoding() const { return Encoding::real; }
    const Bounds& bounds() const { return bounds_; }

    /// Checks length and bounds, then evaluates.
    VectorXd evaluate(const VectorXd& x) const;

    /// Samples at least `count` mutually non-dominated points on the true front
    /// (fewer only for fronts with finitely many points).
    virtual PointSetXd sample_front(std::size_t count) const;

    /// Supremum of each objective over the decision space, rounded up to one decimal.
    virtual VectorXd objective_upper_bound() const;

protected:
    explicit Problem(Bounds bounds) : bounds_(std::move(bounds)) {}

    virtual VectorXd compute(const VectorXd& x) const = 0;

private:
    Bounds bounds_;
};

/// Benchmarks with the dimensions fixed by the experimental setup:
/// ZDT1-3 n=30, ZDT4 n=10, ZDT5 11 substrings, ZDT6 n=10 (m=2);
/// DTLZ1-7 n=11 m=2; WFG1-9 n=12 m=3 (k=4, l=8); UF1-7 n=30 m=2; UF8-10 n=30 m=3.
/// Passing explicit dimensions that differ from these is rejected.
std::unique_ptr<Problem> make_problem(BenchmarkId id, std::optional<int> n = {}, std::optional<int> m = {});
std::unique_ptr<Problem> make_problem(std::string_view name);

/// All implemented benchmarks in suite order.
std::vector<BenchmarkId> all_benchmarks();

VectorXd evaluate(BenchmarkId id, const VectorXd& x);

/// ZDT5 genotype: 30 + 10 * 5 bits.
using BitString = std::vector<std::uint8_t>;
VectorXd evaluate_zdt5_bits(std::span<const std::uint8_t> bits);
constexpr std::array<int, 11> zdt5_layout{30, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5};

/// Reference front with duplicates removed and dominated samples filtered out.
ReferenceFront sample_reference_front(BenchmarkId id, std::size_t count);

/// ideal = min over the front, upper = the problem's metadata upper bound.
ObjectiveBox objective_box(const ReferenceFront& front, const VectorXd& upper);

// Reference-front file: "# <name> m=<m>" then one space-separated vector per line.
void write_reference_front(std::ostream& out, const ReferenceFront& front);
ReferenceFront read_reference_front(std::istream& in);

/// Versioned per-suite objective-box metadata (JSON).
struct BoxMetadata {
    static constexpr int current_version = 1;
    int version = current_version;
    std::map<std::string, ObjectiveBox> boxes;
};

std::string write_box_metadata(const BoxMetadata& meta);
BoxMetadata read_box_metadata(std::string_view text);

/// Loads reference fronts and box metadata from a data directory laid out as
/// `<dir>/fronts/<NAME>.txt` and `<dir>/boxes/<suite>.json`. Files are read
/// once and shared read-only; safe for concurrent use.
class ProblemData {
public:
    explicit ProblemData(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }

    std::shared_ptr<const ReferenceFront> front(const std::string& name) const;
    ObjectiveBox objective_box(const std::string& name) const;

    /// Data directory configured at build time.
    static std::filesystem::path default_directory();

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<const ReferenceFront>> fronts_;
    mutable std::map<std::string, BoxMetadata> suites_;
};

} // namespace moepap
