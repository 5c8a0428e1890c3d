#pragma once

#include <moepap/operators.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace moepap {

enum class Foundation { nsga2, moead, mopso };

enum class OperatorKind {
    sbx_pm,
    rand_p,
    best_p,
    current_to_rand_p,
    current_to_best_p,
    smpso,
    omopso,
    no_mutation,
};

std::string_view to_string(Foundation f);
std::string_view to_string(OperatorKind op);
Foundation parse_foundation(std::string_view text);
OperatorKind parse_operator(std::string_view text);

/// DE variant named by an operator id; throws ConfigError for non-DE operators.
DeVariant de_variant(OperatorKind op);
bool is_de(OperatorKind op);

struct MoeadParams {
    double Ps = 0.9;
    int nr = 2;
    int neighbor_size = 20;

    bool operator==(const MoeadParams&) const = default;
};

/// A point of the configuration space: foundation algorithm, operator and its
/// parameters. Only the parameter blocks relevant to (foundation, op) are read.
struct AlgorithmConfig {
    Foundation foundation = Foundation::nsga2;
    OperatorKind op = OperatorKind::sbx_pm;
    SbxParams sbx;
    PmParams pm;
    DeParams de;
    PsoParams pso;
    MoeadParams moead;

    /// Throws ConfigError when the pairing or any parameter is outside the space.
    void validate() const;

    /// Equality over the parameters that are relevant to (foundation, op).
    bool operator==(const AlgorithmConfig& other) const;

    static AlgorithmConfig nsga2_sbx_pm(int eta_sbx, int eta_pm);
    static AlgorithmConfig nsga2_de(OperatorKind op, double F, int p, double CR, double K = 0.5);
    static AlgorithmConfig moead_sbx_pm(int eta_sbx, int eta_pm, MoeadParams extras);
    static AlgorithmConfig moead_de(OperatorKind op, double F, int p, double CR, MoeadParams extras, double K = 0.5);
    static AlgorithmConfig mopso(OperatorKind mutation, PsoParams params);
};

struct RunBudget {
    int pop_size = 100;
    int max_generations = 250;
};

struct RunResult {
    SolutionSet solutions;
    long evaluations = 0;
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
    /// Population actually used (MOEA/D rounds down to a weight-lattice size).
    int pop_size = 0;
};

RunResult run_nsga2(const Problem& problem, const AlgorithmConfig& config, RunBudget budget, std::uint64_t seed);
RunResult run_moead(const Problem& problem, const AlgorithmConfig& config, RunBudget budget, std::uint64_t seed);
RunResult run_mopso(const Problem& problem, const AlgorithmConfig& config, RunBudget budget, std::uint64_t seed);

/// Validates the config and dispatches on its foundation.
RunResult run(const AlgorithmConfig& config, const Problem& problem, RunBudget budget, std::uint64_t seed);

/// Simplex-lattice weights: pop_size evenly spread vectors for m = 2; for m = 3 the
/// largest lattice C(H+2, 2) <= pop_size.
PointSetXd simplex_lattice(int m, int pop_size);

/// Tchebycheff value max_j lambda_j |f_j - z_j|, with zero weights replaced by 1e-6.
double tchebycheff(const VectorXd& f, const VectorXd& lambda, const VectorXd& ideal);

/// Bounded external archive of mutually non-dominated individuals with an
/// adaptive grid used for truncation and leader selection.
class GridArchive {
public:
    GridArchive(std::size_t capacity, int divisions);

    /// Returns false when the candidate is dominated by, or duplicates, a member.
    bool insert(const Individual& candidate, Rng& rng);

    /// Leader by binary tournament on grid-cell density (sparser wins).
    const Individual& select_leader(Rng& rng) const;

    const SolutionSet& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t capacity() const { return capacity_; }

private:
    std::vector<long> cells() const;

    std::size_t capacity_;
    int divisions_;
    SolutionSet members_;
};

} // namespace moepap
