#pragma once

#include <moepap/problems.hpp>
#include <moepap/rng.hpp>

#include <optional>
#include <span>
#include <utility>

namespace moepap {

// Real-coded operators clamp every child to the problem bounds.

struct SbxParams {
    int eta = 20;
    double pc = 1.0;

    bool operator==(const SbxParams&) const = default;
};

struct PmParams {
    int eta = 20;
    /// Per-variable probability; unset means 1/n.
    std::optional<double> pm;

    double probability(Index n) const { return pm.value_or(1.0 / static_cast<double>(n)); }

    bool operator==(const PmParams&) const = default;
};

enum class DeVariant { rand_p, best_p, current_to_rand_p, current_to_best_p };

struct DeParams {
    DeVariant variant = DeVariant::rand_p;
    double F = 0.5;
    double K = 0.5; // current-to-* only
    int p = 1;
    double CR = 1.0;

    bool operator==(const DeParams&) const = default;
};

enum class PsoMutation { smpso, omopso, none };

struct PsoParams {
    double w = 0.4;
    double c1 = 1.5;
    double c2 = 1.5;
    double vmax_ratio = 1.0;
    double v_change = 1.0;
    PsoMutation mutation = PsoMutation::none;
    int pm_eta = 20;          // SMPSO
    bool constriction = false; // SMPSO
    int b = 5;                // OMOPSO perturbation, percent of the variable range
    int grid_divisions = 10;

    bool operator==(const PsoParams&) const = default;
};

/// Spread factor for a uniform draw r in [0,1).
double sbx_beta(double r, double eta);

/// Children of one variable pair for a given spread factor.
std::pair<double, double> sbx_pair(double x1, double x2, double beta);

std::pair<VectorXd, VectorXd> sbx_crossover(const VectorXd& x1, const VectorXd& x2, const SbxParams& params,
                                            const Bounds& bounds, Rng& rng);

/// Normalized step for draw r, where delta1 = (u-x)/(u-l) and delta2 = (x-l)/(u-l).
double pm_delta(double r, double delta1, double delta2, double eta);

VectorXd polynomial_mutation(const VectorXd& x, const PmParams& params, const Bounds& bounds, Rng& rng);

/// Number of random donors a variant draws, excluding the target and the best.
/// rand/p and current-to-rand/p: the r3 base plus p pairs; best-based variants: p pairs.
int de_donor_count(const DeParams& params);
bool de_uses_best(DeVariant variant);

/// Trial vector for `target`. `donors` holds r3 first (rand-based variants) and then
/// the p difference pairs (r1, r2) in order; `best` is required by best-based variants.
VectorXd de_trial(const VectorXd& target, std::span<const VectorXd> donors, const VectorXd* best,
                  const DeParams& params, const Bounds& bounds, Rng& rng);

/// Constriction coefficient chi for c1 + c2.
double smpso_constriction(double c1, double c2);

struct PsoMove {
    VectorXd velocity;
    VectorXd position;
};

/// Velocity and position update, including cap, constriction and bound damping.
PsoMove pso_update(const VectorXd& x, const VectorXd& v, const VectorXd& pbest, const VectorXd& gbest,
                   const PsoParams& params, const Bounds& bounds, Rng& rng);

/// OMOPSO uniform mutation: each variable with probability `prob` moves by
/// U(-1,1) * b * (u-l) / 100.
VectorXd uniform_mutation(const VectorXd& x, double prob, int b, const Bounds& bounds, Rng& rng);

/// OMOPSO non-uniform mutation with the step shrinking as generation -> max_generations.
VectorXd nonuniform_mutation(const VectorXd& x, double prob, int generation, int max_generations,
                             const Bounds& bounds, Rng& rng);

/// One-point crossover inside each substring of `layout`, then independent bit flips.
std::pair<BitString, BitString> binary_variation(const BitString& x1, const BitString& x2,
                                                 std::span<const int> layout, double flip_probability, Rng& rng);

/// Deterministic core of binary_variation: cut[s] is the cut position within substring s
/// (0 keeps the parents' bits).
std::pair<BitString, BitString> one_point_crossover(const BitString& x1, const BitString& x2,
                                                    std::span<const int> layout, std::span<const int> cuts);

VectorXd clamp_to_bounds(const VectorXd& x, const Bounds& bounds);

} // namespace moepap
