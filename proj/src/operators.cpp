#include <moepap/operators.hpp>

#include <cmath>

namespace moepap {

namespace {

void require_real(const VectorXd& x, const Bounds& bounds, const char* op)
{
    if (x.size() != bounds.lower.size())
        throw ContractViolation(std::string(op) + ": vector length does not match bounds");
}

} // namespace

VectorXd clamp_to_bounds(const VectorXd& x, const Bounds& bounds)
{
    return x.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

double sbx_beta(double r, double eta)
{
    const double e = 1.0 / (eta + 1.0);
    if (r <= 0.5)
        return std::pow(2.0 * r, e);
    return std::pow(1.0 / (2.0 * (1.0 - r)), e);
}

std::pair<double, double> sbx_pair(double x1, double x2, double beta)
{
    return {0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2), 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2)};
}

std::pair<VectorXd, VectorXd> sbx_crossover(const VectorXd& x1, const VectorXd& x2, const SbxParams& params,
                                            const Bounds& bounds, Rng& rng)
{
    require_real(x1, bounds, "sbx_crossover");
    require_real(x2, bounds, "sbx_crossover");
    if (params.eta < 1 || params.pc < 0.0 || params.pc > 1.0)
        throw ContractViolation("sbx_crossover: invalid parameters");
    VectorXd c1 = x1, c2 = x2;
    if (uniform01(rng) > params.pc)
        return {c1, c2};
    // Each variable is recombined with probability 1/2 and the children's values are
    // exchanged with probability 1/2, as in the reference NSGA-II code.
    for (Index i = 0; i < x1.size(); ++i) {
        if (uniform01(rng) > 0.5)
            continue;
        const double beta = sbx_beta(uniform01(rng), params.eta);
        std::tie(c1(i), c2(i)) = sbx_pair(x1(i), x2(i), beta);
        if (uniform01(rng) < 0.5)
            std::swap(c1(i), c2(i));
    }
    return {clamp_to_bounds(c1, bounds), clamp_to_bounds(c2, bounds)};
}

double pm_delta(double r, double delta1, double delta2, double eta)
{
    const double e = 1.0 / (eta + 1.0);
    if (r <= 0.5)
        return std::pow(2.0 * r + (1.0 - 2.0 * r) * std::pow(delta1, eta + 1.0), e) - 1.0;
    return 1.0 - std::pow(2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(delta2, eta + 1.0), e);
}

VectorXd polynomial_mutation(const VectorXd& x, const PmParams& params, const Bounds& bounds, Rng& rng)
{
    require_real(x, bounds, "polynomial_mutation");
    const double pm = params.probability(x.size());
    if (params.eta < 1 || pm < 0.0 || pm > 1.0)
        throw ContractViolation("polynomial_mutation: invalid parameters");
    VectorXd y = x;
    for (Index i = 0; i < x.size(); ++i) {
        if (uniform01(rng) >= pm)
            continue;
        const double lo = bounds.lower(i), hi = bounds.upper(i);
        const double range = hi - lo;
        if (range <= 0.0)
            continue;
        const double r = uniform01(rng);
        const double delta = pm_delta(r, (hi - x(i)) / range, (x(i) - lo) / range, params.eta);
        y(i) = std::clamp(x(i) + delta * range, lo, hi);
    }
    return y;
}

bool de_uses_best(DeVariant variant)
{
    return variant == DeVariant::best_p || variant == DeVariant::current_to_best_p;
}

int de_donor_count(const DeParams& params)
{
    return 2 * params.p + (de_uses_best(params.variant) ? 0 : 1);
}

VectorXd de_trial(const VectorXd& target, std::span<const VectorXd> donors, const VectorXd* best,
                  const DeParams& params, const Bounds& bounds, Rng& rng)
{
    require_real(target, bounds, "de_trial");
    if (static_cast<int>(donors.size()) != de_donor_count(params))
        throw ContractViolation("de_trial: wrong number of donors");
    if (de_uses_best(params.variant) && best == nullptr)
        throw ContractViolation("de_trial: variant needs a best donor");

    const bool rand_based = !de_uses_best(params.variant);
    const std::size_t first_pair = rand_based ? 1 : 0;
    VectorXd diff = VectorXd::Zero(target.size());
    for (int l = 0; l < params.p; ++l)
        diff += donors[first_pair + 2 * l] - donors[first_pair + 2 * l + 1];

    VectorXd mutant;
    switch (params.variant) {
    case DeVariant::rand_p: mutant = donors[0] + params.F * diff; break;
    case DeVariant::best_p: mutant = *best + params.F * diff; break;
    case DeVariant::current_to_rand_p: mutant = target + params.K * (donors[0] - target) + params.F * diff; break;
    case DeVariant::current_to_best_p: mutant = target + params.K * (*best - target) + params.F * diff; break;
    }

    const Index n = target.size();
    const auto jr = static_cast<Index>(uniform_int(rng, 0, n - 1));
    VectorXd trial = target;
    for (Index j = 0; j < n; ++j)
        if (uniform01(rng) <= params.CR || j == jr)
            trial(j) = mutant(j);
    return clamp_to_bounds(trial, bounds);
}

double smpso_constriction(double c1, double c2)
{
    const double phi = std::max(c1 + c2, 4.0);
    return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

PsoMove pso_update(const VectorXd& x, const VectorXd& v, const VectorXd& pbest, const VectorXd& gbest,
                   const PsoParams& params, const Bounds& bounds, Rng& rng)
{
    require_real(x, bounds, "pso_update");
    const Index n = x.size();
    PsoMove move{VectorXd(n), VectorXd(n)};
    const double chi = params.constriction ? smpso_constriction(params.c1, params.c2) : 1.0;
    for (Index j = 0; j < n; ++j) {
        const double r1 = uniform01(rng);
        const double r2 = uniform01(rng);
        double vj = params.w * v(j) + params.c1 * r1 * (pbest(j) - x(j)) + params.c2 * r2 * (gbest(j) - x(j));
        vj *= chi;
        const double vmax = params.vmax_ratio * (bounds.upper(j) - bounds.lower(j));
        vj = std::clamp(vj, -vmax, vmax);

        double xj = x(j) + vj;
        if (xj < bounds.lower(j) || xj > bounds.upper(j)) {
            xj = std::clamp(xj, bounds.lower(j), bounds.upper(j));
            vj *= -params.v_change;
        }
        move.velocity(j) = vj;
        move.position(j) = xj;
    }
    return move;
}

VectorXd uniform_mutation(const VectorXd& x, double prob, int b, const Bounds& bounds, Rng& rng)
{
    require_real(x, bounds, "uniform_mutation");
    VectorXd y = x;
    for (Index j = 0; j < x.size(); ++j) {
        if (uniform01(rng) >= prob)
            continue;
        const double width = b * (bounds.upper(j) - bounds.lower(j)) / 100.0;
        y(j) = std::clamp(x(j) + uniform(rng, -1.0, 1.0) * width, bounds.lower(j), bounds.upper(j));
    }
    return y;
}

VectorXd nonuniform_mutation(const VectorXd& x, double prob, int generation, int max_generations,
                             const Bounds& bounds, Rng& rng)
{
    require_real(x, bounds, "nonuniform_mutation");
    constexpr double shape = 5.0;
    const double progress = max_generations > 0 ? std::min(1.0, double(generation) / max_generations) : 1.0;
    auto step = [&](double y) { return y * (1.0 - std::pow(uniform01(rng), std::pow(1.0 - progress, shape))); };
    VectorXd y = x;
    for (Index j = 0; j < x.size(); ++j) {
        if (uniform01(rng) >= prob)
            continue;
        if (uniform01(rng) <= 0.5)
            y(j) = x(j) + step(bounds.upper(j) - x(j));
        else
            y(j) = x(j) - step(x(j) - bounds.lower(j));
        y(j) = std::clamp(y(j), bounds.lower(j), bounds.upper(j));
    }
    return y;
}

std::pair<BitString, BitString> one_point_crossover(const BitString& x1, const BitString& x2,
                                                    std::span<const int> layout, std::span<const int> cuts)
{
    std::size_t total = 0;
    for (int len : layout)
        total += static_cast<std::size_t>(len);
    if (x1.size() != total || x2.size() != total || cuts.size() != layout.size())
        throw ContractViolation("one_point_crossover: bit strings do not match the layout");
    BitString c1 = x1, c2 = x2;
    std::size_t start = 0;
    for (std::size_t s = 0; s < layout.size(); ++s) {
        if (cuts[s] < 0 || cuts[s] > layout[s])
            throw ContractViolation("one_point_crossover: cut outside substring");
        // Bits at or after the cut are exchanged; cut 0 is treated as "no exchange".
        if (cuts[s] > 0)
            for (auto i = start + static_cast<std::size_t>(cuts[s]); i < start + layout[s]; ++i)
                std::swap(c1[i], c2[i]);
        start += static_cast<std::size_t>(layout[s]);
    }
    return {c1, c2};
}

std::pair<BitString, BitString> binary_variation(const BitString& x1, const BitString& x2,
                                                 std::span<const int> layout, double flip_probability, Rng& rng)
{
    for (const BitString* x : {&x1, &x2})
        for (std::uint8_t bit : *x)
            if (bit > 1)
                throw ContractViolation("binary_variation: input is not a bit string");
    std::vector<int> cuts(layout.size());
    for (std::size_t s = 0; s < layout.size(); ++s)
        cuts[s] = static_cast<int>(uniform_int(rng, 0, layout[s] - 1));
    auto [c1, c2] = one_point_crossover(x1, x2, layout, cuts);
    for (BitString* c : {&c1, &c2})
        for (auto& bit : *c)
            if (uniform01(rng) < flip_probability)
                bit ^= 1;
    return {c1, c2};
}

} // namespace moepap
