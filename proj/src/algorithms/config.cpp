#include <moepap/algorithms.hpp>

#include <array>
#include <cmath>

namespace moepap {

namespace {

constexpr std::array foundation_names{"nsga2", "moead", "mopso"};
constexpr std::array operator_names{"sbx_pm",  "rand_p", "best_p",  "current_to_rand_p", "current_to_best_p",
                                    "smpso", "omopso", "no_mutation"};

void check(bool ok, const std::string& what)
{
    if (!ok)
        throw ConfigError("invalid algorithm config: " + what);
}

bool is_pso(OperatorKind op)
{
    return op == OperatorKind::smpso || op == OperatorKind::omopso || op == OperatorKind::no_mutation;
}

PsoMutation pso_mutation(OperatorKind op)
{
    switch (op) {
    case OperatorKind::smpso: return PsoMutation::smpso;
    case OperatorKind::omopso: return PsoMutation::omopso;
    default: return PsoMutation::none;
    }
}

} // namespace

std::string_view to_string(Foundation f) { return foundation_names[static_cast<std::size_t>(f)]; }
std::string_view to_string(OperatorKind op) { return operator_names[static_cast<std::size_t>(op)]; }

Foundation parse_foundation(std::string_view text)
{
    for (std::size_t i = 0; i < foundation_names.size(); ++i)
        if (text == foundation_names[i])
            return static_cast<Foundation>(i);
    throw ConfigError("unknown foundation algorithm '" + std::string(text) + "'");
}

OperatorKind parse_operator(std::string_view text)
{
    for (std::size_t i = 0; i < operator_names.size(); ++i)
        if (text == operator_names[i])
            return static_cast<OperatorKind>(i);
    throw ConfigError("unknown operator '" + std::string(text) + "'");
}

bool is_de(OperatorKind op)
{
    return op == OperatorKind::rand_p || op == OperatorKind::best_p || op == OperatorKind::current_to_rand_p ||
           op == OperatorKind::current_to_best_p;
}

DeVariant de_variant(OperatorKind op)
{
    switch (op) {
    case OperatorKind::rand_p: return DeVariant::rand_p;
    case OperatorKind::best_p: return DeVariant::best_p;
    case OperatorKind::current_to_rand_p: return DeVariant::current_to_rand_p;
    case OperatorKind::current_to_best_p: return DeVariant::current_to_best_p;
    default: throw ConfigError("operator '" + std::string(to_string(op)) + "' is not a DE operator");
    }
}

void AlgorithmConfig::validate() const
{
    switch (foundation) {
    case Foundation::nsga2: check(op == OperatorKind::sbx_pm || is_de(op), "NSGA-II does not admit this operator"); break;
    case Foundation::moead:
        check(op == OperatorKind::sbx_pm || op == OperatorKind::rand_p || op == OperatorKind::current_to_rand_p,
              "MOEA/D admits only sbx_pm, rand_p and current_to_rand_p");
        check(moead.Ps >= 0.0 && moead.Ps <= 1.0, "Ps must lie in [0,1]");
        check(moead.nr >= 2 && moead.nr <= 10, "nr must lie in 2..10");
        check(moead.neighbor_size >= 10 && moead.neighbor_size <= 50, "neighbor_size must lie in 10..50");
        break;
    case Foundation::mopso: check(is_pso(op), "MOPSO admits only smpso, omopso and no_mutation"); break;
    }

    if (op == OperatorKind::sbx_pm) {
        check(sbx.eta >= 1 && sbx.eta <= 100, "eta_sbx must lie in 1..100");
        check(sbx.pc == 1.0, "p_c is fixed to 1");
        check(pm.eta >= 1 && pm.eta <= 100, "eta_pm must lie in 1..100");
        check(!pm.pm || (*pm.pm > 0.0 && *pm.pm <= 1.0), "p_m must lie in (0,1]");
    }
    else if (is_de(op)) {
        check(de.variant == de_variant(op), "DE variant does not match the operator");
        check(de.F > 0.0 && de.F <= 2.0, "F must lie in (0,2]");
        check(de.CR > 0.0 && de.CR <= 1.0, "CR must lie in (0,1]");
        const bool current = de.variant == DeVariant::current_to_rand_p || de.variant == DeVariant::current_to_best_p;
        if (current) {
            check(de.p == 1, "p is fixed to 1 for current-to-* operators");
            check(de.K > 0.0 && de.K <= 1.0, "K must lie in (0,1]");
        }
        else {
            check(de.p == 1 || de.p == 2, "p must be 1 or 2");
        }
    }
    else {
        check(pso.mutation == pso_mutation(op), "PSO mutation does not match the operator");
        check(pso.w >= 0.0 && pso.w <= 1.0, "w must lie in [0,1]");
        check(pso.c1 >= 0.5 && pso.c1 <= 2.5 && pso.c2 >= 0.5 && pso.c2 <= 2.5, "c1, c2 must lie in [0.5,2.5]");
        check(pso.vmax_ratio >= 0.5 && pso.vmax_ratio <= 10.0, "vmax must lie in [0.5,10]");
        check(pso.grid_divisions >= 5 && pso.grid_divisions <= 20, "M must lie in 5..20");
        const double vc = pso.v_change;
        check(vc == 1.0 || vc == 0.1 || vc == 0.01 || vc == 0.001 || vc == -1.0,
              "v_change must be one of 1, 0.1, 0.01, 0.001, -1");
        if (op == OperatorKind::smpso)
            check(pso.pm_eta >= 1 && pso.pm_eta <= 100, "PMn must lie in 1..100");
        if (op == OperatorKind::omopso)
            check(pso.b >= 1 && pso.b <= 20, "b must lie in 1..20");
    }
}

bool AlgorithmConfig::operator==(const AlgorithmConfig& other) const
{
    if (foundation != other.foundation || op != other.op)
        return false;
    if (foundation == Foundation::moead && !(moead == other.moead))
        return false;
    if (op == OperatorKind::sbx_pm)
        return sbx == other.sbx && pm == other.pm;
    if (is_de(op)) {
        const bool current = de.variant == DeVariant::current_to_rand_p || de.variant == DeVariant::current_to_best_p;
        return de.F == other.de.F && de.p == other.de.p && de.CR == other.de.CR && (!current || de.K == other.de.K);
    }
    const bool base = pso.w == other.pso.w && pso.c1 == other.pso.c1 && pso.c2 == other.pso.c2 &&
                      pso.vmax_ratio == other.pso.vmax_ratio && pso.v_change == other.pso.v_change &&
                      pso.grid_divisions == other.pso.grid_divisions;
    if (op == OperatorKind::smpso)
        return base && pso.pm_eta == other.pso.pm_eta && pso.constriction == other.pso.constriction;
    if (op == OperatorKind::omopso)
        return base && pso.b == other.pso.b;
    return base;
}

AlgorithmConfig AlgorithmConfig::nsga2_sbx_pm(int eta_sbx, int eta_pm)
{
    AlgorithmConfig c;
    c.sbx.eta = eta_sbx;
    c.pm.eta = eta_pm;
    return c;
}

AlgorithmConfig AlgorithmConfig::nsga2_de(OperatorKind op, double F, int p, double CR, double K)
{
    AlgorithmConfig c;
    c.op = op;
    c.de = DeParams{de_variant(op), F, K, p, CR};
    return c;
}

AlgorithmConfig AlgorithmConfig::moead_sbx_pm(int eta_sbx, int eta_pm, MoeadParams extras)
{
    AlgorithmConfig c = nsga2_sbx_pm(eta_sbx, eta_pm);
    c.foundation = Foundation::moead;
    c.moead = extras;
    return c;
}

AlgorithmConfig AlgorithmConfig::moead_de(OperatorKind op, double F, int p, double CR, MoeadParams extras, double K)
{
    AlgorithmConfig c = nsga2_de(op, F, p, CR, K);
    c.foundation = Foundation::moead;
    c.moead = extras;
    return c;
}

AlgorithmConfig AlgorithmConfig::mopso(OperatorKind mutation, PsoParams params)
{
    AlgorithmConfig c;
    c.foundation = Foundation::mopso;
    c.op = mutation;
    c.pso = params;
    c.pso.mutation = pso_mutation(mutation);
    return c;
}

RunResult run(const AlgorithmConfig& config, const Problem& problem, RunBudget budget, std::uint64_t seed)
{
    config.validate();
    if (budget.pop_size < 1 || budget.max_generations < 0)
        throw ConfigError("run budget must have pop_size >= 1 and max_generations >= 0");
    switch (config.foundation) {
    case Foundation::nsga2: return run_nsga2(problem, config, budget, seed);
    case Foundation::moead: return run_moead(problem, config, budget, seed);
    case Foundation::mopso: return run_mopso(problem, config, budget, seed);
    }
    throw ConfigError("unknown foundation algorithm");
}

} // namespace moepap
