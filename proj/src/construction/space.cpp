#include <moepap/construction.hpp>

#include <algorithm>
#include <cmath>

namespace moepap {

bool Parameter::active(OperatorKind op) const
{
    return active_for.empty() || std::find(active_for.begin(), active_for.end(), op) != active_for.end();
}

namespace {

// Reals are kept to three decimals, the precision used for published configurations.
double quantize(double v, const Parameter& p)
{
    double q = std::round(v * 1000.0) / 1000.0;
    if (p.lo_open && q <= p.lo)
        q = p.lo + 0.001;
    return std::clamp(q, p.lo, p.hi);
}

double sample_value(const Parameter& p, Rng& rng)
{
    switch (p.kind) {
    case ParamKind::real: {
        const double u = uniform01(rng);
        return quantize(p.lo_open ? p.hi - u * (p.hi - p.lo) : p.lo + u * (p.hi - p.lo), p);
    }
    case ParamKind::integer: return static_cast<double>(uniform_int(rng, long(p.lo), long(p.hi)));
    case ParamKind::grid: return p.values[static_cast<std::size_t>(uniform_int(rng, 0, long(p.values.size()) - 1))];
    }
    return p.lo;
}

double step_value(const Parameter& p, double current, Rng& rng)
{
    const bool up = uniform01(rng) < 0.5;
    if (p.kind == ParamKind::grid) {
        auto it = std::find(p.values.begin(), p.values.end(), current);
        auto idx = it == p.values.end() ? 0L : static_cast<long>(it - p.values.begin());
        const long last = static_cast<long>(p.values.size()) - 1;
        if (last == 0)
            return p.values.front();
        idx = up ? (idx == last ? idx - 1 : idx + 1) : (idx == 0 ? 1 : idx - 1);
        return p.values[static_cast<std::size_t>(idx)];
    }
    double step = 0.1 * (p.hi - p.lo);
    if (p.kind == ParamKind::integer)
        step = std::max(1.0, std::round(step));
    double next = current + (up ? step : -step);
    const bool below = p.lo_open ? next <= p.lo : next < p.lo;
    if (below || next > p.hi)
        next = current + (up ? -step : step);
    next = std::clamp(next, p.lo, p.hi);
    return p.kind == ParamKind::real ? quantize(next, p) : next;
}

// Fixes the fields implied by the operator choice.
void normalize(AlgorithmConfig& c)
{
    if (is_de(c.op)) {
        c.de.variant = de_variant(c.op);
        if (c.op == OperatorKind::current_to_rand_p || c.op == OperatorKind::current_to_best_p)
            c.de.p = 1;
    }
    if (c.foundation == Foundation::mopso)
        c = AlgorithmConfig::mopso(c.op, c.pso);
}

} // namespace

AlgorithmConfig Subspace::sample(Rng& rng) const
{
    AlgorithmConfig c;
    c.foundation = foundation;
    c.op = operators[static_cast<std::size_t>(uniform_int(rng, 0, long(operators.size()) - 1))];
    // Every parameter gets a value so that a later operator switch stays valid.
    for (const Parameter& p : params)
        p.set(c, sample_value(p, rng));
    normalize(c);
    return c;
}

AlgorithmConfig Subspace::perturb(const AlgorithmConfig& config, Rng& rng) const
{
    std::vector<long> dims; // -1 = operator
    if (operators.size() > 1)
        dims.push_back(-1);
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].active(config.op))
            dims.push_back(static_cast<long>(i));
    AlgorithmConfig c = config;
    if (dims.empty())
        return c;
    const long dim = dims[static_cast<std::size_t>(uniform_int(rng, 0, long(dims.size()) - 1))];
    if (dim < 0) {
        auto it = std::find(operators.begin(), operators.end(), config.op);
        const auto idx = static_cast<long>(it - operators.begin());
        const long last = static_cast<long>(operators.size()) - 1;
        const bool up = uniform01(rng) < 0.5;
        const long next = up ? (idx >= last ? idx - 1 : idx + 1) : (idx == 0 ? 1 : idx - 1);
        c.op = operators[static_cast<std::size_t>(next)];
    }
    else {
        const Parameter& p = params[static_cast<std::size_t>(dim)];
        p.set(c, step_value(p, p.get(c), rng));
    }
    normalize(c);
    return c;
}

namespace {

using Op = OperatorKind;

Parameter real(std::string name, double lo, double hi, bool lo_open, std::vector<Op> ops,
               std::function<void(AlgorithmConfig&, double)> set, std::function<double(const AlgorithmConfig&)> get)
{
    return {std::move(name), ParamKind::real, lo, hi, lo_open, {}, std::move(ops), std::move(set), std::move(get)};
}

Parameter integer(std::string name, int lo, int hi, std::vector<Op> ops,
                  std::function<void(AlgorithmConfig&, double)> set, std::function<double(const AlgorithmConfig&)> get)
{
    return {std::move(name), ParamKind::integer, double(lo), double(hi), false, {}, std::move(ops), std::move(set),
            std::move(get)};
}

std::vector<Parameter> sbx_params()
{
    return {
        integer("eta_sbx", 1, 100, {Op::sbx_pm}, [](auto& c, double v) { c.sbx.eta = int(v); },
                [](const auto& c) { return double(c.sbx.eta); }),
        integer("eta_pm", 1, 100, {Op::sbx_pm}, [](auto& c, double v) { c.pm.eta = int(v); },
                [](const auto& c) { return double(c.pm.eta); }),
    };
}

std::vector<Parameter> de_params(std::vector<Op> all, std::vector<Op> pair_ops, std::vector<Op> current_ops)
{
    return {
        real("F", 0.0, 2.0, true, all, [](auto& c, double v) { c.de.F = v; }, [](const auto& c) { return c.de.F; }),
        integer("p", 1, 2, pair_ops, [](auto& c, double v) { c.de.p = int(v); },
                [](const auto& c) { return double(c.de.p); }),
        real("K", 0.0, 1.0, true, current_ops, [](auto& c, double v) { c.de.K = v; },
             [](const auto& c) { return c.de.K; }),
        real("CR", 0.0, 1.0, true, all, [](auto& c, double v) { c.de.CR = v; }, [](const auto& c) { return c.de.CR; }),
    };
}

} // namespace

ConfigSpace ConfigSpace::standard()
{
    ConfigSpace space;

    Subspace nsga2{"nsga2", Foundation::nsga2,
                   {Op::sbx_pm, Op::rand_p, Op::best_p, Op::current_to_rand_p, Op::current_to_best_p}, sbx_params()};
    for (auto& p : de_params({Op::rand_p, Op::best_p, Op::current_to_rand_p, Op::current_to_best_p},
                             {Op::rand_p, Op::best_p}, {Op::current_to_rand_p, Op::current_to_best_p}))
        nsga2.params.push_back(std::move(p));
    space.subspaces.push_back(std::move(nsga2));

    Subspace moead{"moead", Foundation::moead, {Op::sbx_pm, Op::rand_p, Op::current_to_rand_p}, sbx_params()};
    for (auto& p : de_params({Op::rand_p, Op::current_to_rand_p}, {Op::rand_p}, {Op::current_to_rand_p}))
        moead.params.push_back(std::move(p));
    moead.params.push_back(real("Ps", 0.0, 1.0, false, {}, [](auto& c, double v) { c.moead.Ps = v; },
                                [](const auto& c) { return c.moead.Ps; }));
    moead.params.push_back(integer("nr", 2, 10, {}, [](auto& c, double v) { c.moead.nr = int(v); },
                                   [](const auto& c) { return double(c.moead.nr); }));
    moead.params.push_back(integer("neighbor_size", 10, 50, {}, [](auto& c, double v) { c.moead.neighbor_size = int(v); },
                                   [](const auto& c) { return double(c.moead.neighbor_size); }));
    space.subspaces.push_back(std::move(moead));

    Subspace mopso{"mopso", Foundation::mopso, {Op::smpso, Op::omopso, Op::no_mutation}, {}};
    auto& mp = mopso.params;
    mp.push_back(integer("pm_eta", 1, 100, {Op::smpso}, [](auto& c, double v) { c.pso.pm_eta = int(v); },
                         [](const auto& c) { return double(c.pso.pm_eta); }));
    mp.push_back(Parameter{"constriction", ParamKind::grid, 0, 1, false, {0.0, 1.0}, {Op::smpso},
                           [](auto& c, double v) { c.pso.constriction = v != 0.0; },
                           [](const auto& c) { return c.pso.constriction ? 1.0 : 0.0; }});
    mp.push_back(integer("b", 1, 20, {Op::omopso}, [](auto& c, double v) { c.pso.b = int(v); },
                         [](const auto& c) { return double(c.pso.b); }));
    mp.push_back(real("w", 0.0, 1.0, false, {}, [](auto& c, double v) { c.pso.w = v; },
                      [](const auto& c) { return c.pso.w; }));
    mp.push_back(real("c1", 0.5, 2.5, false, {}, [](auto& c, double v) { c.pso.c1 = v; },
                      [](const auto& c) { return c.pso.c1; }));
    mp.push_back(real("c2", 0.5, 2.5, false, {}, [](auto& c, double v) { c.pso.c2 = v; },
                      [](const auto& c) { return c.pso.c2; }));
    mp.push_back(real("vmax", 0.5, 10.0, false, {}, [](auto& c, double v) { c.pso.vmax_ratio = v; },
                      [](const auto& c) { return c.pso.vmax_ratio; }));
    mp.push_back(integer("M", 5, 20, {}, [](auto& c, double v) { c.pso.grid_divisions = int(v); },
                         [](const auto& c) { return double(c.pso.grid_divisions); }));
    mp.push_back(Parameter{"v_change", ParamKind::grid, -1, 1, false, {1.0, 0.1, 0.01, 0.001, -1.0}, {},
                           [](auto& c, double v) { c.pso.v_change = v; },
                           [](const auto& c) { return c.pso.v_change; }});
    space.subspaces.push_back(std::move(mopso));
    return space;
}

} // namespace moepap
