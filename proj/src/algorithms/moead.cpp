#include "common.hpp"

#include <algorithm>
#include <numeric>

namespace moepap {

PointSetXd simplex_lattice(int m, int pop_size)
{
    if (pop_size < 1)
        throw ConfigError("simplex_lattice: pop_size must be positive");
    if (m == 2) {
        PointSetXd w(pop_size, 2);
        for (int i = 0; i < pop_size; ++i) {
            const double t = pop_size == 1 ? 0.5 : double(i) / (pop_size - 1);
            w.row(i) << t, 1.0 - t;
        }
        return w;
    }
    if (m != 3)
        throw Unsupported("simplex_lattice: only 2 or 3 objectives are supported");
    int h = 1;
    while ((h + 2) * (h + 3) / 2 <= pop_size)
        ++h;
    const int size = (h + 1) * (h + 2) / 2;
    if (size > pop_size)
        throw ConfigError("simplex_lattice: pop_size too small for a 3-objective lattice");
    PointSetXd w(size, 3);
    Index row = 0;
    for (int i = 0; i <= h; ++i)
        for (int j = 0; j <= h - i; ++j)
            w.row(row++) << double(i) / h, double(j) / h, double(h - i - j) / h;
    return w;
}

double tchebycheff(const VectorXd& f, const VectorXd& lambda, const VectorXd& ideal)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < f.size(); ++j) {
        const double weight = lambda(j) == 0.0 ? 1e-6 : lambda(j);
        worst = std::max(worst, weight * std::abs(f(j) - ideal(j)));
    }
    return worst;
}

RunResult run_moead(const Problem& problem, const AlgorithmConfig& config, RunBudget budget, std::uint64_t seed)
{
    if (config.foundation != Foundation::moead)
        throw ConfigError("run_moead: config is not a MOEA/D config");
    detail::Stopwatch clock;
    const PointSetXd weights = simplex_lattice(problem.objectives(), budget.pop_size);
    const auto n = static_cast<std::size_t>(weights.rows());
    const auto t = static_cast<std::size_t>(config.moead.neighbor_size);
    if (t > n)
        throw ConfigError("run_moead: neighbor_size exceeds the population size");
    if (t < 2)
        throw ConfigError("run_moead: neighbor_size must be at least 2");

    // Neighborhoods: the t closest weight vectors (including the subproblem itself).
    std::vector<std::vector<std::size_t>> neighbors(n);
    {
        std::vector<std::size_t> order(n);
        std::vector<double> dist(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                dist[j] = (weights.row(Index(i)) - weights.row(Index(j))).squaredNorm();
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
            neighbors[i].assign(order.begin(), order.begin() + static_cast<long>(t));
        }
    }

    Rng rng(seed);
    const Bounds& bounds = problem.bounds();
    Population pop;
    pop.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pop.push_back(detail::random_individual(problem, rng));
    long evaluations = static_cast<long>(n);

    VectorXd ideal = pop.front().f;
    for (const auto& ind : pop)
        ideal = ideal.cwiseMin(ind.f);

    std::vector<std::size_t> everyone(n);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    for (int gen = 0; gen < budget.max_generations; ++gen) {
        for (std::size_t i = 0; i < n; ++i) {
            const bool local = uniform01(rng) < config.moead.Ps;
            const std::vector<std::size_t>& pool = local ? neighbors[i] : everyone;

            VectorXd child;
            if (config.op == OperatorKind::sbx_pm) {
                const auto parents = detail::draw_distinct(pool, 2, -1, rng);
                auto [c1, c2] = sbx_crossover(pop[parents[0]].x, pop[parents[1]].x, config.sbx, bounds, rng);
                child = polynomial_mutation(c1, config.pm, bounds, rng);
            }
            else {
                const auto picks = detail::draw_distinct(pool, static_cast<std::size_t>(de_donor_count(config.de)),
                                                         long(i), rng);
                std::vector<VectorXd> donors;
                for (std::size_t d : picks)
                    donors.push_back(pop[d].x);
                child = de_trial(pop[i].x, donors, nullptr, config.de, bounds, rng);
            }
            Individual offspring = detail::evaluated(problem, std::move(child));
            ++evaluations;
            ideal = ideal.cwiseMin(offspring.f);

            // Bounded replacement over the mating pool in random order.
            std::vector<std::size_t> order = pool;
            std::shuffle(order.begin(), order.end(), rng);
            int replaced = 0;
            for (std::size_t j : order) {
                if (replaced >= config.moead.nr)
                    break;
                const VectorXd lambda = weights.row(Index(j)).transpose();
                if (tchebycheff(offspring.f, lambda, ideal) < tchebycheff(pop[j].f, lambda, ideal)) {
                    pop[j] = offspring;
                    ++replaced;
                }
            }
        }
    }

    RunResult result;
    result.solutions = detail::final_front(pop, static_cast<std::size_t>(budget.pop_size));
    result.evaluations = evaluations;
    result.seed = seed;
    result.pop_size = static_cast<int>(n);
    result.wall_ms = clock.elapsed_ms();
    return result;
}

} // namespace moepap
