#include "common.hpp"

#include <numeric>

namespace moepap {

namespace {

struct Ranking {
    std::vector<int> rank;
    std::vector<double> crowding;
    std::vector<std::size_t> first_front;
};

Ranking rank_population(const Population& pop)
{
    const PointSetXd points = objective_matrix(pop);
    Ranking r{std::vector<int>(pop.size()), std::vector<double>(pop.size()), {}};
    const auto fronts = nondominated_sort(points);
    for (std::size_t k = 0; k < fronts.size(); ++k) {
        const VectorXd cd = crowding_distance(points, std::span<const Index>(fronts[k]));
        for (std::size_t i = 0; i < fronts[k].size(); ++i) {
            const auto row = static_cast<std::size_t>(fronts[k][i]);
            r.rank[row] = static_cast<int>(k);
            r.crowding[row] = cd(static_cast<Index>(i));
        }
    }
    if (!fronts.empty())
        r.first_front.assign(fronts.front().begin(), fronts.front().end());
    return r;
}

std::size_t tournament(const Ranking& r, Rng& rng)
{
    const auto n = static_cast<long>(r.rank.size());
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
    if (r.rank[a] != r.rank[b])
        return r.rank[a] < r.rank[b] ? a : b;
    return r.crowding[b] > r.crowding[a] ? b : a;
}

/// (mu + lambda) environmental selection by fronts, truncating the last front by crowding.
Population select_survivors(Population merged, std::size_t mu)
{
    const PointSetXd points = objective_matrix(merged);
    Population next;
    next.reserve(mu);
    for (const auto& front : nondominated_sort(points)) {
        if (next.size() + front.size() <= mu) {
            for (Index row : front)
                next.push_back(std::move(merged[static_cast<std::size_t>(row)]));
            if (next.size() == mu)
                break;
            continue;
        }
        for (Index row : crowding_select(points, std::span<const Index>(front), mu - next.size()))
            next.push_back(std::move(merged[static_cast<std::size_t>(row)]));
        break;
    }
    return next;
}

} // namespace

RunResult run_nsga2(const Problem& problem, const AlgorithmConfig& config, RunBudget budget, std::uint64_t seed)
{
    if (config.foundation != Foundation::nsga2)
        throw ConfigError("run_nsga2: config is not an NSGA-II config");
    if (budget.pop_size < 4)
        throw ConfigError("run_nsga2: pop_size must be at least 4");
    detail::Stopwatch clock;
    Rng rng(seed);
    const auto mu = static_cast<std::size_t>(budget.pop_size);
    const Bounds& bounds = problem.bounds();

    Population pop;
    pop.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i)
        pop.push_back(detail::random_individual(problem, rng));
    long evaluations = static_cast<long>(mu);

    std::vector<std::size_t> everyone(mu);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    for (int gen = 0; gen < budget.max_generations; ++gen) {
        const Ranking ranking = rank_population(pop);
        Population offspring;
        offspring.reserve(mu);

        if (config.op == OperatorKind::sbx_pm) {
            while (offspring.size() < mu) {
                const Individual& a = pop[tournament(ranking, rng)];
                const Individual& b = pop[tournament(ranking, rng)];
                auto [c1, c2] = sbx_crossover(a.x, b.x, config.sbx, bounds, rng);
                offspring.push_back(detail::evaluated(problem, polynomial_mutation(c1, config.pm, bounds, rng)));
                if (offspring.size() < mu)
                    offspring.push_back(detail::evaluated(problem, polynomial_mutation(c2, config.pm, bounds, rng)));
            }
        }
        else {
            const int count = de_donor_count(config.de);
            for (std::size_t i = 0; i < mu; ++i) {
                const auto picks = detail::draw_distinct(everyone, static_cast<std::size_t>(count), long(i), rng);
                std::vector<VectorXd> donors;
                donors.reserve(picks.size());
                for (std::size_t d : picks)
                    donors.push_back(pop[d].x);
                const VectorXd* best = nullptr;
                if (de_uses_best(config.de.variant)) {
                    const auto& front = ranking.first_front;
                    best = &pop[front[static_cast<std::size_t>(uniform_int(rng, 0, long(front.size()) - 1))]].x;
                }
                offspring.push_back(
                    detail::evaluated(problem, de_trial(pop[i].x, donors, best, config.de, bounds, rng)));
            }
        }
        evaluations += static_cast<long>(offspring.size());

        Population merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        pop = select_survivors(std::move(merged), mu);
    }

    RunResult result;
    result.solutions = detail::final_front(pop, mu);
    result.evaluations = evaluations;
    result.seed = seed;
    result.pop_size = budget.pop_size;
    result.wall_ms = clock.elapsed_ms();
    return result;
}

} // namespace moepap
