#include "common.hpp"

#include <map>

namespace moepap {

GridArchive::GridArchive(std::size_t capacity, int divisions) : capacity_(capacity), divisions_(divisions)
{
    if (capacity < 1 || divisions < 1)
        throw ConfigError("GridArchive: capacity and divisions must be positive");
}

std::vector<long> GridArchive::cells() const
{
    const Index m = members_.front().f.size();
    VectorXd lo = members_.front().f, hi = members_.front().f;
    for (const auto& ind : members_) {
        lo = lo.cwiseMin(ind.f);
        hi = hi.cwiseMax(ind.f);
    }
    std::vector<long> cell(members_.size(), 0);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        long id = 0;
        for (Index j = 0; j < m; ++j) {
            const double range = hi(j) - lo(j);
            long c = range > 0.0 ? static_cast<long>((members_[i].f(j) - lo(j)) / range * divisions_) : 0;
            c = std::min<long>(c, divisions_ - 1);
            id = id * divisions_ + c;
        }
        cell[i] = id;
    }
    return cell;
}

bool GridArchive::insert(const Individual& candidate, Rng& rng)
{
    for (const auto& member : members_) {
        const Dominance rel = dominance(member.f, candidate.f);
        if (rel == Dominance::a_dominates || rel == Dominance::equal)
            return false;
    }
    std::erase_if(members_, [&](const Individual& member) { return dominates(candidate.f, member.f); });
    members_.push_back(candidate);
    if (members_.size() <= capacity_)
        return true;

    // Over capacity: drop a random member of the most crowded cell.
    const std::vector<long> cell = cells();
    std::map<long, std::vector<std::size_t>> occupants;
    for (std::size_t i = 0; i < cell.size(); ++i)
        occupants[cell[i]].push_back(i);
    const std::vector<std::size_t>* crowded = nullptr;
    for (const auto& [id, list] : occupants)
        if (crowded == nullptr || list.size() > crowded->size())
            crowded = &list;
    const std::size_t victim = (*crowded)[static_cast<std::size_t>(uniform_int(rng, 0, long(crowded->size()) - 1))];
    const bool kept_candidate = victim != members_.size() - 1;
    members_.erase(members_.begin() + static_cast<long>(victim));
    return kept_candidate;
}

const Individual& GridArchive::select_leader(Rng& rng) const
{
    if (members_.empty())
        throw ContractViolation("GridArchive: no leader in an empty archive");
    const auto n = static_cast<long>(members_.size());
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
    if (a == b)
        return members_[a];
    const std::vector<long> cell = cells();
    const auto density = [&](std::size_t i) { return std::count(cell.begin(), cell.end(), cell[i]); };
    return density(b) < density(a) ? members_[b] : members_[a];
}

RunResult run_mopso(const Problem& problem, const AlgorithmConfig& config, RunBudget budget, std::uint64_t seed)
{
    if (config.foundation != Foundation::mopso)
        throw ConfigError("run_mopso: config is not a MOPSO config");
    detail::Stopwatch clock;
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(budget.pop_size);
    const Bounds& bounds = problem.bounds();
    const PsoParams& params = config.pso;
    const double pm_rate = 1.0 / static_cast<double>(problem.variables());

    Population swarm, pbest;
    std::vector<VectorXd> velocity;
    GridArchive archive(n, params.grid_divisions);
    for (std::size_t i = 0; i < n; ++i) {
        swarm.push_back(detail::random_individual(problem, rng));
        velocity.push_back(VectorXd::Zero(problem.variables()));
        archive.insert(swarm.back(), rng);
    }
    pbest = swarm;
    long evaluations = static_cast<long>(n);

    for (int gen = 0; gen < budget.max_generations; ++gen) {
        for (std::size_t i = 0; i < n; ++i) {
            const VectorXd gbest = archive.select_leader(rng).x;
            PsoMove move = pso_update(swarm[i].x, velocity[i], pbest[i].x, gbest, params, bounds, rng);
            velocity[i] = std::move(move.velocity);
            VectorXd x = std::move(move.position);

            switch (config.op) {
            case OperatorKind::smpso:
                if (i % 6 == 0)
                    x = polynomial_mutation(x, PmParams{params.pm_eta, pm_rate}, bounds, rng);
                break;
            case OperatorKind::omopso:
                if (i % 3 == 0)
                    x = uniform_mutation(x, pm_rate, params.b, bounds, rng);
                else if (i % 3 == 1)
                    x = nonuniform_mutation(x, pm_rate, gen, budget.max_generations, bounds, rng);
                break;
            default: break;
            }

            swarm[i] = detail::evaluated(problem, std::move(x));
            ++evaluations;
            archive.insert(swarm[i], rng);

            const Dominance rel = dominance(swarm[i].f, pbest[i].f);
            if (rel == Dominance::a_dominates || (rel != Dominance::b_dominates && uniform01(rng) < 0.5))
                pbest[i] = swarm[i];
        }
    }

    RunResult result;
    result.solutions = archive.members();
    result.evaluations = evaluations;
    result.seed = seed;
    result.pop_size = budget.pop_size;
    result.wall_ms = clock.elapsed_ms();
    return result;
}

} // namespace moepap
