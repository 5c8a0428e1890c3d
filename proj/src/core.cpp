#include <moepap/core.hpp>

namespace moepap {

PointSetXd objective_matrix(std::span<const Individual> pop)
{
    if (pop.empty())
        return {};
    const Index m = pop.front().f.size();
    PointSetXd points(static_cast<Index>(pop.size()), m);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (pop[i].f.size() != m)
            throw ContractViolation("objective_matrix: individuals have different objective counts");
        points.row(static_cast<Index>(i)) = pop[i].f.transpose();
    }
    return points;
}

SolutionSet nondominated_filter(std::span<const Individual> pop)
{
    const PointSetXd points = objective_matrix(pop);
    SolutionSet out;
    for (Index row : nondominated_rows(points))
        out.push_back(pop[static_cast<std::size_t>(row)]);
    return out;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const Individual> pop)
{
    const PointSetXd points = objective_matrix(pop);
    std::vector<std::vector<std::size_t>> fronts;
    for (const auto& front : nondominated_sort(points))
        fronts.emplace_back(front.begin(), front.end());
    return fronts;
}

std::vector<Individual> crowding_truncate(std::span<const Individual> front, std::size_t k)
{
    if (k > front.size())
        throw ContractViolation("crowding_truncate: k exceeds front size");
    const PointSetXd points = objective_matrix(front);
    std::vector<Index> rows(front.size());
    std::iota(rows.begin(), rows.end(), Index{0});
    std::vector<Individual> out;
    out.reserve(k);
    for (Index row : crowding_select(points, rows, k))
        out.push_back(front[static_cast<std::size_t>(row)]);
    return out;
}

bool is_mutually_nondominated(std::span<const Individual> set)
{
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j)
            if (i != j && dominates(set[i].f, set[j].f))
                return false;
    return true;
}

} // namespace moepap
