#pragma once

#include <moepap/algorithms.hpp>

#include <chrono>

namespace moepap::detail {

inline Individual evaluated(const Problem& problem, VectorXd x)
{
    VectorXd f = problem.evaluate(x);
    return {std::move(x), std::move(f)};
}

inline Individual random_individual(const Problem& problem, Rng& rng)
{
    const Bounds& b = problem.bounds();
    VectorXd x(b.lower.size());
    for (Index i = 0; i < x.size(); ++i)
        x(i) = uniform(rng, b.lower(i), b.upper(i));
    return evaluated(problem, std::move(x));
}

/// `count` distinct indices from `pool`, never `exclude` (pass -1 for none).
inline std::vector<std::size_t> draw_distinct(std::span<const std::size_t> pool, std::size_t count, long exclude,
                                              Rng& rng)
{
    std::vector<std::size_t> candidates;
    candidates.reserve(pool.size());
    for (std::size_t i : pool)
        if (static_cast<long>(i) != exclude)
            candidates.push_back(i);
    if (candidates.size() < count)
        throw ConfigError("not enough distinct donors: population too small for the operator");
    // Partial Fisher-Yates.
    for (std::size_t k = 0; k < count; ++k) {
        const auto j = static_cast<std::size_t>(uniform_int(rng, static_cast<long>(k), long(candidates.size()) - 1));
        std::swap(candidates[k], candidates[j]);
    }
    candidates.resize(count);
    return candidates;
}

/// Non-dominated members of `pop`, crowding-truncated to `cap`.
inline SolutionSet final_front(const Population& pop, std::size_t cap)
{
    SolutionSet front = nondominated_filter(pop);
    if (front.size() > cap)
        front = crowding_truncate(front, cap);
    return front;
}

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace moepap::detail
