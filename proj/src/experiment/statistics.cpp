#include <moepap/experiment.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moepap {

double mean(std::span<const double> values)
{
    if (values.empty())
        throw ContractViolation("mean: empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance(std::span<const double> values)
{
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values)
        ss += (v - mu) * (v - mu);
    return ss / static_cast<double>(values.size());
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 3 || b.size() < 3)
        throw ContractViolation("wilcoxon_rank_sum: each sample needs at least 3 values");
    const std::size_t n = a.size();
    const std::size_t total = a.size() + b.size();

    std::vector<std::pair<double, bool>> pooled; // value, from a
    for (double v : a)
        pooled.emplace_back(v, true);
    for (double v : b)
        pooled.emplace_back(v, false);
    std::stable_sort(pooled.begin(), pooled.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    // Doubled midranks keep everything integral.
    std::vector<long> rank2(total);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < total;) {
        std::size_t j = i;
        while (j < total && pooled[j].first == pooled[i].first)
            ++j;
        const long mid2 = static_cast<long>(i + 1 + j); // (i+1 + j) = 2 * midrank
        for (std::size_t k = i; k < j; ++k)
            rank2[k] = mid2;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    RankSumResult result;
    long observed2 = 0;
    for (std::size_t k = 0; k < total; ++k)
        if (pooled[k].second)
            observed2 += rank2[k];
    result.statistic = observed2 / 2.0;

    if (pooled.front().first == pooled.back().first) {
        result.p_value = 1.0;
        result.exact = total <= 20;
        return result;
    }

    const long expected2 = static_cast<long>(n * (total + 1)); // 2 * n (N+1) / 2
    const long deviation = std::abs(observed2 - expected2);

    if (total <= 20) {
        // ways[k][s]: subsets of size k with doubled rank sum s.
        const long max_sum = std::accumulate(rank2.begin(), rank2.end(), 0L);
        std::vector<std::vector<double>> ways(n + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
        ways[0][0] = 1.0;
        for (std::size_t item = 0; item < total; ++item)
            for (std::size_t k = std::min(n, item + 1); k >= 1; --k)
                for (long s = max_sum; s >= rank2[item]; --s)
                    ways[k][static_cast<std::size_t>(s)] += ways[k - 1][static_cast<std::size_t>(s - rank2[item])];
        double extreme = 0.0, all = 0.0;
        for (long s = 0; s <= max_sum; ++s) {
            const double w = ways[n][static_cast<std::size_t>(s)];
            all += w;
            if (std::abs(s - expected2) >= deviation)
                extreme += w;
        }
        result.p_value = std::min(1.0, extreme / all);
        result.exact = true;
        return result;
    }

    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(b.size());
    const double big_n = static_cast<double>(total);
    const double var = nn * mm / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
    const double corrected = std::max(0.0, deviation / 2.0 - 0.5);
    const double z = corrected / std::sqrt(var);
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return result;
}

Wdl wdl_summary(std::span<const SamplePair> per_problem, bool higher_is_better)
{
    Wdl tally;
    for (const auto& pair : per_problem) {
        const RankSumResult test = wilcoxon_rank_sum(pair.baseline, pair.opponent);
        const double diff = mean(pair.baseline) - mean(pair.opponent);
        const bool better = higher_is_better ? diff > 0.0 : diff < 0.0;
        const bool worse = higher_is_better ? diff < 0.0 : diff > 0.0;
        if (test.p_value < significance_level && better)
            ++tally.win;
        else if (test.p_value < significance_level && worse)
            ++tally.loss;
        else
            ++tally.draw;
    }
    return tally;
}

} // namespace moepap
