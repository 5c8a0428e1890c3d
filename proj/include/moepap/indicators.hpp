#pragma once

#include <moepap/problems.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace moepap {

/// Exact hypervolume of the region dominated by `points` and bounded by `ref`.
/// Points that do not strictly dominate `ref` contribute nothing. Objective
/// counts 2 (sorted sweep) and 3 (dimension sweep) only; otherwise Unsupported.
double hypervolume(const PointSetXd& points, const VectorXd& ref);
double hypervolume(std::span<const Individual> set, const VectorXd& ref);

/// Mean distance from each reference-front point to its nearest member of `points`.
/// An empty set yields +infinity.
double igd(const PointSetXd& points, const PointSetXd& front);
double igd(std::span<const Individual> set, const PointSetXd& front);

struct HvContext {
    VectorXd ideal;
    /// Upper corner of the objective box.
    VectorXd reference_point;
    double hv_star = 0.0;
    double hv_all = 0.0;

    static HvContext make(const PointSetXd& front, const ObjectiveBox& box);
};

/// Points pulled into the objective box from below (each coordinate raised to the ideal),
/// so that every set's hypervolume is at most hv_all.
PointSetXd clip_to_box(const PointSetXd& points, const HvContext& ctx);

double hvr(const PointSetXd& points, const HvContext& ctx);
double hvr(std::span<const Individual> set, const HvContext& ctx);

/// (hv_all - hv*) / (hv_all - hv). When the set covers the whole box the ratio is
/// undefined; 1 is returned and `*degenerate` (if given) is set.
double ihvr(const PointSetXd& points, const HvContext& ctx, bool* degenerate = nullptr);
double ihvr(std::span<const Individual> set, const HvContext& ctx, bool* degenerate = nullptr);

struct HvEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo hypervolume over the box spanned by the component-wise minimum
/// of `points` and `ref`.
HvEstimate hv_monte_carlo(const PointSetXd& points, const VectorXd& ref, std::size_t samples, std::uint64_t seed);

/// Per-problem HvContext built once from the shipped reference data.
class ContextCache {
public:
    explicit ContextCache(std::shared_ptr<const ProblemData> data);

    std::shared_ptr<const HvContext> get(const std::string& problem) const;
    std::shared_ptr<const ReferenceFront> front(const std::string& problem) const { return data_->front(problem); }
    const ProblemData& data() const { return *data_; }

    /// Cache over ProblemData::default_directory().
    static ContextCache& shared();

private:
    std::shared_ptr<const ProblemData> data_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<const HvContext>> contexts_;
};

} // namespace moepap
