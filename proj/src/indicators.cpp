#include <moepap/indicators.hpp>
#include <moepap/rng.hpp>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

namespace moepap {

namespace {

// Rows strictly inside the reference corner.
std::vector<Index> contributing_rows(const PointSetXd& points, const VectorXd& ref)
{
    std::vector<Index> rows;
    for (Index i = 0; i < points.rows(); ++i)
        if ((points.row(i).transpose().array() < ref.array()).all())
            rows.push_back(i);
    return rows;
}

double hv2d(const PointSetXd& points, std::vector<Index> rows, const VectorXd& ref)
{
    std::sort(rows.begin(), rows.end(), [&](Index a, Index b) {
        return points(a, 0) < points(b, 0) || (points(a, 0) == points(b, 0) && points(a, 1) < points(b, 1));
    });
    double area = 0.0;
    double ceiling = ref(1);
    for (Index r : rows) {
        if (points(r, 1) < ceiling) {
            area += (ref(0) - points(r, 0)) * (ceiling - points(r, 1));
            ceiling = points(r, 1);
        }
    }
    return area;
}

// Two-dimensional staircase with incremental area, used by the 3-D sweep.
class Staircase {
public:
    Staircase(double ref_x, double ref_y) : ref_x_(ref_x), ref_y_(ref_y) {}

    void insert(double x, double y)
    {
        auto it = steps_.upper_bound(x);
        if (it != steps_.begin() && std::prev(it)->second <= y)
            return; // weakly dominated
        it = steps_.lower_bound(x);
        double left = x;
        double height = it == steps_.begin() ? ref_y_ : std::prev(it)->second;
        while (it != steps_.end() && it->second >= y) {
            area_ += (it->first - left) * (height - y);
            left = it->first;
            height = it->second;
            it = steps_.erase(it);
        }
        const double right = it == steps_.end() ? ref_x_ : it->first;
        area_ += (right - left) * (height - y);
        steps_.emplace_hint(it, x, y);
    }

    double area() const { return area_; }

private:
    double ref_x_, ref_y_;
    double area_ = 0.0;
    std::map<double, double> steps_;
};

double hv3d(const PointSetXd& points, std::vector<Index> rows, const VectorXd& ref)
{
    std::stable_sort(rows.begin(), rows.end(), [&](Index a, Index b) { return points(a, 2) < points(b, 2); });
    Staircase slice(ref(0), ref(1));
    double volume = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        slice.insert(points(rows[k], 0), points(rows[k], 1));
        const double next_z = k + 1 < rows.size() ? points(rows[k + 1], 2) : ref(2);
        volume += slice.area() * (next_z - points(rows[k], 2));
    }
    return volume;
}

} // namespace

double hypervolume(const PointSetXd& points, const VectorXd& ref)
{
    if (points.rows() == 0)
        return 0.0;
    if (points.cols() != ref.size())
        throw ContractViolation("hypervolume: reference point length differs from objective count");
    const auto rows = contributing_rows(points, ref);
    switch (points.cols()) {
    case 2: return hv2d(points, rows, ref);
    case 3: return hv3d(points, rows, ref);
    default: throw Unsupported("hypervolume: exact computation supports 2 or 3 objectives only");
    }
}

double hypervolume(std::span<const Individual> set, const VectorXd& ref)
{
    return hypervolume(objective_matrix(set), ref);
}

double igd(const PointSetXd& points, const PointSetXd& front)
{
    if (front.rows() == 0)
        throw ContractViolation("igd: empty reference front");
    if (points.rows() == 0)
        return std::numeric_limits<double>::infinity();
    if (points.cols() != front.cols())
        throw ContractViolation("igd: objective counts differ");
    double total = 0.0;
    for (Index i = 0; i < front.rows(); ++i)
        total += std::sqrt((points.rowwise() - front.row(i)).rowwise().squaredNorm().minCoeff());
    return total / static_cast<double>(front.rows());
}

double igd(std::span<const Individual> set, const PointSetXd& front)
{
    return igd(objective_matrix(set), front);
}

HvContext HvContext::make(const PointSetXd& front, const ObjectiveBox& box)
{
    if (front.cols() != box.ideal.size() || box.ideal.size() != box.upper.size())
        throw ConfigError("HvContext: front and objective box disagree on the objective count");
    if (!(box.ideal.array() < box.upper.array()).all())
        throw ConfigError("HvContext: ideal must lie strictly below the upper bound");
    HvContext ctx;
    ctx.ideal = box.ideal;
    ctx.reference_point = box.upper;
    ctx.hv_all = (box.upper - box.ideal).prod();
    ctx.hv_star = hypervolume(clip_to_box(front, ctx), box.upper);
    if (ctx.hv_star <= 0.0)
        throw ConfigError("HvContext: reference front has zero hypervolume");
    return ctx;
}

PointSetXd clip_to_box(const PointSetXd& points, const HvContext& ctx)
{
    PointSetXd clipped = points;
    for (Index i = 0; i < clipped.rows(); ++i)
        clipped.row(i) = clipped.row(i).cwiseMax(ctx.ideal.transpose());
    return clipped;
}

double hvr(const PointSetXd& points, const HvContext& ctx)
{
    if (ctx.hv_star <= 0.0)
        throw ConfigError("hvr: hv_star is zero");
    return hypervolume(clip_to_box(points, ctx), ctx.reference_point) / ctx.hv_star;
}

double hvr(std::span<const Individual> set, const HvContext& ctx)
{
    return hvr(objective_matrix(set), ctx);
}

double ihvr(const PointSetXd& points, const HvContext& ctx, bool* degenerate)
{
    const double hv = points.rows() == 0 ? 0.0 : hypervolume(clip_to_box(points, ctx), ctx.reference_point);
    const double gap = ctx.hv_all - hv;
    if (degenerate)
        *degenerate = gap <= 0.0;
    if (gap <= 0.0)
        return 1.0;
    return (ctx.hv_all - ctx.hv_star) / gap;
}

double ihvr(std::span<const Individual> set, const HvContext& ctx, bool* degenerate)
{
    return ihvr(objective_matrix(set), ctx, degenerate);
}

HvEstimate hv_monte_carlo(const PointSetXd& points, const VectorXd& ref, std::size_t samples, std::uint64_t seed)
{
    if (samples == 0)
        throw ContractViolation("hv_monte_carlo: samples must be positive");
    if (points.rows() == 0)
        return {};
    const VectorXd lower = points.colwise().minCoeff().transpose().cwiseMin(ref);
    const double box = (ref - lower).prod();
    if (box <= 0.0)
        return {};
    Rng rng(seed);
    const Index m = ref.size();
    VectorXd sample(m);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (Index j = 0; j < m; ++j)
            sample(j) = uniform(rng, lower(j), ref(j));
        for (Index i = 0; i < points.rows(); ++i) {
            if ((points.row(i).transpose().array() <= sample.array()).all()) {
                ++hits;
                break;
            }
        }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

ContextCache::ContextCache(std::shared_ptr<const ProblemData> data) : data_(std::move(data))
{
    if (!data_)
        throw ContractViolation("ContextCache: null problem data");
}

std::shared_ptr<const HvContext> ContextCache::get(const std::string& problem) const
{
    {
        std::lock_guard lock(mutex_);
        if (auto it = contexts_.find(problem); it != contexts_.end())
            return it->second;
    }
    auto ctx = std::make_shared<const HvContext>(HvContext::make(data_->front(problem)->points, data_->objective_box(problem)));
    std::lock_guard lock(mutex_);
    return contexts_.emplace(problem, std::move(ctx)).first->second;
}

ContextCache& ContextCache::shared()
{
    static ContextCache cache(std::make_shared<const ProblemData>(ProblemData::default_directory()));
    return cache;
}

} // namespace moepap
