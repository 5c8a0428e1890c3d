#include "benchmarks.hpp"

#include <algorithm>
#include <vector>

namespace moepap::detail {

namespace {

constexpr int wfg_k = 4;
constexpr int wfg_l = 8;
constexpr int wfg_m = 3;
constexpr int wfg_n = wfg_k + wfg_l;

using Vec = std::vector<double>;

double correct_to_01(double a)
{
    constexpr double eps = 1e-10;
    if (a <= 0.0 && a >= -eps)
        return 0.0;
    if (a >= 1.0 && a <= 1.0 + eps)
        return 1.0;
    return std::clamp(a, 0.0, 1.0);
}

// Transformation functions.

double b_poly(double y, double alpha) { return correct_to_01(std::pow(y, alpha)); }

double b_flat(double y, double a, double b, double c)
{
    const double v = a + std::min(0.0, std::floor(y - b)) * a * (b - y) / b -
                     std::min(0.0, std::floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c);
    return correct_to_01(v);
}

double b_param(double y, double u, double a, double b, double c)
{
    const double v = a - (1.0 - 2.0 * u) * std::abs(std::floor(0.5 - u) + a);
    return correct_to_01(std::pow(y, b + (c - b) * v));
}

double s_linear(double y, double a) { return correct_to_01(std::abs(y - a) / std::abs(std::floor(a - y) + a)); }

double s_decept(double y, double a, double b, double c)
{
    const double t1 = std::floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b);
    const double t2 = std::floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    return correct_to_01(1.0 + (std::abs(y - a) - b) * (t1 + t2 + 1.0 / b));
}

double s_multi(double y, double a, double b, double c)
{
    const double t = std::abs(y - c) / (2.0 * (std::floor(c - y) + c));
    return correct_to_01((1.0 + std::cos((4.0 * a + 2.0) * pi * (0.5 - t)) + 4.0 * b * t * t) / (b + 2.0));
}

double r_sum(const Vec& y, const Vec& w)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += w[i] * y[i];
        den += w[i];
    }
    return correct_to_01(num / den);
}

double r_sum(const Vec& y) { return r_sum(y, Vec(y.size(), 1.0)); }

double r_nonsep(const Vec& y, int a)
{
    const auto n = static_cast<int>(y.size());
    double num = 0.0;
    for (int j = 0; j < n; ++j) {
        num += y[j];
        for (int k = 0; k <= a - 2; ++k)
            num += std::abs(y[j] - y[(1 + j + k) % n]);
    }
    const double half = std::ceil(a / 2.0);
    return correct_to_01(num / (static_cast<double>(n) / a * half * (1.0 + 2.0 * a - 2.0 * half)));
}

Vec slice(const Vec& y, int lo, int hi) { return {y.begin() + lo, y.begin() + hi}; }

// Reduces position parameters [0, k) into M-1 groups and distance parameters [k, size) into one.
Vec reduce_sum(const Vec& y, int k, bool weighted)
{
    Vec t(wfg_m);
    const int group = k / (wfg_m - 1);
    auto weights = [&](int lo, int hi) {
        Vec w;
        for (int i = lo; i < hi; ++i)
            w.push_back(weighted ? 2.0 * (i + 1) : 1.0);
        return w;
    };
    for (int i = 0; i < wfg_m - 1; ++i)
        t[i] = r_sum(slice(y, i * group, (i + 1) * group), weights(i * group, (i + 1) * group));
    const int n = static_cast<int>(y.size());
    t[wfg_m - 1] = r_sum(slice(y, k, n), weights(k, n));
    return t;
}

Vec reduce_nonsep(const Vec& y, int k)
{
    Vec t(wfg_m);
    const int group = k / (wfg_m - 1);
    const int n = static_cast<int>(y.size());
    for (int i = 0; i < wfg_m - 1; ++i)
        t[i] = r_nonsep(slice(y, i * group, (i + 1) * group), group);
    t[wfg_m - 1] = r_nonsep(slice(y, k, n), n - k);
    return t;
}

// Shape functions over x_1..x_{M-1}; `m` is 1-based.

double convex(const Vec& x, int m)
{
    const int big_m = static_cast<int>(x.size()) + 1;
    double v = 1.0;
    for (int i = 0; i < big_m - m; ++i)
        v *= 1.0 - std::cos(0.5 * pi * x[i]);
    if (m > 1)
        v *= 1.0 - std::sin(0.5 * pi * x[big_m - m]);
    return v;
}

double concave(const Vec& x, int m)
{
    const int big_m = static_cast<int>(x.size()) + 1;
    double v = 1.0;
    for (int i = 0; i < big_m - m; ++i)
        v *= std::sin(0.5 * pi * x[i]);
    if (m > 1)
        v *= std::cos(0.5 * pi * x[big_m - m]);
    return v;
}

double linear(const Vec& x, int m)
{
    const int big_m = static_cast<int>(x.size()) + 1;
    double v = 1.0;
    for (int i = 0; i < big_m - m; ++i)
        v *= x[i];
    if (m > 1)
        v *= 1.0 - x[big_m - m];
    return v;
}

double mixed(const Vec& x, double a, double alpha)
{
    const double t = 2.0 * a * pi;
    return std::pow(1.0 - x[0] - std::cos(t * x[0] + 0.5 * pi) / t, alpha);
}

double disc(const Vec& x, double a, double alpha, double beta)
{
    const double c = std::cos(a * std::pow(x[0], beta) * pi);
    return 1.0 - std::pow(x[0], alpha) * c * c;
}

class Wfg : public Problem {
public:
    explicit Wfg(int index) : Problem(make_bounds()), index_(index) {}

    std::string name() const override { return "WFG" + std::to_string(index_); }
    int objectives() const override { return wfg_m; }

    VectorXd objective_upper_bound() const override { return VectorXd{{3.0, 5.0, 7.0}}; }

    PointSetXd sample_front(std::size_t count) const override
    {
        if (index_ == 3)
            return sample_curve(count, 0.0, 1.0, wfg_m, [this](double t) { return objectives_of({t, 0.5}, 0.0); });
        return sample_surface(count, [this](double s, double t) { return objectives_of({s, t}, 0.0); });
    }

protected:
    VectorXd compute(const VectorXd& z) const override
    {
        Vec y(wfg_n);
        for (int i = 0; i < wfg_n; ++i)
            y[i] = z(i) / (2.0 * (i + 1));
        const Vec t = transform(y);

        Vec x(wfg_m - 1);
        for (int i = 0; i < wfg_m - 1; ++i) {
            const double a = (index_ == 3 && i > 0) ? 0.0 : 1.0;
            x[i] = std::max(t[wfg_m - 1], a) * (t[i] - 0.5) + 0.5;
        }
        return objectives_of(x, t[wfg_m - 1]);
    }

private:
    static Bounds make_bounds()
    {
        Bounds b = uniform_bounds(wfg_n, 0.0, 1.0);
        for (int i = 0; i < wfg_n; ++i)
            b.upper(i) = 2.0 * (i + 1);
        return b;
    }

    VectorXd objectives_of(const Vec& x, double distance) const
    {
        VectorXd f(wfg_m);
        for (int m = 1; m <= wfg_m; ++m) {
            double h = 0.0;
            switch (index_) {
            case 1: h = m < wfg_m ? convex(x, m) : mixed(x, 5.0, 1.0); break;
            case 2: h = m < wfg_m ? convex(x, m) : disc(x, 5.0, 1.0, 1.0); break;
            case 3: h = linear(x, m); break;
            default: h = concave(x, m); break;
            }
            f(m - 1) = distance + 2.0 * m * h;
        }
        return f;
    }

    Vec transform(Vec y) const
    {
        const int k = wfg_k;
        const int n = wfg_n;
        constexpr double pa = 0.98 / 49.98;
        switch (index_) {
        case 1:
            for (int i = k; i < n; ++i)
                y[i] = s_linear(y[i], 0.35);
            for (int i = k; i < n; ++i)
                y[i] = b_flat(y[i], 0.8, 0.75, 0.85);
            for (double& v : y)
                v = b_poly(v, 0.02);
            return reduce_sum(y, k, true);
        case 2:
        case 3: {
            for (int i = k; i < n; ++i)
                y[i] = s_linear(y[i], 0.35);
            Vec paired(y.begin(), y.begin() + k);
            for (int i = k; i < n; i += 2)
                paired.push_back(r_nonsep({y[i], y[i + 1]}, 2));
            return reduce_sum(paired, k, false);
        }
        case 4:
            for (double& v : y)
                v = s_multi(v, 30.0, 10.0, 0.35);
            return reduce_sum(y, k, false);
        case 5:
            for (double& v : y)
                v = s_decept(v, 0.35, 0.001, 0.05);
            return reduce_sum(y, k, false);
        case 6:
            for (int i = k; i < n; ++i)
                y[i] = s_linear(y[i], 0.35);
            return reduce_nonsep(y, k);
        case 7: {
            const Vec orig = y;
            for (int i = 0; i < k; ++i)
                y[i] = b_param(orig[i], r_sum(slice(orig, i + 1, n)), pa, 0.02, 50.0);
            for (int i = k; i < n; ++i)
                y[i] = s_linear(y[i], 0.35);
            return reduce_sum(y, k, false);
        }
        case 8: {
            const Vec orig = y;
            for (int i = k; i < n; ++i)
                y[i] = b_param(orig[i], r_sum(slice(orig, 0, i)), pa, 0.02, 50.0);
            for (int i = k; i < n; ++i)
                y[i] = s_linear(y[i], 0.35);
            return reduce_sum(y, k, false);
        }
        default: {
            const Vec orig = y;
            for (int i = 0; i < n - 1; ++i)
                y[i] = b_param(orig[i], r_sum(slice(orig, i + 1, n)), pa, 0.02, 50.0);
            for (int i = 0; i < k; ++i)
                y[i] = s_decept(y[i], 0.35, 0.001, 0.05);
            for (int i = k; i < n; ++i)
                y[i] = s_multi(y[i], 30.0, 95.0, 0.35);
            return reduce_nonsep(y, k);
        }
        }
    }

    int index_;
};

} // namespace

std::unique_ptr<Problem> make_wfg(int index)
{
    if (index < 1 || index > 9)
        return nullptr;
    return std::make_unique<Wfg>(index);
}

} // namespace moepap::detail
