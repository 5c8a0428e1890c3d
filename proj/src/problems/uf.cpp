#include "benchmarks.hpp"

#include <vector>

namespace moepap::detail {

namespace {

constexpr int uf_n = 30;

// 1-based variable indices j >= 2 (or >= 3 for three objectives) split by residue.
std::vector<int> group(int first, int step)
{
    std::vector<int> js;
    for (int j = first; j <= uf_n; j += step)
        js.push_back(j);
    return js;
}

class Uf : public Problem {
public:
    Uf(int index, Bounds bounds) : Problem(std::move(bounds)), index_(index) {}

    std::string name() const override { return "UF" + std::to_string(index_); }

protected:
    int index_;
};

class UfBiobjective : public Uf {
public:
    explicit UfBiobjective(int index) : Uf(index, make_bounds(index)), j1_(group(3, 2)), j2_(group(2, 2)) {}

    int objectives() const override { return 2; }

    VectorXd objective_upper_bound() const override
    {
        switch (index_) {
        case 2: return VectorXd::Constant(2, 8.3);
        case 3: return VectorXd::Constant(2, 9.6);
        // 1 + 2 * max |t| / (1 + e^{2|t|}) with |t| <= 3.
        case 4: return VectorXd::Constant(2, 1.3);
        // 1 + 0.15 + 2 * max (2t^2 - cos(4 pi t) + 1) with |t| <= 2.
        case 5: return VectorXd::Constant(2, 17.8);
        case 6: return VectorXd::Constant(2, 34.3);
        default: return VectorXd::Constant(2, 9.0);
        }
    }

    PointSetXd sample_front(std::size_t count) const override
    {
        switch (index_) {
        case 4:
            return sample_curve(count, 0.0, 1.0, 2, [](double t) { return VectorXd{{t, 1.0 - t * t}}; });
        case 5: {
            PointSetXd front(21, 2);
            for (int i = 0; i <= 20; ++i)
                front.row(i) << i / 20.0, 1.0 - i / 20.0;
            return front;
        }
        case 6:
            return sample_curve(count, 0.0, 1.0, 2, [](double t) {
                const double bump = std::max(0.0, 0.7 * std::sin(4.0 * pi * t));
                return VectorXd{{t + bump, 1.0 - t + bump}};
            });
        case 7:
            return sample_curve(count, 0.0, 1.0, 2, [](double t) { return VectorXd{{t, 1.0 - t}}; });
        default:
            return sample_curve(count, 0.0, 1.0, 2, [](double t) { return VectorXd{{t, 1.0 - std::sqrt(t)}}; });
        }
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        const double x1 = x(0);
        auto y = [&](int j) {
            const double phase = 6.0 * pi * x1 + j * pi / uf_n;
            switch (index_) {
            case 2: {
                const double amp = 0.3 * x1 * x1 * std::cos(24.0 * pi * x1 + 4.0 * j * pi / uf_n) + 0.6 * x1;
                return x(j - 1) - amp * (j % 2 == 1 ? std::cos(phase) : std::sin(phase));
            }
            case 3: return x(j - 1) - std::pow(x1, 0.5 * (1.0 + 3.0 * (j - 2) / (uf_n - 2.0)));
            default: return x(j - 1) - std::sin(phase);
            }
        };
        auto term = [&](const std::vector<int>& js) {
            const auto size = static_cast<double>(js.size());
            if (index_ == 3 || index_ == 6) {
                double sum = 0.0, prod = 1.0;
                for (int j : js) {
                    const double v = y(j);
                    sum += v * v;
                    prod *= std::cos(20.0 * v * pi / std::sqrt(static_cast<double>(j)));
                }
                return 2.0 / size * (4.0 * sum - 2.0 * prod + 2.0);
            }
            double sum = 0.0;
            for (int j : js) {
                const double v = y(j);
                if (index_ == 4)
                    sum += std::abs(v) / (1.0 + std::exp(2.0 * std::abs(v)));
                else if (index_ == 5)
                    sum += 2.0 * v * v - std::cos(4.0 * pi * v) + 1.0;
                else
                    sum += v * v;
            }
            return 2.0 / size * sum;
        };

        double a = x1, b = 1.0 - std::sqrt(x1);
        switch (index_) {
        case 4: b = 1.0 - x1 * x1; break;
        case 5: {
            const double bump = (1.0 / 20.0 + 0.1) * std::abs(std::sin(20.0 * pi * x1));
            a = x1 + bump;
            b = 1.0 - x1 + bump;
            break;
        }
        case 6: {
            const double bump = std::max(0.0, 2.0 * (1.0 / 4.0 + 0.1) * std::sin(4.0 * pi * x1));
            a = x1 + bump;
            b = 1.0 - x1 + bump;
            break;
        }
        case 7:
            a = std::pow(x1, 0.2);
            b = 1.0 - a;
            break;
        default: break;
        }
        return VectorXd{{a + term(j1_), b + term(j2_)}};
    }

private:
    static Bounds make_bounds(int index)
    {
        if (index == 3)
            return uniform_bounds(uf_n, 0.0, 1.0);
        if (index == 4)
            return head_unit_bounds(uf_n, 1, -2.0, 2.0);
        return head_unit_bounds(uf_n, 1, -1.0, 1.0);
    }

    std::vector<int> j1_, j2_;
};

class UfTriobjective : public Uf {
public:
    explicit UfTriobjective(int index)
        : Uf(index, head_unit_bounds(uf_n, 2, -2.0, 2.0)), j1_(group(4, 3)), j2_(group(5, 3)), j3_(group(3, 3))
    {}

    int objectives() const override { return 3; }

    VectorXd objective_upper_bound() const override
    {
        switch (index_) {
        case 9: return VectorXd{{33.6, 33.6, 33.0}};
        case 10: return VectorXd::Constant(3, 133.0);
        default: return VectorXd::Constant(3, 33.0);
        }
    }

    PointSetXd sample_front(std::size_t count) const override
    {
        return sample_surface(count, [this](double s, double t) { return shape(s, t); });
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        auto term = [&](const std::vector<int>& js) {
            double sum = 0.0;
            for (int j : js) {
                const double v = x(j - 1) - 2.0 * x(1) * std::sin(2.0 * pi * x(0) + j * pi / uf_n);
                sum += index_ == 10 ? 4.0 * v * v - std::cos(8.0 * pi * v) + 1.0 : v * v;
            }
            return 2.0 / static_cast<double>(js.size()) * sum;
        };
        VectorXd f = shape(x(0), x(1));
        f(0) += term(j1_);
        f(1) += term(j2_);
        f(2) += term(j3_);
        return f;
    }

private:
    VectorXd shape(double x1, double x2) const
    {
        if (index_ == 9) {
            const double bump = std::max(0.0, 1.1 * (1.0 - 4.0 * (2.0 * x1 - 1.0) * (2.0 * x1 - 1.0)));
            return VectorXd{{0.5 * (bump + 2.0 * x1) * x2, 0.5 * (bump - 2.0 * x1 + 2.0) * x2, 1.0 - x2}};
        }
        return VectorXd{{std::cos(0.5 * pi * x1) * std::cos(0.5 * pi * x2),
                         std::cos(0.5 * pi * x1) * std::sin(0.5 * pi * x2), std::sin(0.5 * pi * x1)}};
    }

    std::vector<int> j1_, j2_, j3_;
};

} // namespace

std::unique_ptr<Problem> make_uf(int index)
{
    if (index >= 1 && index <= 7)
        return std::make_unique<UfBiobjective>(index);
    if (index >= 8 && index <= 10)
        return std::make_unique<UfTriobjective>(index);
    return nullptr;
}

} // namespace moepap::detail
