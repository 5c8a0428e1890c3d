#include "benchmarks.hpp"

namespace moepap::detail {

namespace {

constexpr int dtlz_n = 11;
constexpr int dtlz_m = 2;

class Dtlz : public Problem {
public:
    explicit Dtlz(int index) : Problem(uniform_bounds(dtlz_n, 0.0, 1.0)), index_(index) {}

    std::string name() const override { return "DTLZ" + std::to_string(index_); }
    int objectives() const override { return dtlz_m; }

    VectorXd objective_upper_bound() const override
    {
        switch (index_) {
        // 0.5 * (1 + g_max), g_max = 100 * (k + k * max (y^2 - cos(20 pi y))).
        case 1: return VectorXd::Constant(dtlz_m, 1101.9);
        case 3: return VectorXd::Constant(dtlz_m, 2203.7);
        case 6: return VectorXd::Constant(dtlz_m, 11.0);
        case 7: return VectorXd{{1.0, 22.0}};
        default: return VectorXd::Constant(dtlz_m, 3.5);
        }
    }

    PointSetXd sample_front(std::size_t count) const override
    {
        switch (index_) {
        case 1:
            return sample_curve(count, 0.0, 0.5, 2, [](double t) { return VectorXd{{t, 0.5 - t}}; });
        case 7:
            return sample_curve(count, 0.0, 1.0, 2, [](double t) {
                return VectorXd{{t, 4.0 - t * (1.0 + std::sin(3.0 * pi * t))}};
            });
        default:
            return sample_curve(count, 0.0, 1.0, 2, [](double t) {
                return VectorXd{{std::cos(0.5 * pi * t), std::sin(0.5 * pi * t)}};
            });
        }
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        const int m = dtlz_m;
        const auto tail = x.tail(x.size() - (m - 1)).array();
        const auto k = static_cast<double>(tail.size());

        if (index_ == 7) {
            const double g = 1.0 + 9.0 / k * tail.sum();
            VectorXd f(m);
            f.head(m - 1) = x.head(m - 1);
            const double h = m - (f.head(m - 1).array() / (1.0 + g) *
                                  (1.0 + (3.0 * pi * f.head(m - 1).array()).sin())).sum();
            f(m - 1) = (1.0 + g) * h;
            return f;
        }

        double g = 0.0;
        switch (index_) {
        case 1:
        case 3: g = 100.0 * (k + ((tail - 0.5).square() - (20.0 * pi * (tail - 0.5)).cos()).sum()); break;
        case 6: g = tail.pow(0.1).sum(); break;
        default: g = (tail - 0.5).square().sum(); break;
        }

        // Position angles (as fractions of pi/2).
        VectorXd theta = x.head(m - 1);
        if (index_ == 4)
            theta = theta.array().pow(100.0);
        else if (index_ == 5 || index_ == 6)
            for (int i = 1; i < m - 1; ++i)
                theta(i) = (1.0 + 2.0 * g * x(i)) / (2.0 * (1.0 + g));

        VectorXd f(m);
        if (index_ == 1) {
            for (int i = 0; i < m; ++i) {
                double v = 0.5 * (1.0 + g);
                for (int j = 0; j < m - 1 - i; ++j)
                    v *= x(j);
                if (i > 0)
                    v *= 1.0 - x(m - 1 - i);
                f(i) = v;
            }
            return f;
        }
        for (int i = 0; i < m; ++i) {
            double v = 1.0 + g;
            for (int j = 0; j < m - 1 - i; ++j)
                v *= std::cos(0.5 * pi * theta(j));
            if (i > 0)
                v *= std::sin(0.5 * pi * theta(m - 1 - i));
            f(i) = v;
        }
        return f;
    }

private:
    int index_;
};

} // namespace

std::unique_ptr<Problem> make_dtlz(int index)
{
    if (index < 1 || index > 7)
        return nullptr;
    return std::make_unique<Dtlz>(index);
}

} // namespace moepap::detail
