#include "benchmarks.hpp"

namespace moepap::detail {

namespace {

double mean_tail(const VectorXd& x)
{
    return x.tail(x.size() - 1).sum() / static_cast<double>(x.size() - 1);
}

class Zdt : public Problem {
public:
    Zdt(int index, Bounds bounds) : Problem(std::move(bounds)), index_(index) {}

    std::string name() const override { return "ZDT" + std::to_string(index_); }
    int objectives() const override { return 2; }

protected:
    int index_;
};

// ZDT1, ZDT2, ZDT3: n = 30 on [0,1]^n.
class ZdtConvexFamily : public Zdt {
public:
    explicit ZdtConvexFamily(int index) : Zdt(index, uniform_bounds(30, 0.0, 1.0)) {}

    VectorXd objective_upper_bound() const override { return VectorXd{{1.0, 10.0}}; }

    PointSetXd sample_front(std::size_t count) const override
    {
        return sample_curve(count, 0.0, 1.0, 2, [this](double t) { return VectorXd{{t, front_f2(t, 1.0)}}; });
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        const double f1 = x(0);
        const double g = 1.0 + 9.0 * mean_tail(x);
        return VectorXd{{f1, front_f2(f1, g)}};
    }

private:
    double front_f2(double f1, double g) const
    {
        const double r = f1 / g;
        switch (index_) {
        case 1: return g * (1.0 - std::sqrt(r));
        case 2: return g * (1.0 - r * r);
        default: return g * (1.0 - std::sqrt(r) - r * std::sin(10.0 * pi * f1));
        }
    }
};

class Zdt4 : public Zdt {
public:
    Zdt4() : Zdt(4, head_unit_bounds(10, 1, -5.0, 5.0)) {}

    // g <= 1 + 10*9 + 9 * max_x (x^2 - 10 cos(4 pi x)) on [-5,5] = 384.32...
    VectorXd objective_upper_bound() const override { return VectorXd{{1.0, 384.4}}; }

    PointSetXd sample_front(std::size_t count) const override
    {
        return sample_curve(count, 0.0, 1.0, 2, [](double t) { return VectorXd{{t, 1.0 - std::sqrt(t)}}; });
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        const auto tail = x.tail(x.size() - 1).array();
        const double g = 1.0 + 10.0 * static_cast<double>(tail.size()) +
                         (tail.square() - 10.0 * (4.0 * pi * tail).cos()).sum();
        return VectorXd{{x(0), g * (1.0 - std::sqrt(x(0) / g))}};
    }
};

// Binary problem; each relaxed variable in [0,1] encodes one bit (>= 0.5 is set).
class Zdt5 : public Zdt {
public:
    Zdt5() : Zdt(5, uniform_bounds(80, 0.0, 1.0)) {}

    int dimension() const override { return 11; }
    Encoding encoding() const override { return Encoding::binary; }

    VectorXd objective_upper_bound() const override { return VectorXd{{31.0, 60.0}}; }

    // The front is discrete: g = 10 and f1 = 1..31.
    PointSetXd sample_front(std::size_t) const override
    {
        PointSetXd front(31, 2);
        for (int u = 0; u <= 30; ++u)
            front.row(u) << 1.0 + u, 10.0 / (1.0 + u);
        return front;
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        BitString bits(static_cast<std::size_t>(x.size()));
        for (Index i = 0; i < x.size(); ++i)
            bits[static_cast<std::size_t>(i)] = x(i) >= 0.5 ? 1 : 0;
        return evaluate_zdt5_bits(bits);
    }
};

class Zdt6 : public Zdt {
public:
    Zdt6() : Zdt(6, uniform_bounds(10, 0.0, 1.0)) {}

    VectorXd objective_upper_bound() const override { return VectorXd{{1.0, 10.0}}; }

    PointSetXd sample_front(std::size_t count) const override
    {
        return sample_curve(count, min_f1(), 1.0, 2, [](double t) { return VectorXd{{t, 1.0 - t * t}}; });
    }

protected:
    VectorXd compute(const VectorXd& x) const override
    {
        const double f1 = shape(x(0));
        const double g = 1.0 + 9.0 * std::pow(mean_tail(x), 0.25);
        return VectorXd{{f1, g * (1.0 - (f1 / g) * (f1 / g))}};
    }

private:
    static double shape(double x1) { return 1.0 - std::exp(-4.0 * x1) * std::pow(std::sin(6.0 * pi * x1), 6); }

    // Smallest attainable f1: the first minimum of shape() near x1 = 1/12.
    static double min_f1()
    {
        double lo = 0.0, hi = 1.0 / 6.0;
        for (int it = 0; it < 200; ++it) {
            const double a = lo + (hi - lo) / 3.0;
            const double b = hi - (hi - lo) / 3.0;
            if (shape(a) < shape(b))
                hi = b;
            else
                lo = a;
        }
        return shape(0.5 * (lo + hi));
    }
};

} // namespace

std::unique_ptr<Problem> make_zdt(int index)
{
    switch (index) {
    case 1:
    case 2:
    case 3: return std::make_unique<ZdtConvexFamily>(index);
    case 4: return std::make_unique<Zdt4>();
    case 5: return std::make_unique<Zdt5>();
    case 6: return std::make_unique<Zdt6>();
    default: return nullptr;
    }
}

} // namespace moepap::detail

namespace moepap {

VectorXd evaluate_zdt5_bits(std::span<const std::uint8_t> bits)
{
    if (bits.size() != 80)
        throw ContractViolation("ZDT5: expected 80 bits");
    std::size_t pos = 0;
    auto ones = [&](int len) {
        int u = 0;
        for (int i = 0; i < len; ++i, ++pos) {
            if (bits[pos] > 1)
                throw ContractViolation("ZDT5: bits must be 0 or 1");
            u += bits[pos];
        }
        return u;
    };
    const double f1 = 1.0 + ones(zdt5_layout[0]);
    double g = 0.0;
    for (std::size_t s = 1; s < zdt5_layout.size(); ++s) {
        const int u = ones(zdt5_layout[s]);
        g += u < 5 ? 2.0 + u : 1.0;
    }
    return VectorXd{{f1, g / f1}};
}

} // namespace moepap
