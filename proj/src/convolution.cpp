#include "demi/convolution.hpp"

#include <cmath>
#include <sstream>

namespace demi {

namespace {

double parity(unsigned k) { return (k % 2 == 0) ? 1.0 : -1.0; }

std::string num(Complex c) {
    std::ostringstream os;
    if (c.imag() == 0.0) os << c.real(); else os << c;
    return os.str();
}

// x -> integral over supp g of g(tau) xi^(k)(x + tau) d tau.
class ConvolveRegularNode final : public Node {
public:
    ConvolveRegularNode(TestFunction g, TestFunction xi, Complex coeff, QuadratureConfig cfg)
        : g_(std::move(g)), xi_(std::move(xi)), c_(coeff), cfg_(cfg) {}

    Complex eval(double x, unsigned order) const override {
        Interval r = *g_.support();
        if (xi_.is_compact()) {
            const Interval s = xi_.support()->shifted(-x);
            r = {std::max(r.lo, s.lo), std::min(r.hi, s.hi)};
            if (!(r.hi > r.lo)) return 0.0;
        }
        auto integrand = [&](double tau) { return g_(tau) * xi_.value(x + tau, order); };
        return c_ * integrate_interval(integrand, r.lo, r.hi, cfg_);
    }
    std::string describe() const override { return "conv(" + g_.label() + "," + xi_.expr()->describe() + ")"; }
    bool is_zero() const override { return xi_.is_zero() || g_.is_zero(); }
    unsigned derivative_depth() const override { return xi_.expr()->derivative_depth(); }

private:
    TestFunction g_;
    TestFunction xi_;
    Complex c_;
    QuadratureConfig cfg_;
};

double grid_sup(const std::function<double(double)>& f, Interval w, int points) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) worst = std::max(worst, f(w.lo + w.width() * i / (points - 1)));
    return worst;
}

Interval window_of(const TestFunction& a, const QuadratureConfig& cfg) { return a.integration_range(cfg); }

}  // namespace

ConvolutionMultiplier ConvolutionMultiplier::dirac() { return {Kind::Dirac, 0, zero_function(), {}}; }

ConvolutionMultiplier ConvolutionMultiplier::dirac_derivative(unsigned k) {
    if (k == 0) return dirac();
    return {Kind::DiracDerivative, k, zero_function(), {}};
}

ConvolutionMultiplier ConvolutionMultiplier::compact_regular(const TestFunction& g, const QuadratureConfig& cfg) {
    if (!g.is_compact()) throw std::invalid_argument("convolution multiplier density must have compact support");
    return {Kind::CompactRegular, 0, g, cfg};
}

ConvolutionMultiplier ConvolutionMultiplier::mollifier(int k, const QuadratureConfig& cfg) {
    if (k < 1) throw std::invalid_argument("mollifier index must be >= 1");
    static const Complex I0 = integrate(make_bump(0.0, 1.0));
    const TestFunction g = scale(static_cast<double>(k) / I0, make_bump(0.0, 1.0 / k));
    return compact_regular(g.with_label("mollifier(" + std::to_string(k) + ")"), cfg);
}

Interval ConvolutionMultiplier::support_bound() const {
    if (kind_ == Kind::CompactRegular) return *g_.support();
    return {0.0, 0.0};
}

std::string ConvolutionMultiplier::label() const {
    std::string base;
    switch (kind_) {
        case Kind::Dirac: base = "delta"; break;
        case Kind::DiracDerivative: base = "D" + std::to_string(order_) + "delta"; break;
        case Kind::CompactRegular: base = "[" + g_.label() + "]"; break;
    }
    return coeff_ == Complex(1.0) ? base : num(coeff_) + "*" + base;
}

ConvolutionMultiplier ConvolutionMultiplier::derivative(unsigned k) const {
    if (k == 0) return *this;
    ConvolutionMultiplier r = *this;
    if (kind_ == Kind::CompactRegular) {
        r.g_ = demi::derivative(g_, k).with_label(g_.label() + "^(" + std::to_string(k) + ")");
    } else {
        r.kind_ = Kind::DiracDerivative;
        r.order_ = order_ + k;
    }
    return r;
}

ConvolutionMultiplier ConvolutionMultiplier::scaled(Complex t) const {
    ConvolutionMultiplier r = *this;
    r.coeff_ *= t;
    return r;
}

Complex ConvolutionMultiplier::apply(const TestFunction& xi) const {
    switch (kind_) {
        case Kind::Dirac: return coeff_ * xi(0.0);
        case Kind::DiracDerivative: return coeff_ * parity(order_) * xi.value(0.0, order_);
        case Kind::CompactRegular: break;
    }
    return coeff_ * integrate(product(g_, xi), cfg_);
}

TestFunction convolve_test(const ConvolutionMultiplier& f0, const TestFunction& xi) {
    using K = ConvolutionMultiplier::Kind;
    if (xi.is_zero() || f0.coefficient() == Complex(0.0)) return zero_function();
    const std::string label = f0.label() + "*" + xi.label();
    switch (f0.kind()) {
        case K::Dirac: return scale(f0.coefficient(), xi).with_label(label);
        case K::DiracDerivative:
            return scale(f0.coefficient() * parity(f0.order()), derivative(xi, f0.order())).with_label(label);
        case K::CompactRegular: break;
    }
    auto node = std::make_shared<ConvolveRegularNode>(f0.density(), xi, f0.coefficient(), f0.quadrature());
    if (!xi.is_compact()) return TestFunction(node, SpaceTag::schwartz(), std::nullopt, label);
    const Interval g = f0.support_bound();
    const Interval s{xi.support()->lo - g.hi, xi.support()->hi - g.lo};
    return TestFunction(node, SpaceTag::compact_a(std::max(s.radius(), 1e-300)), s, label);
}

DemiDistribution convolve_functional(const ConvolutionMultiplier& f0, const DemiDistribution& f) {
    DemiDistribution::Info info = f.info();
    info.label = f0.label() + "*" + f.label();
    if (info.space.kind() == SpaceTag::Kind::CompactA && f0.kind() == ConvolutionMultiplier::Kind::CompactRegular)
        info.space = SpaceTag::compact_union();
    auto conv = [f0](const TestFunction& xi) { return convolve_test(f0, xi); };
    info.nbhd = f.nbhd().pulled_back(conv, f0.label() + "*");
    info.descriptor = {{"kind", "convolution"}, {"parameters", {{"f0", f0.label()}, {"f", f.to_json()}}}};
    auto ev = f.evaluator();
    return DemiDistribution([ev, conv](const TestFunction& xi) { return ev(conv(xi)); }, std::move(info));
}

SpanElement convolve_functional(const ConvolutionMultiplier& f0, const SpanElement& f) {
    std::vector<std::pair<Complex, DemiDistribution>> t;
    for (const auto& [c, g] : f.terms()) t.emplace_back(c, convolve_functional(f0, g));
    return SpanElement(std::move(t));
}

double sup_distance(const TestFunction& a, const TestFunction& b, int points, const QuadratureConfig& cfg) {
    const Interval w = hull(window_of(a, cfg), window_of(b, cfg));
    return grid_sup([&](double x) { return std::abs(a(x) - b(x)); }, w, points);
}

ScalarCompatResiduals scalar_compat_check(const ConvolutionMultiplier& f0, const DemiDistribution& f, Complex t,
                                          const TestFunction& xi) {
    ScalarCompatResiduals r;
    const TestFunction lhs = scale(t, convolve_test(f0, xi));
    const TestFunction rhs = convolve_test(f0.scaled(t), xi);
    r.test_side = sup_distance(lhs, rhs, 401, f0.quadrature());

    const Complex base = convolve_functional(f0, f)(xi);
    r.functional_side = std::abs(t * base - convolve_functional(f0, scaled(t, f))(xi));
    if (f.class_tag() == ClassTag::Linear)
        r.linear_side = std::abs(t * base - convolve_functional(f0.scaled(t), f)(xi));
    return r;
}

ExchangeResiduals diffop_exchange_check(const DiffOperator& P, const ConvolutionMultiplier& f0, const SpanElement& f,
                                        const TestFunction& xi) {
    ExchangeResiduals r;

    TestFunction lhs = zero_function(), rhs = zero_function();
    for (const auto& [a, k] : P.terms()) {
        lhs = combine(1.0, lhs, a, convolve_test(f0.derivative(k), xi));
        rhs = combine(1.0, rhs, a * parity(k), convolve_test(f0, derivative(xi, k)));
    }
    r.diffop_on_test = sup_distance(lhs, rhs, 401, f0.quadrature());

    const SpanElement conv = convolve_functional(f0, f);
    for (const auto& [a, k] : P.terms()) {
        const Complex d_of_conv = derivative_functional(conv, k)(xi);
        const Complex conv_by_df0 = convolve_functional(f0.derivative(k), f)(xi);
        const Complex conv_of_df = convolve_functional(f0, derivative_functional(f, k))(xi);
        r.derivative_swap = std::max({r.derivative_swap, std::abs(d_of_conv - conv_by_df0),
                                      std::abs(d_of_conv - conv_of_df)});
    }

    r.diffop_on_functional =
        std::abs(apply_operator(P, conv)(xi) - convolve_functional(f0, apply_operator(P, f))(xi));
    return r;
}

bool ContinuityReport::monotone_from(int k0, double slack) const {
    for (std::size_t k = static_cast<std::size_t>(std::max(k0, 1)); k < diagonal.size(); ++k)
        if (diagonal[k] > diagonal[k - 1] + slack) return false;
    return true;
}

bool ContinuityReport::grid_monotone(double slack) const {
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid[i].size(); ++j) {
            if (i + 1 < grid.size() && grid[i + 1][j] > grid[i][j] + slack) return false;
            if (j + 1 < grid[i].size() && grid[i][j + 1] > grid[i][j] + slack) return false;
        }
    return true;
}

ContinuityReport convolution_continuity_check(const std::function<ConvolutionMultiplier(int)>& f_seq,
                                              const ConvolutionMultiplier& f_lim,
                                              const std::function<DemiDistribution(int)>& g_seq,
                                              const DemiDistribution& g_lim, const std::vector<TestFunction>& B,
                                              int k_max, std::vector<int> grid_index) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    std::vector<Complex> target;
    for (const auto& xi : B) target.push_back(g_lim(convolve_test(f_lim, xi)));
    auto gap = [&](int k, int m) {
        const ConvolutionMultiplier fk = f_seq(k);
        const DemiDistribution gm = g_seq(m);
        double worst = 0.0;
        for (std::size_t i = 0; i < B.size(); ++i) worst = std::max(worst, std::abs(gm(convolve_test(fk, B[i])) - target[i]));
        return worst;
    };

    ContinuityReport r;
    for (int k = 1; k <= k_max; ++k) r.diagonal.push_back(gap(k, k));
    std::erase_if(grid_index, [&](int k) { return k < 1 || k > k_max; });
    r.grid_index = grid_index;
    for (int k : grid_index) {
        std::vector<double> row;
        for (int m : grid_index) row.push_back(gap(k, m));
        r.grid.push_back(std::move(row));
    }
    return r;
}

}  // namespace demi
