#include "demi/fourier.hpp"

#include <cmath>
#include <numbers>

#include "demi/calculus.hpp"

namespace demi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTailRel = 1e-13;
constexpr double kSampledTailRel = 1e-10;
constexpr double kMinRadius = 16.0;
constexpr double kMaxRadius = 16384.0;

Complex poly_eval(const std::vector<Complex>& p, double s, unsigned order = 0) {
    if (p.empty()) return order == 0 ? Complex(1.0) : Complex(0.0);
    Complex acc = 0.0;
    for (std::size_t i = p.size(); i-- > order;) {
        double f = 1.0;
        for (unsigned j = 0; j < order; ++j) f *= static_cast<double>(i - j);
        acc = acc * s + p[i] * f;
    }
    return acc;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<Complex> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

double binom(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int oscillation_panels(const Interval& r, double sigma) {
    const double by_width = std::ceil(r.width() / 2.0);
    const double by_freq = std::ceil(r.width() * std::abs(sigma) / kTwoPi);
    return static_cast<int>(std::max({1.0, by_width, by_freq}));
}

// Trapezoid samples of each source term on a uniform x grid, for the forward
// sums zeta(sigma) = sum_i w_i xi(x_i) e^{i x_i sigma}.
struct ForwardGrid {
    double a = 0.0, hx = 0.0;
    std::vector<std::vector<Complex>> weighted;  // per source term, w_i * c * xi(x_i)
    std::vector<const std::vector<Complex>*> polys;
    std::vector<double> l1;  // per source term, sum of |w_i c xi(x_i)|

    ForwardGrid(const std::vector<TransformFunction::SourceTerm>& terms, Interval win, double radius) {
        const int n = std::max(8, static_cast<int>(std::ceil(win.width() * radius / std::numbers::pi)));
        a = win.lo;
        hx = win.width() / n;
        for (const auto& t : terms) {
            std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
            double mass = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double w = (i == 0 || i == n) ? 0.5 * hx : hx;
                v[static_cast<std::size_t>(i)] = w * t.coeff * t.source(a + i * hx);
                mass += std::abs(v[static_cast<std::size_t>(i)]);
            }
            l1.push_back(mass);
            weighted.push_back(std::move(v));
            polys.push_back(&t.poly);
        }
    }

    // Bound on |p(sigma) zeta(sigma)|; rounding in the sums scales with it.
    double scale_at(double sigma) const {
        double s = 0.0;
        for (std::size_t t = 0; t < l1.size(); ++t) s += l1[t] * std::abs(poly_eval(*polys[t], sigma));
        return s;
    }

    Complex operator()(double sigma) const {
        Complex total = 0.0;
        const Complex step = std::polar(1.0, hx * sigma);
        for (std::size_t t = 0; t < weighted.size(); ++t) {
            const auto& v = weighted[t];
            Complex acc = 0.0;
            Complex ph = std::polar(1.0, a * sigma);
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i % 64 == 0) ph = std::polar(1.0, (a + static_cast<double>(i) * hx) * sigma);
                acc += v[i] * ph;
                ph *= step;
            }
            total += poly_eval(*polys[t], sigma) * acc;
        }
        return total;
    }
};

class InverseFourierNode final : public Node {
public:
    InverseFourierNode(std::vector<double> sigma, std::vector<Complex> coeff, Interval window, std::string label)
        : sigma_(std::move(sigma)), c_(std::move(coeff)), window_(window), label_(std::move(label)) {
        step_ = sigma_.size() > 1 ? sigma_[1] - sigma_[0] : 0.0;
    }
    Complex eval(double x, unsigned order) const override {
        if (x < window_.lo || x > window_.hi) return 0.0;
        const Complex step = std::polar(1.0, -x * step_);
        Complex ph;
        Complex acc = 0.0;
        for (std::size_t j = 0; j < sigma_.size(); ++j) {
            if (j % 64 == 0) ph = std::polar(1.0, -x * sigma_[j]);
            Complex term = c_[j] * ph;
            for (unsigned k = 0; k < order; ++k) term *= Complex(0.0, -sigma_[j]);
            acc += term;
            ph *= step;
        }
        return acc;
    }
    std::string describe() const override { return "Finv[" + label_ + "]"; }

private:
    std::vector<double> sigma_;
    std::vector<Complex> c_;
    Interval window_;
    std::string label_;
    double step_ = 0.0;
};

}  // namespace

TransformFunction::TransformFunction(std::vector<SourceTerm> src, std::vector<SampledTerm> smp, std::string label,
                                     QuadratureConfig cfg)
    : src_(std::move(src)), smp_(std::move(smp)), label_(std::move(label)), cfg_(cfg) {
    std::erase_if(src_, [](const SourceTerm& t) { return t.source.is_zero() || t.coeff == Complex(0.0); });
    std::erase_if(smp_, [](const SampledTerm& t) { return t.coeff == Complex(0.0); });
}

Complex TransformFunction::operator()(double sigma) const { return derivative(sigma, 0); }

Complex TransformFunction::derivative(double sigma, unsigned k) const {
    Complex total = 0.0;
    for (const auto& t : src_) {
        const Interval r = t.source.integration_range(cfg_);
        const int panels = oscillation_panels(r, sigma);
        for (unsigned j = 0; j <= k; ++j) {
            const Complex pj = poly_eval(t.poly, sigma, j);
            if (pj == Complex(0.0)) continue;
            const unsigned m = k - j;
            const TestFunction& xi = t.source;
            auto moment = [&](double x) {
                return std::pow(Complex(0.0, x), static_cast<int>(m)) * xi(x) * std::polar(1.0, x * sigma);
            };
            total += t.coeff * binom(k, j) * pj * integrate_interval(moment, r.lo, r.hi, cfg_, panels);
        }
    }
    for (const auto& t : smp_) {
        if (k > 0) throw std::invalid_argument("sampled transform terms carry no moment representation");
        total += t.coeff * poly_eval(t.poly, sigma) * t.fn(sigma);
    }
    return total;
}

std::string TransformFunction::space_label() const {
    if (!smp_.empty()) return "S";
    for (const auto& t : src_)
        if (!t.source.is_compact()) return "S";
    return "Z(a)";
}

TransformFunction fourier_test(const TestFunction& xi, const QuadratureConfig& cfg) {
    return TransformFunction({{1.0, xi, {}}}, {}, "F[" + xi.label() + "]", cfg);
}

TransformFunction combine(Complex a, const TransformFunction& z, Complex b, const TransformFunction& w) {
    auto src = z.source_terms();
    auto smp = z.sampled_terms();
    for (auto& t : src) t.coeff *= a;
    for (auto& t : smp) t.coeff *= a;
    for (auto t : w.source_terms()) {
        t.coeff *= b;
        src.push_back(std::move(t));
    }
    for (auto t : w.sampled_terms()) {
        t.coeff *= b;
        smp.push_back(std::move(t));
    }
    std::string label = z.label() + " + " + w.label();
    return TransformFunction(std::move(src), std::move(smp), std::move(label), z.quadrature());
}

TransformFunction multiply_sigma_polynomial(const TransformFunction& z, std::vector<Complex> coeffs) {
    auto src = z.source_terms();
    auto smp = z.sampled_terms();
    for (auto& t : src) t.poly = poly_mul(t.poly.empty() ? std::vector<Complex>{1.0} : t.poly, coeffs);
    for (auto& t : smp) t.poly = poly_mul(t.poly.empty() ? std::vector<Complex>{1.0} : t.poly, coeffs);
    return TransformFunction(std::move(src), std::move(smp), "p(s)" + z.label(), z.quadrature());
}

TransformFunction sampled_transform(std::function<Complex(double)> fn, double decay_radius, std::string label,
                                    const QuadratureConfig& cfg) {
    if (!fn) throw std::invalid_argument("sampled transform needs a function");
    if (!(decay_radius > 0.0)) throw std::invalid_argument("decay radius must be positive");
    return TransformFunction({}, {{1.0, std::move(fn), decay_radius, {}}}, std::move(label), cfg);
}

namespace {

TestFunction invert_group(const TransformFunction& zeta, const QuadratureConfig& cfg, InverseGrid* grid) {
    const auto& src = zeta.source_terms();
    const auto& smp = zeta.sampled_terms();

    bool compact = smp.empty();
    std::optional<Interval> support;
    for (const auto& t : src) {
        if (!t.source.is_compact()) {
            compact = false;
            continue;
        }
        support = support ? hull(*support, *t.source.support()) : *t.source.support();
    }
    const double L = cfg.schwartz_truncation_radius;
    const Interval window = compact ? *support : Interval{-L, L};
    const double period = 2.0 * window.width() + 1.0;
    const double dsigma = kTwoPi / period;

    // Sampled terms: the declared radius must actually bound the support.
    double radius = kMinRadius;
    for (const auto& t : smp) {
        double peak = 0.0, tail = 0.0;
        const double R = t.decay_radius;
        for (int i = 0; i <= 256; ++i) {
            const double s = -R + 2.0 * R * i / 256.0;
            peak = std::max(peak, std::abs(poly_eval(t.poly, s) * t.fn(s)));
        }
        for (int i = 0; i <= 32; ++i) {
            const double s = R * (0.9 + 0.1 * i / 32.0);
            tail = std::max({tail, std::abs(poly_eval(t.poly, s) * t.fn(s)), std::abs(poly_eval(t.poly, -s) * t.fn(-s))});
        }
        if (tail > kSampledTailRel * std::max(peak, 1e-300))
            throw ConvergenceError("sampled transform " + zeta.label() + " does not decay by its declared radius",
                                   tail, tail);
        radius = std::max(radius, R);
    }

    // Source terms: grow R until the transform tail on [3R/4, R] is negligible.
    std::optional<ForwardGrid> fwd;
    if (!src.empty()) {
        for (double R = kMinRadius;; R *= 2.0) {
            ForwardGrid g(src, window, R);
            double tail = 0.0, peak = 0.0;
            for (int i = 0; i <= 24; ++i) {
                const double s = R * (0.75 + 0.25 * i / 24.0);
                tail = std::max({tail, std::abs(g(s)), std::abs(g(-s))});
            }
            for (int i = 0; i <= 64; ++i) peak = std::max(peak, std::abs(g(-R + 2.0 * R * i / 64.0)));
            const double ref = std::max({g.scale_at(0.0), g.scale_at(R), peak, 1e-300});
            if (tail <= kTailRel * ref) {
                radius = std::max(radius, R);
                fwd.emplace(src, window, radius);
                break;
            }
            if (R >= kMaxRadius)
                throw ConvergenceError("transform of " + zeta.label() + " does not decay within |sigma| <= " +
                                           std::to_string(kMaxRadius),
                                       tail, tail);
        }
    }

    const long J = static_cast<long>(std::floor(radius / dsigma));
    std::vector<double> sig;
    std::vector<Complex> coeff;
    sig.reserve(static_cast<std::size_t>(2 * J + 1));
    coeff.reserve(static_cast<std::size_t>(2 * J + 1));
    for (long j = -J; j <= J; ++j) {
        const double s = static_cast<double>(j) * dsigma;
        Complex z = fwd ? (*fwd)(s) : Complex(0.0);
        for (const auto& t : smp)
            if (std::abs(s) <= t.decay_radius) z += t.coeff * poly_eval(t.poly, s) * t.fn(s);
        sig.push_back(s);
        coeff.push_back(z * dsigma / kTwoPi);
    }
    if (grid) *grid = {radius, dsigma, sig.size()};

    auto node = std::make_shared<InverseFourierNode>(std::move(sig), std::move(coeff), window, zeta.label());
    const std::string label = "Finv[" + zeta.label() + "]";
    if (compact) return TestFunction(node, SpaceTag::compact_a(std::max(window.radius(), 1e-300)), window, label);
    return TestFunction(node, SpaceTag::schwartz(), std::nullopt, label);
}

}  // namespace

// Compact and non-compact sources are inverted separately: each group gets its
// own window, so a slowly decaying compact transform never forces a fine grid
// over the wide Schwartz window.
TestFunction inverse_fourier_test(const TransformFunction& zeta, const QuadratureConfig& cfg, InverseGrid* grid) {
    if (zeta.is_zero()) return zero_function();
    std::vector<TransformFunction::SourceTerm> compact, wide;
    for (const auto& t : zeta.source_terms()) (t.source.is_compact() ? compact : wide).push_back(t);
    if (compact.empty() || (wide.empty() && zeta.sampled_terms().empty())) return invert_group(zeta, cfg, grid);

    const TransformFunction a(std::move(compact), {}, zeta.label(), zeta.quadrature());
    const TransformFunction b(std::move(wide), zeta.sampled_terms(), zeta.label(), zeta.quadrature());
    InverseGrid ga, gb;
    const TestFunction fa = invert_group(a, cfg, &ga), fb = invert_group(b, cfg, &gb);
    if (grid) *grid = {std::max(ga.radius, gb.radius), std::min(ga.sigma_step, gb.sigma_step), ga.nodes + gb.nodes};
    return combine(1.0, fa, 1.0, fb).with_label("Finv[" + zeta.label() + "]");
}

// Transform-side functionals ---------------------------------------------------

TransformFunctional::TransformFunctional(SpanElement source, QuadratureConfig cfg)
    : source_(std::move(source)), cfg_(cfg) {
    std::string l;
    for (const auto& [c, f] : source_.terms()) l += (l.empty() ? "" : "+") + f.label();
    label_ = "F(" + l + ")";
}

Complex TransformFunctional::operator()(const TransformFunction& zeta) const {
    return kTwoPi * source_(inverse_fourier_test(zeta, cfg_));
}

const DemiDistribution& TransformFunctional::single() const {
    if (source_.terms().size() != 1) throw std::logic_error("class data is defined for single functionals only");
    return source_.terms().front().second;
}

ClassTag TransformFunctional::class_tag() const {
    bool all_linear = true;
    for (const auto& [c, f] : source_.terms()) all_linear = all_linear && f.class_tag() == ClassTag::Linear;
    if (all_linear) return ClassTag::Linear;
    return single().class_tag();
}

const GammaFn& TransformFunctional::gamma() const {
    static const GammaFn id = GammaFn::identity();
    if (source_.terms().size() != 1 && class_tag() == ClassTag::Linear) return id;
    return single().gamma();
}

bool TransformFunctional::real_field() const {
    for (const auto& [c, f] : source_.terms())
        if (f.real_field()) return true;
    return false;
}

bool TransformFunctional::nbhd_contains(const TransformFunction& zeta) const {
    if (source_.terms().size() != 1 && class_tag() == ClassTag::Linear) return true;
    const DemiDistribution& f = single();
    if (f.nbhd().is_whole()) return true;
    return f.nbhd().contains(inverse_fourier_test(zeta, cfg_), f.quadrature());
}

TransformFunctional fourier_functional(const DemiDistribution& f, const QuadratureConfig& cfg) {
    return TransformFunctional(SpanElement(f), cfg);
}

TransformFunctional fourier_functional(const SpanElement& f, const QuadratureConfig& cfg) {
    return TransformFunctional(f, cfg);
}

DemiDistribution sine_of_mean(const QuadratureConfig& cfg) {
    return solve_homogeneous(compose(ScalarMap::sine(), dirac()), make_bump(0.0, 1.0), cfg)
        .relabeled("sin(e^-1 int .)");
}

double null_identity_check(const TransformFunctional& Ff, const TransformFunction& zeta) {
    return std::abs(Ff(multiply_sigma_polynomial(zeta, {0.0, Complex(0.0, 1.0)})));
}

std::pair<Complex, Complex> delta_vs_transform_check(Complex C, const TestFunction& xi, const QuadratureConfig& cfg) {
    const TransformFunction z = fourier_test(xi, cfg);
    return {C * z(0.0), fourier_functional(sine_of_mean(cfg), cfg)(z)};
}

WitnessReport check_demi_linearity(const TransformFunctional& Ff, const TransformFunction& zeta,
                                   const TransformFunction& eta, Complex t, ClassTag cls) {
    if (std::abs(t) > 1.0 + 1e-15) throw PreconditionViolation("|t| must be <= 1");
    if (Ff.real_field() && t.imag() != 0.0)
        throw PreconditionViolation(Ff.label() + " is demi-linear over real scalars only");
    if (!Ff.nbhd_contains(eta)) throw PreconditionViolation("eta = " + eta.label() + " lies outside F(U)");

    WitnessReport r;
    r.class_used = cls == ClassTag::L ? ClassTag::L : ClassTag::K;
    r.f_xi = Ff(zeta);
    r.f_eta = Ff(eta);
    r.f_sum = Ff(combine(1.0, zeta, t, eta));
    r.lhs_gap = std::abs(r.f_sum - r.f_xi);
    const double g = Ff.gamma().magnitude(t);
    r.bound = r.class_used == ClassTag::L ? g * (std::abs(r.f_xi) + std::abs(r.f_eta)) : g * std::abs(r.f_eta);
    r.feasible = r.lhs_gap <= r.bound + 10.0 * kTwoPi * Ff.quadrature().abs_tol;
    r.sample = "zeta=" + zeta.label() + "; eta=" + eta.label();
    return r;
}

}  // namespace demi
