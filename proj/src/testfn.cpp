#include "demi/testfn.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace demi {

namespace {

constexpr double kSupportEps = 1e-12;

SpaceTag tag_for_support(const Interval& s) {
    double r = s.radius();
    return r > 0.0 ? SpaceTag::compact_a(r) : SpaceTag::compact_union();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

SpaceTag SpaceTag::compact_a(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("CompactA requires a > 0");
    return SpaceTag(Kind::CompactA, a);
}

std::string SpaceTag::to_string() const {
    switch (kind_) {
        case Kind::CompactA: return "D_a(a=" + num(a_) + ")";
        case Kind::CompactUnion: return "D";
        case Kind::Schwartz: return "S";
    }
    return "?";
}

TestFunction::TestFunction()
    : expr_(zero_node()), space_(SpaceTag::compact_union()), support_(Interval{0.0, 0.0}), label_("0") {}

TestFunction::TestFunction(NodePtr expr, SpaceTag space, std::optional<Interval> support, std::string label)
    : expr_(std::move(expr)), space_(space), support_(support), label_(std::move(label)) {
    if (label_.empty()) label_ = expr_->describe();
    if (support_ && support_->lo > support_->hi) throw std::invalid_argument("empty support interval");
}

Complex TestFunction::value(double x, unsigned order) const {
    if (support_ && (x < support_->lo || x > support_->hi)) return 0.0;
    return expr_->eval(x, order);
}

TestFunction TestFunction::with_label(std::string label) const {
    TestFunction r = *this;
    r.label_ = std::move(label);
    return r;
}

Interval TestFunction::integration_range(const QuadratureConfig& cfg) const {
    if (support_) return *support_;
    return {-cfg.schwartz_truncation_radius, cfg.schwartz_truncation_radius};
}

Multiplier Multiplier::constant(Complex c) {
    Multiplier m(constant_node(c), true, std::nullopt, c.imag() == 0.0 ? num(c.real()) : constant_node(c)->describe());
    m.constant_ = c;
    return m;
}

Multiplier Multiplier::polynomial(std::vector<Complex> coeffs) {
    auto e = polynomial_node(std::move(coeffs));
    return Multiplier(e, true, std::nullopt, e->describe());
}

Multiplier Multiplier::cosine(double omega, double phase) {
    auto e = cosine_node(1.0, omega, phase);
    return Multiplier(e, true, std::nullopt, e->describe());
}

Multiplier Multiplier::from_test_function(const TestFunction& xi) {
    return Multiplier(xi.expr(), true, xi.support(), xi.label());
}

Multiplier Multiplier::scaled(Complex c) const {
    Multiplier m(sum_node({{c, expr_}}), poly_growth_, support_, num(c.real()) + "*" + label_);
    if (constant_) m.constant_ = c * *constant_;
    return m;
}

Multiplier Multiplier::derivative(unsigned k) const {
    if (k > 0 && constant_) return constant(0.0);
    return Multiplier(deriv_node(expr_, k), poly_growth_, support_, "D" + std::to_string(k) + "[" + label_ + "]");
}

TestFunction zero_function() { return TestFunction(); }

TestFunction make_bump(double c, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("bump half-width must be positive");
    return TestFunction(bump_node(c, h), SpaceTag::compact_a(std::abs(c) + h), Interval{c - h, c + h});
}

TestFunction make_gaussian(double c, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    return TestFunction(polygauss_node(c, s, {1.0}), SpaceTag::schwartz(), std::nullopt);
}

TestFunction make_hermite_gaussian(unsigned n, double c, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    return TestFunction(polygauss_node(c, s, hermite_coefficients(n)), SpaceTag::schwartz(), std::nullopt,
                        "hermite" + std::to_string(n) + "(" + num(c) + "," + num(s) + ")");
}

TestFunction make_plateau(double a, double b, double margin, const QuadratureConfig& cfg) {
    if (!(b >= a) || !(margin > 0.0)) throw std::invalid_argument("plateau needs a <= b and margin > 0");
    const double h = margin / 2.0;
    auto up = make_bump(a - h, h);
    auto down = make_bump(b + h, h);
    const double mass = integrate(up, cfg).real();
    auto rise = combine(1.0 / mass, up, -1.0 / mass, down);
    return running_integral(rise, {a - margin, b + margin}, cfg)
        .with_label("plateau[" + num(a) + "," + num(b) + "]");
}

Complex evaluate(const TestFunction& xi, double x) { return xi(x); }

TestFunction derivative(const TestFunction& xi, unsigned k) {
    if (k == 0) return xi;
    return TestFunction(deriv_node(xi.expr(), k), xi.space(), xi.support(),
                        "D" + std::to_string(k) + "[" + xi.label() + "]");
}

TestFunction translate(const TestFunction& xi, double x) {
    if (x == 0.0) return xi;
    std::optional<Interval> s;
    SpaceTag tag = xi.space();
    if (xi.support()) {
        s = xi.support()->shifted(-x);
        tag = xi.is_zero() ? xi.space() : tag_for_support(*s);
    }
    return TestFunction(shift_node(xi.expr(), x), tag, s, xi.label() + "(" + num(x) + "+.)");
}

TestFunction combine(Complex a, const TestFunction& xi, Complex b, const TestFunction& eta) {
    const bool use_xi = !xi.is_zero() && a != Complex(0.0);
    const bool use_eta = !eta.is_zero() && b != Complex(0.0);
    if (!use_xi && !use_eta) return zero_function();

    std::optional<Interval> s;
    SpaceTag tag = SpaceTag::schwartz();
    const bool compact = (!use_xi || xi.is_compact()) && (!use_eta || eta.is_compact());
    if (compact) {
        if (use_xi && use_eta) s = hull(*xi.support(), *eta.support());
        else s = use_xi ? *xi.support() : *eta.support();
        const bool both_a = (!use_xi || xi.space().kind() == SpaceTag::Kind::CompactA) &&
                            (!use_eta || eta.space().kind() == SpaceTag::Kind::CompactA);
        tag = both_a ? tag_for_support(*s) : SpaceTag::compact_union();
    }
    std::vector<Term> terms;
    if (use_xi) terms.emplace_back(a, xi.expr());
    if (use_eta) terms.emplace_back(b, eta.expr());
    std::string label;
    auto piece = [](Complex c, const TestFunction& f) {
        return (c == Complex(1.0) ? "" : "(" + num(c.real()) + (c.imag() != 0.0 ? "+" + num(c.imag()) + "i" : "") + ")*") + f.label();
    };
    if (use_xi) label = piece(a, xi);
    if (use_eta) label += (label.empty() ? "" : " + ") + piece(b, eta);
    // A sum node with a single unit term collapses to the term itself.
    return TestFunction(sum_node(std::move(terms)), tag, s, label);
}

TestFunction scale(Complex a, const TestFunction& xi) { return combine(a, xi, 0.0, zero_function()); }

TestFunction product(const TestFunction& xi, const TestFunction& eta) {
    if (xi.is_zero() || eta.is_zero()) return zero_function();
    std::optional<Interval> s;
    SpaceTag tag = SpaceTag::schwartz();
    if (xi.is_compact() || eta.is_compact()) {
        if (xi.is_compact() && eta.is_compact()) {
            Interval i{std::max(xi.support()->lo, eta.support()->lo), std::min(xi.support()->hi, eta.support()->hi)};
            if (i.lo > i.hi) return zero_function();
            s = i;
        } else {
            s = xi.is_compact() ? *xi.support() : *eta.support();
        }
        tag = tag_for_support(*s);
    }
    return TestFunction(product_node(xi.expr(), eta.expr()), tag, s, xi.label() + "*" + eta.label());
}

TestFunction product(const Multiplier& m, const TestFunction& xi) {
    if (xi.is_zero() || m.expr()->is_zero()) return zero_function();
    if (m.constant_value()) return scale(*m.constant_value(), xi);
    if (m.support()) return product(TestFunction(m.expr(), SpaceTag::compact_union(), m.support(), m.label()), xi);
    if (!xi.is_compact() && !m.polynomial_growth())
        throw std::invalid_argument("multiplier without polynomial growth cannot act on S");
    return TestFunction(product_node(m.expr(), xi.expr()), xi.space(), xi.support(), m.label() + "*" + xi.label());
}

TestFunction running_integral(const TestFunction& xi, Interval range, const QuadratureConfig& cfg) {
    if (xi.is_zero()) return zero_function();
    return TestFunction(primitive_node(xi.expr(), range, cfg), tag_for_support(range), range,
                        "prim[" + xi.label() + "]");
}

QuadratureResult integrate_detailed(const TestFunction& xi, const QuadratureConfig& cfg) {
    if (xi.is_zero()) return {0.0, 0.0, 0};
    // Fundamental theorem of calculus: xi is a derivative of a function that
    // vanishes at both ends of the range.
    if (xi.expr()->derivative_depth() > 0) return {0.0, 0.0, 0};
    const Interval r = xi.integration_range(cfg);
    const int panels = xi.is_compact() ? 1 : std::max(1, static_cast<int>(std::ceil(r.width() / 2.0)));
    const NodePtr& e = xi.expr();
    return integrate_adaptive([&e](double x) { return e->eval(x, 0); }, r.lo, r.hi, cfg, panels);
}

Complex integrate(const TestFunction& xi, const QuadratureConfig& cfg) { return integrate_detailed(xi, cfg).value; }

QuadratureResult integrate_composed(const TestFunction& xi, const std::function<Complex(Complex)>& h,
                                    const QuadratureConfig& cfg, std::optional<Interval> range) {
    const Interval r = range ? *range : xi.integration_range(cfg);
    const int panels = std::max(1, static_cast<int>(std::ceil(r.width() / 2.0)));
    return integrate_adaptive([&](double x) { return h(xi(x)); }, r.lo, r.hi, cfg, panels);
}

double seminorm(const TestFunction& xi, unsigned p, const QuadratureConfig& cfg) {
    return seminorm(xi, p, xi.space(), cfg);
}

double seminorm(const TestFunction& xi, unsigned p, const SpaceTag& space, const QuadratureConfig& cfg) {
    if (xi.is_zero()) return 0.0;
    Interval r = xi.integration_range(cfg);
    if (space.kind() == SpaceTag::Kind::CompactA) {
        r.lo = std::max(r.lo, -space.a());
        r.hi = std::min(r.hi, space.a());
        if (r.lo > r.hi) return 0.0;
    }
    const bool weighted = space.kind() == SpaceTag::Kind::Schwartz;
    auto m = [&](double x) {
        double best = 0.0;
        for (unsigned q = 0; q <= p; ++q) best = std::max(best, std::abs(xi.value(x, q)));
        if (weighted) best *= std::max(1.0, std::pow(std::abs(x), static_cast<double>(p)));
        return best;
    };

    const int n = cfg.seminorm_grid;
    const double dx = r.width() / (n - 1);
    double best = 0.0;
    int arg = 0;
    for (int i = 0; i < n; ++i) {
        double v = m(r.lo + i * dx);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    if (dx == 0.0) return best;

    // Golden-section refinement on the bracket around the grid maximiser.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = r.lo + std::max(0, arg - 1) * dx;
    double b = r.lo + std::min(n - 1, arg + 1) * dx;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = m(c), fd = m(d);
    for (int it = 0; it < 60 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = m(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = m(d);
        }
    }
    return std::max({best, fc, fd});
}

bool belongs_to(const TestFunction& xi, const SpaceTag& space) {
    if (xi.is_zero()) return true;
    switch (space.kind()) {
        case SpaceTag::Kind::Schwartz: return true;
        case SpaceTag::Kind::CompactUnion: return xi.is_compact();
        case SpaceTag::Kind::CompactA:
            return xi.is_compact() && xi.support()->lo >= -space.a() - kSupportEps &&
                   xi.support()->hi <= space.a() + kSupportEps;
    }
    return false;
}

}  // namespace demi
