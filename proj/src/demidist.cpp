#include "demi/demidist.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace demi {

namespace {

Json complex_json(Complex c) {
    if (c.imag() == 0.0) return c.real();
    return Json::array({c.real(), c.imag()});
}

}  // namespace

// GammaFn ------------------------------------------------------------------

GammaFn GammaFn::identity() {
    return GammaFn(Kind::Identity, 1.0, "t", [](Complex t) { return t; });
}

GammaFn GammaFn::linear(Complex c) {
    std::string name = (c.imag() == 0.0 ? std::to_string(c.real()) : "c") + "*t";
    return GammaFn(Kind::Linear, c, name, [c](Complex t) { return c * t; });
}

GammaFn GammaFn::sqrt_abs() {
    return GammaFn(Kind::Sqrt, 1.0, "sqrt|t|", [](Complex t) { return Complex(std::sqrt(std::abs(t))); });
}

GammaFn GammaFn::custom(std::string name, std::function<Complex(Complex)> fn) {
    return GammaFn(Kind::Custom, 1.0, std::move(name), std::move(fn));
}

GammaFn GammaFn::compose(const GammaFn& outer, const GammaFn& inner) {
    if (outer.kind_ == Kind::Identity) return inner;
    if (inner.kind_ == Kind::Identity) return outer;
    if (outer.kind_ == Kind::Linear && inner.kind_ == Kind::Linear) return linear(outer.c_ * inner.c_);
    auto o = outer.fn_;
    auto i = inner.fn_;
    return GammaFn(Kind::Composed, 1.0, "(" + outer.name_ + ")o(" + inner.name_ + ")",
                   [o, i](Complex t) { return o(i(t)); });
}

Json GammaFn::to_json() const {
    Json j;
    switch (kind_) {
        case Kind::Identity: j["kind"] = "identity"; break;
        case Kind::Linear:
            j["kind"] = "linear";
            j["c"] = complex_json(c_);
            break;
        case Kind::Sqrt: j["kind"] = "sqrt"; break;
        case Kind::Composed: j["kind"] = "composed"; break;
        case Kind::Custom: j["kind"] = "custom"; break;
    }
    j["formula"] = name_;
    return j;
}

double GammaFn::sup_on_unit_disk() const {
    switch (kind_) {
        case Kind::Identity:
        case Kind::Sqrt: return 1.0;
        case Kind::Linear: return std::abs(c_);
        default: break;
    }
    double best = 0.0;
    for (int r = 1; r <= 64; ++r)
        for (int a = 0; a < 32; ++a)
            best = std::max(best, magnitude(std::polar(r / 64.0, 2.0 * std::numbers::pi * a / 32.0)));
    return best;
}

GammaCheck check_gamma(const GammaFn& g, int samples, std::uint64_t seed) {
    GammaCheck out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < samples; ++i) {
        const double r = std::sqrt(u(rng));
        const double th = 2.0 * std::numbers::pi * u(rng);
        const Complex t = std::polar(r, th);
        const double m = g.magnitude(t);
        if (r > m * (1.0 + 1e-14)) {
            out.dominates_identity = false;
            out.worst_violation = std::max(out.worst_violation, r - m);
        }
        const double r2 = r * u(rng);
        if (g.magnitude(std::polar(r2, th)) > m * (1.0 + 1e-14)) out.monotone = false;
    }
    if (g.magnitude(0.0) != 0.0) out.vanishes_at_zero = false;
    double prev = std::numeric_limits<double>::infinity();
    for (int e = 1; e <= 14; ++e) {
        const double m = g.magnitude(std::pow(10.0, -e));
        if (m > prev) out.vanishes_at_zero = false;
        prev = m;
    }
    if (prev > 1e-5) out.vanishes_at_zero = false;
    return out;
}

// Neighbourhoods --------------------------------------------------------------

TestFunction Constraint::mapped(const TestFunction& eta) const {
    TestFunction v = eta;
    for (const auto& m : maps) v = m(v);
    return v;
}

double Constraint::measure(const TestFunction& eta, const QuadratureConfig& cfg) const {
    const TestFunction v = mapped(eta);
    if (kind == Kind::Ball) return seminorm(v, p, space, cfg);
    return std::abs(functional(v));
}

Json Constraint::to_json() const {
    Json j;
    if (kind == Kind::Ball) {
        j["kind"] = "ball";
        j["p"] = p;
        j["eps"] = eps;
        j["space"] = space.to_string();
    } else {
        j["kind"] = "bound";
        j["functional"] = label;
        j["eps"] = eps;
    }
    if (!map_labels.empty()) j["pullback"] = map_labels;
    return j;
}

Neighborhood Neighborhood::ball(unsigned p, double eps, SpaceTag space) {
    if (!(eps > 0.0)) throw std::invalid_argument("ball radius must be positive");
    Neighborhood n;
    Constraint c;
    c.kind = Constraint::Kind::Ball;
    c.p = p;
    c.eps = eps;
    c.space = space;
    c.label = "||.||_" + std::to_string(p) + "<" + std::to_string(eps);
    n.constraints_.push_back(std::move(c));
    return n;
}

Neighborhood Neighborhood::functional_bound(std::string label, std::function<Complex(const TestFunction&)> fn,
                                            double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("bound must be positive");
    Neighborhood n;
    if (std::isinf(eps)) return n;
    Constraint c;
    c.kind = Constraint::Kind::FunctionalBound;
    c.eps = eps;
    c.functional = std::move(fn);
    c.label = std::move(label);
    n.constraints_.push_back(std::move(c));
    return n;
}

Neighborhood Neighborhood::intersect(const Neighborhood& o) const {
    Neighborhood n = *this;
    n.constraints_.insert(n.constraints_.end(), o.constraints_.begin(), o.constraints_.end());
    return n;
}

Neighborhood Neighborhood::pulled_back(std::function<TestFunction(const TestFunction&)> map, std::string label) const {
    Neighborhood n = *this;
    for (auto& c : n.constraints_) {
        c.maps.insert(c.maps.begin(), map);
        c.map_labels.insert(c.map_labels.begin(), label);
    }
    return n;
}

Neighborhood Neighborhood::derivative_shift(unsigned k) const {
    if (k == 0) return *this;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    auto map = [k, sign](const TestFunction& eta) { return scale(sign, derivative(eta, k)); };
    Neighborhood n = *this;
    for (auto& c : n.constraints_) {
        if (c.kind == Constraint::Kind::Ball && c.maps.empty()) {
            c.p += k;
            c.label = "||.||_" + std::to_string(c.p) + "<" + std::to_string(c.eps);
        } else {
            c.maps.insert(c.maps.begin(), map);
            c.map_labels.insert(c.map_labels.begin(), "(-1)^" + std::to_string(k) + "D" + std::to_string(k));
        }
    }
    return n;
}

bool Neighborhood::contains(const TestFunction& eta, const QuadratureConfig& cfg) const {
    for (const auto& c : constraints_)
        if (!(c.measure(eta, cfg) < c.eps)) return false;
    return true;
}

double Neighborhood::fit_factor(const TestFunction& eta, const QuadratureConfig& cfg, double margin) const {
    double s = 1.0;
    for (const auto& c : constraints_) {
        const double m = c.measure(eta, cfg);
        if (m > 0.0) s = std::min(s, margin * c.eps / m);
    }
    return s;
}

Json Neighborhood::to_json() const {
    if (constraints_.empty()) return "whole space";
    Json j = Json::array();
    for (const auto& c : constraints_) j.push_back(c.to_json());
    return j;
}

// Functionals -------------------------------------------------------------------

std::string to_string(ClassTag c) {
    switch (c) {
        case ClassTag::Linear: return "Linear";
        case ClassTag::L: return "L";
        case ClassTag::K: return "K";
    }
    return "?";
}

DemiDistribution::DemiDistribution(Evaluator eval, Info info) : eval_(std::move(eval)), info_(std::move(info)) {
    if (!eval_) throw std::invalid_argument("functional needs an evaluator");
}

Complex DemiDistribution::operator()(const TestFunction& xi) const {
    if (!belongs_to(xi, info_.space))
        throw std::invalid_argument("test function " + xi.label() + " is outside the space " +
                                    info_.space.to_string() + " of " + info_.label);
    return eval_(xi);
}

Json DemiDistribution::to_json() const {
    Json j;
    j["label"] = info_.label;
    j["kind"] = info_.descriptor.contains("kind") ? info_.descriptor["kind"] : Json("custom");
    j["parameters"] = info_.descriptor.contains("parameters") ? info_.descriptor["parameters"] : Json::object();
    j["class"] = to_string(info_.cls);
    j["gamma"] = info_.gamma.to_json();
    j["nbhd"] = info_.nbhd.to_json();
    j["space"] = info_.space.to_string();
    if (info_.real_field) j["scalars"] = "real";
    return j;
}

DemiDistribution DemiDistribution::relabeled(std::string label) const {
    DemiDistribution d = *this;
    d.info_.label = std::move(label);
    return d;
}

SpanElement::SpanElement(const DemiDistribution& f) { terms_.emplace_back(1.0, f); }

SpanElement::SpanElement(std::vector<std::pair<Complex, DemiDistribution>> terms) : terms_(std::move(terms)) {}

Complex SpanElement::operator()(const TestFunction& xi) const {
    Complex acc = 0.0;
    for (const auto& [t, f] : terms_) acc += t * f(xi);
    return acc;
}

SpanElement SpanElement::operator+(const SpanElement& o) const {
    auto t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return SpanElement(std::move(t));
}

SpanElement SpanElement::scaled(Complex s) const {
    auto t = terms_;
    for (auto& term : t) term.first *= s;
    return SpanElement(std::move(t));
}

Json SpanElement::to_json() const {
    Json j = Json::array();
    for (const auto& [t, f] : terms_) j.push_back({{"coefficient", complex_json(t)}, {"functional", f.to_json()}});
    return j;
}

Complex apply(const DemiDistribution& f, const TestFunction& xi) { return f(xi); }
Complex apply(const SpanElement& f, const TestFunction& xi) { return f(xi); }

// Feasibility ---------------------------------------------------------------------

Json WitnessReport::to_json() const {
    return {{"lhs_gap", lhs_gap}, {"bound", bound}, {"feasible", feasible}, {"class", to_string(class_used)},
            {"sample", sample}};
}

WitnessReport check_demi_linearity(const DemiDistribution& f, const TestFunction& xi, const TestFunction& eta,
                                   Complex t, ClassTag cls) {
    if (std::abs(t) > 1.0 + 1e-15) throw PreconditionViolation("|t| must be <= 1");
    if (f.real_field() && t.imag() != 0.0)
        throw PreconditionViolation(f.label() + " is demi-linear over real scalars only");
    const auto& cfg = f.quadrature();
    if (!f.nbhd().contains(eta, cfg))
        throw PreconditionViolation("eta = " + eta.label() + " lies outside the neighbourhood of " + f.label());

    WitnessReport r;
    r.class_used = cls == ClassTag::L ? ClassTag::L : ClassTag::K;
    r.f_xi = f(xi);
    r.f_eta = f(eta);
    r.f_sum = f(combine(1.0, xi, t, eta));
    r.lhs_gap = std::abs(r.f_sum - r.f_xi);
    const double g = f.gamma().magnitude(t);
    r.bound = r.class_used == ClassTag::L ? g * (std::abs(r.f_xi) + std::abs(r.f_eta)) : g * std::abs(r.f_eta);
    r.feasible = r.lhs_gap <= r.bound + 10.0 * cfg.abs_tol;
    std::ostringstream os;
    os.precision(6);
    os << "xi=" << xi.label() << "; eta=" << eta.label() << "; t=" << t;
    r.sample = os.str();
    return r;
}

bool WStarReport::monotone_from(int k0, double slack) const {
    for (std::size_t k = static_cast<std::size_t>(std::max(k0, 1)); k < sup_gaps.size(); ++k)
        if (sup_gaps[k] > sup_gaps[k - 1] + slack) return false;
    return true;
}

WStarReport sample_w_star_uniformity(const std::function<DemiDistribution(int)>& f_seq, const DemiDistribution& f,
                                     const std::vector<TestFunction>& B, int k_max) {
    std::vector<Complex> limit;
    limit.reserve(B.size());
    for (const auto& xi : B) limit.push_back(f(xi));
    WStarReport r;
    for (int k = 1; k <= k_max; ++k) {
        const DemiDistribution fk = f_seq(k);
        double sup = 0.0;
        for (std::size_t i = 0; i < B.size(); ++i) sup = std::max(sup, std::abs(fk(B[i]) - limit[i]));
        r.sup_gaps.push_back(sup);
    }
    return r;
}

}  // namespace demi
