#include "demi/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace demi {

namespace {

double parity(unsigned k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

DiffOperator::DiffOperator(std::vector<std::pair<Complex, unsigned>> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("differential operator needs at least one term");
    std::set<unsigned> seen;
    for (const auto& t : terms_)
        if (!seen.insert(t.second).second) throw std::invalid_argument("differential operator orders must be distinct");
}

std::string DiffOperator::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        const auto& [a, k] = terms_[i];
        if (a.imag() == 0.0) os << a.real(); else os << a;
        if (k > 0) os << "D" << k;
    }
    return os.str();
}

DemiDistribution derivative_functional(const DemiDistribution& f, unsigned k) {
    if (k == 0) return f;
    DemiDistribution::Info info = f.info();
    info.label = "D" + std::to_string(k) + "(" + f.label() + ")";
    info.nbhd = f.nbhd().derivative_shift(k);
    info.descriptor = {{"kind", "derivative"}, {"parameters", {{"k", k}, {"f", f.to_json()}}}};
    auto ev = f.evaluator();
    const double s = parity(k);
    return DemiDistribution([ev, k, s](const TestFunction& xi) { return ev(scale(s, derivative(xi, k))); },
                            std::move(info));
}

SpanElement derivative_functional(const SpanElement& f, unsigned k) {
    std::vector<std::pair<Complex, DemiDistribution>> t;
    for (const auto& [c, g] : f.terms()) t.emplace_back(c, derivative_functional(g, k));
    return SpanElement(std::move(t));
}

SpanElement apply_operator(const DiffOperator& P, const SpanElement& f) {
    std::vector<std::pair<Complex, DemiDistribution>> t;
    for (const auto& [a, k] : P.terms())
        for (const auto& [c, g] : f.terms()) t.emplace_back(a * c, derivative_functional(g, k));
    return SpanElement(std::move(t));
}

TestFunction apply_operator(const DiffOperator& P, const TestFunction& xi) {
    TestFunction acc = zero_function();
    for (const auto& [a, k] : P.terms()) acc = combine(1.0, acc, a, derivative(xi, k));
    return acc;
}

double compose_derivative_identity_check(const ScalarMap& h, const DemiDistribution& f, unsigned k,
                                         const std::vector<TestFunction>& samples) {
    const DemiDistribution lhs = derivative_functional(compose(h, f), k);
    const DemiDistribution rhs = compose(h, derivative_functional(f, k));
    double worst = 0.0;
    for (const auto& xi : samples) worst = std::max(worst, std::abs(lhs(xi) - rhs(xi)));
    return worst;
}

DemiDistribution multiply(const Multiplier& zeta, const DemiDistribution& f) {
    if (!f.space().is_compact() && !zeta.support() && !zeta.polynomial_growth())
        throw std::invalid_argument("multiplier " + zeta.label() + " is not a multiplier on S");
    if (zeta.constant_value() && *zeta.constant_value() == Complex(1.0)) return f;
    DemiDistribution::Info info = f.info();
    info.label = zeta.label() + "." + f.label();
    info.nbhd = f.nbhd().pulled_back([zeta](const TestFunction& eta) { return product(zeta, eta); },
                                     "*" + zeta.label());
    info.descriptor = {{"kind", "multiply"}, {"parameters", {{"zeta", zeta.label()}, {"f", f.to_json()}}}};
    auto ev = f.evaluator();
    return DemiDistribution([ev, zeta](const TestFunction& xi) { return ev(product(zeta, xi)); }, std::move(info));
}

DemiDistribution multiply(const TestFunction& zeta, const DemiDistribution& f) {
    return multiply(Multiplier::from_test_function(zeta), f);
}

SpanElement multiply(const Multiplier& zeta, const SpanElement& f) {
    std::vector<std::pair<Complex, DemiDistribution>> t;
    for (const auto& [c, g] : f.terms()) t.emplace_back(c, multiply(zeta, g));
    return SpanElement(std::move(t));
}

TestFunction normalized(const TestFunction& xi, const QuadratureConfig& cfg) {
    const Complex I = integrate(xi, cfg);
    if (std::abs(I) <= 1e-12) throw std::invalid_argument("cannot normalize " + xi.label() + ": integral vanishes");
    return scale(1.0 / I, xi);
}

TestFunction projection_A(const TestFunction& xi, const TestFunction& zeta, const QuadratureConfig& cfg) {
    if (std::abs(integrate(zeta, cfg) - 1.0) > 1e-8)
        throw std::invalid_argument("projection_A needs a normalized zeta");
    const Complex I = integrate(xi, cfg);
    if (I == Complex(0.0)) return xi;
    return combine(1.0, xi, -I, zeta).with_label("A(" + xi.label() + ")");
}

TestFunction primitive_T(const TestFunction& xi, const TestFunction& zeta, const QuadratureConfig& cfg) {
    if (!zeta.is_compact() || (!xi.is_zero() && !xi.is_compact()))
        throw std::invalid_argument("primitive_T is defined for compactly supported inputs only");
    const TestFunction a = projection_A(xi, zeta, cfg);
    if (a.is_zero()) return zero_function();
    return running_integral(a, *a.support(), cfg).with_label("T(" + xi.label() + ")");
}

DemiDistribution solve_homogeneous(const DemiDistribution& f0, const TestFunction& xi0, const QuadratureConfig& cfg) {
    if (!belongs_to(xi0, f0.space()))
        throw std::invalid_argument("xi0 must lie in the space of f0");
    DemiDistribution::Info info = f0.info();
    info.label = f0.label() + "[(int .)" + xi0.label() + "]";
    info.space = SpaceTag::schwartz();
    info.cfg = cfg;
    auto lift = [xi0, cfg](const TestFunction& eta) { return scale(integrate(eta, cfg), xi0); };
    info.nbhd = f0.nbhd().pulled_back(lift, "(int .)" + xi0.label());
    info.descriptor = {{"kind", "homogeneous_solution"}, {"parameters", {{"f0", f0.to_json()}, {"xi0", xi0.label()}}}};
    auto ev = f0.evaluator();
    return DemiDistribution([ev, lift](const TestFunction& xi) { return ev(lift(xi)); }, std::move(info));
}

DemiDistribution solve_inhomogeneous(const DemiDistribution& f, const TestFunction& zeta, const QuadratureConfig& cfg) {
    if (!zeta.is_compact()) throw std::invalid_argument("zeta must be compactly supported");
    const Complex c = integrate(zeta, cfg);
    if (std::abs(c) <= 1e-8) throw std::invalid_argument("zeta must have a nonzero integral");
    const TestFunction zn = scale(1.0 / c, zeta);

    DemiDistribution::Info info = f.info();
    info.label = "y[" + f.label() + ";" + zeta.label() + "]";
    info.space = f.space().kind() == SpaceTag::Kind::CompactA ? f.space() : SpaceTag::compact_union();
    info.cfg = cfg;
    auto minus_T = [zn, cfg](const TestFunction& xi) { return scale(-1.0, primitive_T(xi, zn, cfg)); };
    info.nbhd = f.nbhd().pulled_back(minus_T, "-T");
    info.descriptor = {{"kind", "inhomogeneous_solution"}, {"parameters", {{"f", f.to_json()}, {"zeta", zeta.label()}}}};
    auto ev = f.evaluator();
    return DemiDistribution([ev, minus_T](const TestFunction& xi) { return ev(minus_T(xi)); }, std::move(info));
}

SpanElement general_solution(const DemiDistribution& f, const DemiDistribution& f0, const TestFunction& xi0,
                             const TestFunction& zeta, const QuadratureConfig& cfg) {
    return SpanElement({{1.0, solve_homogeneous(f0, xi0, cfg)}, {1.0, solve_inhomogeneous(f, zeta, cfg)}});
}

double invariance_check_E1(const DemiDistribution& y, const TestFunction& xi, const TestFunction& eta,
                           const QuadratureConfig& cfg) {
    auto to_e1 = [&](const TestFunction& v) {
        return std::abs(integrate(v, cfg) - 1.0) <= 1e-14 ? v : normalized(v, cfg);
    };
    return std::abs(y(to_e1(xi)) - y(to_e1(eta)));
}

std::vector<Interval> estimate_support(const DemiDistribution& f, Interval window, double resolution,
                                       std::vector<double> probe_scales, double tol) {
    if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
    if (probe_scales.empty()) throw std::invalid_argument("need at least one probe scale");
    for (double h : probe_scales)
        if (!(h > 0.0)) throw std::invalid_argument("probe scales must be positive");
    std::sort(probe_scales.begin(), probe_scales.end(), std::greater<>());

    const int n = static_cast<int>(std::floor(window.width() / resolution + 1e-9)) + 1;
    auto centre = [&](int i) { return window.lo + i * resolution; };
    auto hit = [&](int i, double h) {
        const TestFunction probe = make_bump(centre(i), h);
        if (!belongs_to(probe, f.space())) return false;
        return std::abs(f(probe)) > tol;
    };

    // Runs of consecutive detected indices.
    auto runs = [](const std::vector<int>& idx) {
        std::vector<std::pair<int, int>> out;
        for (int i : idx) {
            if (!out.empty() && i == out.back().second + 1) out.back().second = i;
            else out.emplace_back(i, i);
        }
        return out;
    };

    std::vector<int> detected;
    for (int i = 0; i < n; ++i)
        if (hit(i, probe_scales.front())) detected.push_back(i);

    for (std::size_t s = 1; s < probe_scales.size(); ++s) {
        std::vector<int> refined;
        for (const auto& [a, b] : runs(detected)) {
            std::vector<int> finer;
            for (int i = a; i <= b; ++i)
                if (hit(i, probe_scales[s])) finer.push_back(i);
            if (finer.empty()) {
                for (int i = a; i <= b; ++i) refined.push_back(i);
            } else {
                refined.insert(refined.end(), finer.begin(), finer.end());
            }
        }
        detected = std::move(refined);
    }

    std::vector<Interval> out;
    for (const auto& [a, b] : runs(detected)) out.push_back({centre(a), centre(b)});
    return out;
}

}  // namespace demi
