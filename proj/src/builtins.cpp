#include <cmath>
#include <numbers>
#include <sstream>

#include "demi/demidist.hpp"

namespace demi {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string num(Complex v) {
    if (v.imag() == 0.0) return num(v.real());
    return "(" + num(v.real()) + (v.imag() < 0 ? "" : "+") + num(v.imag()) + "i)";
}

}  // namespace

DemiDistribution regular(const Multiplier& g, const QuadratureConfig& cfg) {
    DemiDistribution::Info info;
    info.label = "regular(" + g.label() + ")";
    info.cls = ClassTag::Linear;
    info.space = g.polynomial_growth() || g.support() ? SpaceTag::schwartz() : SpaceTag::compact_union();
    info.descriptor = {{"kind", "regular"}, {"parameters", {{"g", g.label()}}}};
    info.cfg = cfg;
    return DemiDistribution([g, cfg](const TestFunction& xi) { return integrate(product(g, xi), cfg); },
                            std::move(info));
}

DemiDistribution abs_regular(const Multiplier& g, const QuadratureConfig& cfg) {
    DemiDistribution::Info info;
    info.label = "[" + g.label() + "]";
    info.cls = ClassTag::K;
    info.gamma = GammaFn::identity();
    info.space = g.polynomial_growth() || g.support() ? SpaceTag::schwartz() : SpaceTag::compact_union();
    info.descriptor = {{"kind", "abs_regular"}, {"parameters", {{"g", g.label()}}}};
    info.cfg = cfg;
    return DemiDistribution(
        [g, cfg](const TestFunction& xi) -> Complex {
            const TestFunction p = product(g, xi);
            if (p.is_zero()) return 0.0;
            return integrate_composed(p, [](Complex v) { return Complex(std::abs(v)); }, cfg).value;
        },
        std::move(info));
}

DemiDistribution sin_abs(const QuadratureConfig& cfg) {
    DemiDistribution::Info info;
    info.label = "sin_abs";
    info.cls = ClassTag::K;
    info.gamma = GammaFn::linear(std::numbers::pi / 2.0);
    info.space = SpaceTag::compact_a(1.0);
    info.nbhd = Neighborhood::ball(0, 1.0, SpaceTag::compact_a(1.0));
    info.real_field = true;
    info.descriptor = {{"kind", "sin_abs"}, {"parameters", Json::object()}};
    info.cfg = cfg;
    return DemiDistribution(
        [cfg](const TestFunction& xi) -> Complex {
            if (xi.is_zero()) return 0.0;
            return integrate_composed(xi, [](Complex v) { return Complex(std::abs(std::sin(v))); }, cfg).value;
        },
        std::move(info));
}

DemiDistribution exp_abs(const QuadratureConfig& cfg) {
    DemiDistribution::Info info;
    info.label = "exp_abs";
    info.cls = ClassTag::L;
    info.gamma = GammaFn::linear(std::numbers::e);
    info.space = SpaceTag::schwartz();
    info.nbhd = Neighborhood::ball(0, 1.0, SpaceTag::schwartz());
    info.descriptor = {{"kind", "exp_abs"}, {"parameters", Json::object()}};
    info.cfg = cfg;
    return DemiDistribution(
        [cfg](const TestFunction& xi) -> Complex {
            if (xi.is_zero()) return 0.0;
            auto r = integrate_composed(xi, [](Complex v) { return Complex(std::expm1(std::abs(v))); }, cfg,
                                        Interval{-1.0, 1.0});
            return Complex(0.0, 1.0) * r.value;
        },
        std::move(info));
}

DemiDistribution dirac() {
    DemiDistribution::Info info;
    info.label = "delta";
    info.descriptor = {{"kind", "dirac"}, {"parameters", Json::object()}};
    return DemiDistribution([](const TestFunction& xi) { return xi(0.0); }, std::move(info));
}

DemiDistribution dirac_derivative(unsigned k) {
    if (k == 0) return dirac();
    DemiDistribution::Info info;
    info.label = "D" + std::to_string(k) + "delta";
    info.descriptor = {{"kind", "dirac_derivative"}, {"parameters", {{"k", k}}}};
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return DemiDistribution([k, sign](const TestFunction& xi) { return sign * xi.value(0.0, k); }, std::move(info));
}

DemiDistribution scaled(Complex t, const DemiDistribution& f) {
    DemiDistribution::Info info = f.info();
    info.label = num(t) + "*" + f.label();
    info.descriptor = {{"kind", "scaled"}, {"parameters", {{"t", num(t)}, {"f", f.to_json()}}}};
    auto ev = f.evaluator();
    return DemiDistribution([t, ev](const TestFunction& xi) { return t * ev(xi); }, std::move(info));
}

ScalarMap ScalarMap::abs() {
    return {"|z|", [](Complex z) { return Complex(std::abs(z)); }, ClassTag::K, GammaFn::identity(),
            std::numeric_limits<double>::infinity(), false};
}

ScalarMap ScalarMap::sin_abs() {
    return {"sin|z|", [](Complex z) { return Complex(std::sin(std::abs(z))); }, ClassTag::K,
            GammaFn::linear(std::numbers::pi / 2.0), 1.0, false};
}

ScalarMap ScalarMap::exp_abs_minus_one() {
    return {"e^|z|-1", [](Complex z) { return Complex(std::expm1(std::abs(z))); }, ClassTag::L,
            GammaFn::linear(std::numbers::e * std::numbers::e), 1.0, false};
}

ScalarMap ScalarMap::sine() {
    return {"sin", [](Complex z) { return std::sin(z); }, ClassTag::K, GammaFn::linear(std::numbers::pi / 2.0), 1.0,
            true};
}

ScalarMap ScalarMap::custom(std::string name, std::function<Complex(Complex)> fn, ClassTag cls, GammaFn gamma,
                            double eps, bool real_only) {
    if (!fn) throw std::invalid_argument("scalar map needs a function");
    if (!(eps > 0.0)) throw std::invalid_argument("scalar map radius must be positive");
    return {std::move(name), std::move(fn), cls, std::move(gamma), eps, real_only};
}

DemiDistribution compose(const ScalarMap& h, const DemiDistribution& f) {
    const bool abs_of_l = h.name == "|z|" && f.class_tag() == ClassTag::L;
    if (f.class_tag() == ClassTag::L && !abs_of_l)
        throw std::invalid_argument("compose needs a Linear or K-class inner functional, got L: " + f.label());
    if (f.class_tag() == ClassTag::K && f.gamma().sup_on_unit_disk() > 1.0 + 1e-12)
        throw std::invalid_argument("compose needs |gamma_f| <= 1 on the unit disk: " + f.label());

    DemiDistribution::Info info;
    info.label = h.name + "o" + f.label();
    info.cls = abs_of_l ? ClassTag::L : (h.cls == ClassTag::Linear ? ClassTag::K : h.cls);
    info.gamma = GammaFn::compose(h.gamma, f.gamma());
    info.space = f.space();
    info.real_field = f.real_field() || h.real_only;
    info.cfg = f.quadrature();
    info.nbhd = f.nbhd();
    if (!abs_of_l && std::isfinite(h.eps)) {
        auto ev = f.evaluator();
        info.nbhd = info.nbhd.intersect(Neighborhood::functional_bound("|" + f.label() + "|", ev, h.eps));
    }
    info.descriptor = {{"kind", "compose"}, {"parameters", {{"h", h.name}, {"f", f.to_json()}}}};
    auto ev = f.evaluator();
    auto hf = h.fn;
    return DemiDistribution([ev, hf](const TestFunction& xi) { return hf(ev(xi)); }, std::move(info));
}

}  // namespace demi
