#include "demi/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "demi/calculus.hpp"
#include "demi/convolution.hpp"
#include "demi/fourier.hpp"

namespace demi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kConvergenceKMax = 100;
constexpr int kConvergenceMonotoneFrom = 5;

using Outcomes = std::vector<SampleOutcome>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt(Complex c) {
    if (c.imag() == 0.0) return fmt(c.real());
    return "(" + fmt(c.real()) + "," + fmt(c.imag()) + ")";
}

double excess(const WitnessReport& r) { return std::max(0.0, r.lhs_gap - r.bound); }

// Sup of |a - b| on a uniform grid over w.
double sup_gap(const std::function<Complex(double)>& a, const std::function<Complex(double)>& b, Interval w,
               int points = 401) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = w.lo + w.width() * i / (points - 1);
        worst = std::max(worst, std::abs(a(x) - b(x)));
    }
    return worst;
}

double sup_gap(const TestFunction& a, const TestFunction& b, Interval w, int points = 401) {
    return sup_gap([&](double x) { return a(x); }, [&](double x) { return b(x); }, w, points);
}

// Support of a compact sample, or a window holding the bulk of a Schwartz one.
Interval window(const TestFunction& xi, const QuadratureConfig&) {
    if (xi.is_compact()) return *xi.support();
    return {-6.0, 6.0};
}

// Compact sample with integral bounded away from 0.
TestFunction with_mass(Sampler& s, const QuadratureConfig& cfg) {
    for (;;) {
        TestFunction xi = s.compact_unit();
        if (std::abs(integrate(xi, cfg)) > 0.1) return xi;
    }
}

TestFunction unit_bump() { return make_bump(0.0, 1.0).with_label("bump(0,1)"); }

TestFunction second_zeta() {
    return combine(1.0, make_bump(0.5, 0.4), 0.5, make_bump(-0.6, 0.3)).with_label("bump(0.5,0.4)+0.5bump(-0.6,0.3)");
}

DemiDistribution reg_cos(const QuadratureConfig& cfg) { return regular(Multiplier::cosine(1.0, 0.0), cfg); }
DemiDistribution reg_one(const QuadratureConfig& cfg) { return regular(Multiplier::constant(1.0), cfg); }
DemiDistribution abs_one(const QuadratureConfig& cfg) { return abs_regular(Multiplier::constant(1.0), cfg); }

struct Named {
    DemiDistribution f;
    bool compact_only = false;  // domain restricted to D_1
};

std::vector<Named> builtin_family(const QuadratureConfig& cfg) {
    return {{dirac()},
            {dirac_derivative(1)},
            {reg_one(cfg)},
            {reg_cos(cfg)},
            {abs_one(cfg)},
            {sin_abs(cfg), true},
            {exp_abs(cfg)},
            {compose(ScalarMap::abs(), reg_cos(cfg))},
            {sine_of_mean(cfg)}};
}

Outcomes feasibility(const DemiDistribution& f, ClassTag cls, const CheckContext& c, Sampler& s) {
    Outcomes out;
    for (int i = 0; i < c.n; ++i) {
        const TestFunction xi = s.for_space(f.space());
        const TestFunction eta = s.inside(f);
        const Complex t = s.scalar_for(f);
        const WitnessReport r = check_demi_linearity(f, xi, eta, t, cls);
        out.push_back({excess(r), r.sample + "; t=" + fmt(t)});
    }
    return out;
}

// Residual of a convergence family: gap at k_max, or 1 when the gaps fail to
// decrease after k0.
SampleOutcome convergence_outcome(const std::vector<double>& gaps, bool monotone, const std::string& family) {
    const double last = gaps.back();
    std::string d = family + "; gap(" + std::to_string(gaps.size()) + ")=" + fmt(last);
    if (!monotone) {
        for (std::size_t k = kConvergenceMonotoneFrom; k < gaps.size(); ++k)
            if (gaps[k] > gaps[k - 1] + 1e-9) {
                d += "; increase at k=" + std::to_string(k + 1);
                break;
            }
        return {std::max(last, 1.0), d};
    }
    return {last, d};
}

std::vector<TestFunction> convergence_set(Sampler& s) {
    std::vector<TestFunction> B;
    for (int i = 0; i < 4; ++i) B.push_back(s.compact_unit());
    B.push_back(make_hermite_gaussian(1, 0.2, 0.6).with_label("hg1(0.2,0.6)"));
    return B;
}

// Suites ------------------------------------------------------------------------

Suite demi_suite() {
    Suite s{"demi", {"demi-linearity"}, "Demi-linearity bounds, example functionals, spans and control functions", {}};
    s.checks.push_back({"demi-abs-regular-K", "|[g](xi+t eta) - [g](xi)| <= |t| [g](eta)", 1e-8, 0,
                        [](const CheckContext& c, Sampler& r) { return feasibility(abs_one(c.cfg), ClassTag::K, c, r); }});
    s.checks.push_back({"demi-sin-abs-K", "|f(xi+t eta) - f(xi)| <= (pi/2)|t| f(eta), ||eta||_0 < 1", 1e-8, 0,
                        [](const CheckContext& c, Sampler& r) { return feasibility(sin_abs(c.cfg), ClassTag::K, c, r); }});
    s.checks.push_back({"demi-exp-abs-L", "|g(xi+t eta) - g(xi)| <= e|t| (|g(xi)| + |g(eta)|), sup|eta| < 1", 1e-8, 0,
                        [](const CheckContext& c, Sampler& r) { return feasibility(exp_abs(c.cfg), ClassTag::L, c, r); }});
    s.checks.push_back({"demi-compose-abs-K", "|z| o regular(cos): K-class with gamma(t) = t", 1e-8, 0,
                        [](const CheckContext& c, Sampler& r) {
                            return feasibility(compose(ScalarMap::abs(), reg_cos(c.cfg)), ClassTag::K, c, r);
                        }});
    s.checks.push_back({"demi-regular-linear-gap", "linear f: |f(xi+t eta) - f(xi)| = |t||f(eta)|", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = reg_cos(c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any(), eta = r.any();
                                const Complex t = r.unit_disk();
                                const WitnessReport w = check_demi_linearity(f, xi, eta, t, ClassTag::K);
                                out.push_back({std::abs(w.lhs_gap - std::abs(t) * std::abs(w.f_eta)), w.sample});
                            }
                            return out;
                        }});
    s.checks.push_back({"demi-nonlinearity-witness", "f(xi) = [1]((int xi) xi0): f(xi0 - xi0) = 0, f(xi0) + f(-xi0) = 2 I0^2", 1e-8, 1,
                        [](const CheckContext& c, Sampler&) {
                            QuadratureConfig tight = c.cfg;
                            tight.abs_tol = tight.rel_tol = 1e-13;
                            const Complex I0 = integrate(unit_bump(), tight);
                            const TestFunction b = unit_bump();
                            const DemiDistribution f = solve_homogeneous(abs_one(c.cfg), b, c.cfg);
                            const Complex cancelled = f(combine(1.0, b, -1.0, b));
                            const Complex sum = f(b) + f(scale(-1.0, b));
                            double res = std::max(std::abs(cancelled), std::abs(sum - 2.0 * I0 * I0));
                            if (!(sum.real() > 0.3)) res = std::max(res, 1.0);
                            return Outcomes{{res, "f(0)=" + fmt(cancelled) + "; f(xi0)+f(-xi0)=" + fmt(sum)}};
                        }});
    s.checks.push_back({"demi-span-linearity", "(a f + b g)(xi) = a f(xi) + b g(xi)", 1e-12, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = abs_one(c.cfg), g = dirac();
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const Complex a = r.unit_disk(), b = r.unit_disk();
                                const TestFunction xi = r.any();
                                const SpanElement span({{a, f}, {b, g}});
                                out.push_back({std::abs(span(xi) - (a * f(xi) + b * g(xi))), xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"demi-zero", "f(0) = 0 for every built-in", 1e-10, 9,
                        [](const CheckContext& c, Sampler&) {
                            const auto fam = builtin_family(c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& f = fam[static_cast<std::size_t>(i) % fam.size()].f;
                                out.push_back({std::abs(f(zero_function())), f.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"demi-gamma-admissible", "|t| <= |gamma(t)|, gamma(0) = 0, |gamma| monotone on |t| <= 1", 0.0, 5,
                        [](const CheckContext& c, Sampler&) {
                            const std::vector<GammaFn> gs{GammaFn::identity(), GammaFn::linear(kPi / 2.0),
                                                          GammaFn::linear(std::numbers::e),
                                                          GammaFn::linear(std::exp(2.0)), GammaFn::sqrt_abs()};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const GammaFn& g = gs[static_cast<std::size_t>(i) % gs.size()];
                                const GammaCheck k = check_gamma(g);
                                const bool ok = k.dominates_identity && k.vanishes_at_zero && k.monotone;
                                out.push_back({ok ? 0.0 : 1.0, g.name()});
                            }
                            return out;
                        }});
    return s;
}

Suite diff_suite() {
    Suite s{"diff", {"differentiation"}, "Dual derivatives, composition exchange and multipliers", {}};
    s.checks.push_back({"diff-dual-derivative", "(D^k f)(xi) = f((-1)^k xi^(k))", 1e-12, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<DemiDistribution> fs{dirac(), abs_one(c.cfg), exp_abs(c.cfg), reg_cos(c.cfg)};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& f = fs[static_cast<std::size_t>(i) % fs.size()];
                                const unsigned k = static_cast<unsigned>(r.integer(1, 3));
                                const TestFunction xi = scale(1e-3, r.any());
                                const Complex lhs = derivative_functional(f, k)(xi);
                                const Complex rhs = f(scale(k % 2 ? -1.0 : 1.0, derivative(xi, k)));
                                out.push_back({std::abs(lhs - rhs), f.label() + "; k=" + std::to_string(k) + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"diff-mixed-order", "D^k D^j f = D^(j+k) f", 1e-10, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<DemiDistribution> fs{abs_one(c.cfg), exp_abs(c.cfg), dirac()};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& f = fs[static_cast<std::size_t>(i) % fs.size()];
                                const unsigned j = static_cast<unsigned>(r.integer(1, 2)), k = static_cast<unsigned>(r.integer(1, 2));
                                const TestFunction xi = r.any();
                                // Small arguments keep e^{|xi^(k)|} finite for exp_abs.
                                const TestFunction small = scale(1e-3, xi);
                                const Complex a = derivative_functional(derivative_functional(f, j), k)(small);
                                const Complex b = derivative_functional(f, j + k)(small);
                                out.push_back({std::abs(a - b), f.label() + "; j=" + std::to_string(j) + ",k=" + std::to_string(k)});
                            }
                            return out;
                        }});
    s.checks.push_back({"diff-integration-by-parts", "(D regular(g))(xi) = regular(g')(xi)", 1e-7, 0,
                        [](const CheckContext& c, Sampler& r) {
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const double w = r.uniform(0.5, 3.0), ph = r.uniform(0.0, 2.0 * kPi);
                                const Multiplier g = Multiplier::cosine(w, ph);
                                const TestFunction xi = r.any();
                                const Complex lhs = derivative_functional(regular(g, c.cfg), 1)(xi);
                                const Complex rhs = regular(g.derivative(1), c.cfg)(xi);
                                out.push_back({std::abs(lhs - rhs), g.label() + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"diff-compose-exchange", "D^k(h o f) = h o D^k f", 1e-12, 0,
                        [](const CheckContext& c, Sampler& r) {
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                double res;
                                std::string d;
                                switch (i % 3) {
                                    case 0:
                                        res = compose_derivative_identity_check(ScalarMap::abs(), reg_cos(c.cfg), 1, {xi});
                                        d = "|z|, regular(cos), k=1";
                                        break;
                                    case 1:
                                        res = compose_derivative_identity_check(ScalarMap::sin_abs(), abs_one(c.cfg), 2, {xi});
                                        d = "sin|z|, [1], k=2";
                                        break;
                                    default:
                                        res = compose_derivative_identity_check(ScalarMap::sin_abs(), abs_one(c.cfg), 0, {xi});
                                        d = "sin|z|, [1], k=0";
                                }
                                out.push_back({res, d + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"diff-multiplier", "(x^2 regular(1))(xi) = integral x^2 xi; (x delta)(xi) = 0", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = multiply(Multiplier::polynomial({0.0, 0.0, 1.0}), reg_one(c.cfg));
                            const DemiDistribution xd = multiply(Multiplier::polynomial({0.0, 1.0}), dirac());
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                const Interval w = xi.integration_range(c.cfg);
                                const Complex direct = integrate_interval([&](double x) { return x * x * xi(x); }, w.lo, w.hi,
                                                                          c.cfg, static_cast<int>(std::ceil(w.width() / 2.0)));
                                out.push_back({std::max(std::abs(f(xi) - direct), std::abs(xd(xi))), xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"diff-abs-derivative", "(D^k [1])(xi) = integral |xi^(k)|", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = abs_one(c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const unsigned k = static_cast<unsigned>(r.integer(1, 2));
                                const TestFunction xi = r.any();
                                const Complex direct =
                                    integrate_composed(derivative(xi, k), [](Complex z) { return Complex(std::abs(z)); }, c.cfg).value;
                                out.push_back({std::abs(derivative_functional(f, k)(xi) - direct), xi.label()});
                            }
                            return out;
                        }});
    return s;
}

Suite ode_suite() {
    Suite s{"ode", {}, "Solutions of y' = 0 and y' = f, the projection A and the primitive T", {}};
    s.checks.push_back({"ode-homogeneous-kernel", "y(xi) = f0((int xi) xi0) vanishes when int xi = 0", 1e-8, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const TestFunction b = unit_bump();
                            const std::vector<DemiDistribution> ys{solve_homogeneous(abs_one(c.cfg), b, c.cfg),
                                                                   solve_homogeneous(exp_abs(c.cfg), b, c.cfg),
                                                                   solve_homogeneous(reg_cos(c.cfg), b, c.cfg)};
                            const TestFunction zn = normalized(b, c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction eta = r.compact();
                                const TestFunction xi = i % 2 ? derivative(eta, 1) : projection_A(eta, zn, c.cfg);
                                double res = 0.0;
                                for (const auto& y : ys) res = std::max(res, std::abs(y(xi)));
                                out.push_back({res, (i % 2 ? "D(" : "A(") + eta.label() + ")"});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-homogeneous-closed-form", "f0 = [1], xi0 = bump: y(xi) = |int xi| I0; f0 = regular(1): y = c int xi", 1e-8, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const TestFunction b = unit_bump();
                            const Complex I0 = integrate(b, c.cfg);
                            const DemiDistribution y = solve_homogeneous(abs_one(c.cfg), b, c.cfg);
                            const TestFunction x0 = scale(2.5, make_bump(0.3, 0.5));
                            const Complex cst = integrate(x0, c.cfg);
                            const DemiDistribution y1 = solve_homogeneous(reg_one(c.cfg), x0, c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                const Complex m = integrate(xi, c.cfg);
                                const double res = std::max(std::abs(y(xi) - std::abs(m) * I0), std::abs(y1(xi) - cst * m));
                                out.push_back({res, xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-inhomogeneous", "y_zeta(-xi') = f(xi), y_zeta(xi) = f(-T(xi))", 1e-7, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<DemiDistribution> fs{abs_one(c.cfg), dirac(), reg_cos(c.cfg), sin_abs(c.cfg)};
                            const std::vector<TestFunction> zetas{unit_bump(), second_zeta()};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& f = fs[static_cast<std::size_t>(i) % fs.size()];
                                const TestFunction xi = r.compact_unit();
                                const Complex target = f(xi);
                                double res = 0.0;
                                for (const auto& z : zetas) {
                                    const DemiDistribution y = solve_inhomogeneous(f, z, c.cfg);
                                    res = std::max(res, std::abs(y(scale(-1.0, derivative(xi, 1))) - target));
                                }
                                out.push_back({res, f.label() + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-invariance-E1", "y constant on E1 = {int xi = 1}", 1e-7, 10,
                        [](const CheckContext& c, Sampler& r) {
                            const TestFunction b = unit_bump();
                            const std::vector<DemiDistribution> ys{solve_homogeneous(abs_one(c.cfg), b, c.cfg),
                                                                   solve_homogeneous(sin_abs(c.cfg), b, c.cfg)};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = with_mass(r, c.cfg), eta = with_mass(r, c.cfg);
                                double res = 0.0;
                                for (const auto& y : ys) res = std::max(res, invariance_check_E1(y, xi, eta, c.cfg));
                                out.push_back({res, xi.label() + " ~ " + eta.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-general-solution", "g = g0 + y_zeta satisfies g' = f", 1e-7, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<DemiDistribution> fs{abs_one(c.cfg), dirac(), reg_cos(c.cfg)};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& f = fs[static_cast<std::size_t>(i) % fs.size()];
                                const SpanElement g = general_solution(f, abs_one(c.cfg), unit_bump(), second_zeta(), c.cfg);
                                const TestFunction xi = r.compact();
                                out.push_back({std::abs(derivative_functional(g, 1)(xi) - f(xi)), f.label() + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-projection-mean", "integral A(xi) = 0", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<TestFunction> zetas{normalized(unit_bump(), c.cfg), normalized(second_zeta(), c.cfg)};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                double res = 0.0;
                                for (const auto& z : zetas) res = std::max(res, std::abs(integrate(projection_A(xi, z, c.cfg), c.cfg)));
                                out.push_back({res, xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-primitive-inverts-derivative", "T(xi') = xi on the support window", 1e-7, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<TestFunction> zetas{normalized(unit_bump(), c.cfg), normalized(second_zeta(), c.cfg)};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.compact();
                                double res = 0.0;
                                for (const auto& z : zetas) {
                                    const TestFunction T = primitive_T(derivative(xi, 1), z, c.cfg);
                                    res = std::max(res, sup_gap(T, xi, hull(*xi.support(), *z.support())));
                                }
                                out.push_back({res, xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-projection-fixes-derivatives", "A(xi^(k)) = xi^(k), k = 1, 2, 3", 0.0, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const TestFunction z = normalized(unit_bump(), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                double res = 0.0;
                                for (unsigned k = 1; k <= 3; ++k) {
                                    const TestFunction d = derivative(xi, k);
                                    res = std::max(res, sup_gap(projection_A(d, z, c.cfg), d, window(xi, c.cfg)));
                                }
                                out.push_back({res, xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-primitive-derivative", "d/dx T(xi) = A(xi)", 0.0, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const TestFunction z = normalized(second_zeta(), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.compact();
                                const TestFunction dT = derivative(primitive_T(xi, z, c.cfg), 1);
                                const TestFunction A = projection_A(xi, z, c.cfg);
                                out.push_back({sup_gap(dT, A, hull(*xi.support(), *z.support())), xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"ode-projection-linearity", "A(xi + t eta) = A(xi) + t A(eta)", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const TestFunction z = normalized(unit_bump(), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any(), eta = r.any();
                                const Complex t = r.unit_disk();
                                const TestFunction lhs = projection_A(combine(1.0, xi, t, eta), z, c.cfg);
                                const TestFunction rhs = combine(1.0, projection_A(xi, z, c.cfg), t, projection_A(eta, z, c.cfg));
                                out.push_back({sup_gap(lhs, rhs, hull(window(xi, c.cfg), window(eta, c.cfg))),
                                               xi.label() + "; " + eta.label()});
                            }
                            return out;
                        }});
    return s;
}

Suite fourier_suite() {
    Suite s{"fourier", {}, "Transforms of test functions and the 2pi duality for functionals", {}};
    s.checks.push_back({"fourier-gaussian-closed-form", "F(exp(-x^2/2))(sigma) = sqrt(2pi) exp(-sigma^2/2)", 1e-7, 50,
                        [](const CheckContext& c, Sampler&) {
                            const TransformFunction z = fourier_test(make_gaussian(0.0, std::sqrt(2.0)), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const double sg = c.n > 1 ? -5.0 + 10.0 * i / (c.n - 1) : 0.0;
                                const double exact = std::sqrt(2.0 * kPi) * std::exp(-sg * sg / 2.0);
                                out.push_back({std::abs(z(sg) - exact), "sigma=" + fmt(sg)});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-duality", "F(f)(F(xi)) = 2pi f(xi) for every built-in f", 1e-6, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const auto fam = builtin_family(c.cfg);
                            std::vector<TransformFunctional> Ff;
                            for (const auto& n : fam) Ff.push_back(fourier_functional(n.f, c.cfg));
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const bool compact = i % 2 == 0;
                                const TestFunction xi = compact ? r.compact_unit() : r.schwartz();
                                const TransformFunction z = fourier_test(xi, c.cfg);
                                double res = 0.0;
                                std::string worst;
                                for (std::size_t j = 0; j < fam.size(); ++j) {
                                    if (fam[j].compact_only && !compact) continue;
                                    const double d = std::abs(Ff[j](z) - 2.0 * kPi * fam[j].f(xi));
                                    if (d >= res) {
                                        res = d;
                                        worst = fam[j].f.label();
                                    }
                                }
                                out.push_back({res, worst + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-sine-of-mean", "F(f)(F(xi)) = 2pi sin(e^-1 int xi) for f(xi) = sin(e^-1 int xi)", 1e-6, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const TransformFunctional Ff = fourier_functional(sine_of_mean(c.cfg), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                const Complex m = integrate(xi, c.cfg);
                                const Complex closed = 2.0 * kPi * std::sin(std::exp(-1.0) * m);
                                out.push_back({std::abs(Ff(fourier_test(xi, c.cfg)) - closed), xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-null-identity", "F(f)(i sigma zeta(sigma)) = 0 for homogeneous f", 1e-6, 10,
                        [](const CheckContext& c, Sampler& r) {
                            const TransformFunctional Ff = fourier_functional(sine_of_mean(c.cfg), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = i % 2 ? r.compact() : r.schwartz();
                                out.push_back({null_identity_check(Ff, fourier_test(xi, c.cfg)), "F(" + xi.label() + ")"});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-roundtrip", "F^-1 F xi = xi", 1e-6, 20,
                        [](const CheckContext& c, Sampler& r) {
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = i % 2 ? r.compact() : r.schwartz();
                                const TestFunction back = inverse_fourier_test(fourier_test(xi, c.cfg), c.cfg);
                                const Interval w = xi.is_compact() ? Interval{xi.support()->lo - 0.5, xi.support()->hi + 0.5}
                                                                   : Interval{-5.0, 5.0};
                                out.push_back({sup_gap(back, xi, w), xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-linearity", "F(xi + t eta) = F(xi) + t F(eta); F(a f + b h) = a F(f) + b F(h)", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any(), eta = r.any();
                                const Complex t = r.unit_disk();
                                const TransformFunction lhs = fourier_test(combine(1.0, xi, t, eta), c.cfg);
                                const TransformFunction a = fourier_test(xi, c.cfg), b = fourier_test(eta, c.cfg);
                                double res = 0.0;
                                for (int j = 0; j < 25; ++j) {
                                    const double sg = r.uniform(-8.0, 8.0);
                                    res = std::max(res, std::abs(lhs(sg) - (a(sg) + t * b(sg))));
                                }
                                out.push_back({res, xi.label() + "; " + eta.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-span", "F(a f + b h)(zeta) = a F(f)(zeta) + b F(h)(zeta)", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = abs_one(c.cfg), h = dirac();
                            const TransformFunctional Ff = fourier_functional(f, c.cfg), Fh = fourier_functional(h, c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const Complex a = r.unit_disk(), b = r.unit_disk();
                                const TransformFunction z = fourier_test(r.any(), c.cfg);
                                const TransformFunctional Fs = fourier_functional(SpanElement({{a, f}, {b, h}}), c.cfg);
                                out.push_back({std::abs(Fs(z) - (a * Ff(z) + b * Fh(z))), z.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-demi-linearity", "F(f) satisfies the bound of f with the same gamma on F(U)", 1e-7, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<std::pair<DemiDistribution, ClassTag>> fs{
                                {abs_one(c.cfg), ClassTag::K}, {sin_abs(c.cfg), ClassTag::K}, {exp_abs(c.cfg), ClassTag::L}};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& [f, cls] = fs[static_cast<std::size_t>(i) % fs.size()];
                                const TransformFunctional Ff = fourier_functional(f, c.cfg);
                                const TestFunction xi = r.for_space(f.space()), eta = r.inside(f);
                                const Complex t = r.scalar_for(f);
                                const WitnessReport w =
                                    check_demi_linearity(Ff, fourier_test(xi, c.cfg), fourier_test(eta, c.cfg), t, cls);
                                out.push_back({excess(w), f.label() + "; " + w.sample});
                            }
                            return out;
                        }});
    s.checks.push_back({"fourier-delta-vs-transform", "C delta(F(xi)) = C int xi", 1e-9, 0,
                        [](const CheckContext& c, Sampler& r) {
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const Complex C = r.unit_disk() * 2.0;
                                const TestFunction xi = r.any();
                                const auto [d, f] = delta_vs_transform_check(C, xi, c.cfg);
                                out.push_back({std::abs(d - C * integrate(xi, c.cfg)), "C=" + fmt(C) + "; " + xi.label()});
                            }
                            return out;
                        }});
    return s;
}

Suite conv_suite() {
    Suite s{"conv", {"convolution"}, "Convolution multipliers and their exchange identities", {}};
    s.checks.push_back({"conv-dirac-identities", "delta * xi = xi, (D^k delta) * xi = (-1)^k xi^(k), delta * f = f, D^k delta * f = D^k f", 0.0, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = abs_one(c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                const unsigned k = static_cast<unsigned>(r.integer(1, 3));
                                const auto dk = ConvolutionMultiplier::dirac_derivative(k);
                                const TestFunction expect = scale(k % 2 ? -1.0 : 1.0, derivative(xi, k));
                                double res = sup_gap(convolve_test(ConvolutionMultiplier::dirac(), xi), xi, window(xi, c.cfg));
                                res = std::max(res, sup_gap(convolve_test(dk, xi), expect, window(xi, c.cfg)));
                                res = std::max(res, std::abs(convolve_functional(ConvolutionMultiplier::dirac(), f)(xi) - f(xi)));
                                res = std::max(res, std::abs(convolve_functional(dk, f)(xi) - derivative_functional(f, k)(xi)));
                                out.push_back({res, "k=" + std::to_string(k) + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"conv-definition", "(f0 * xi)(x) = f0(xi(x + .))", 1e-9, 20,
                        [](const CheckContext& c, Sampler& r) {
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction g = make_bump(r.uniform(-0.5, 0.5), r.uniform(0.2, 0.8));
                                const auto f0 = ConvolutionMultiplier::compact_regular(g, c.cfg);
                                const TestFunction xi = r.any();
                                const double x = r.uniform(-2.0, 2.0);
                                out.push_back({std::abs(convolve_test(f0, xi)(x) - f0.apply(translate(xi, x))),
                                               "x=" + fmt(x) + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"conv-derivative-of-test", "D^k(f0 * xi) = f0 * D^k xi", 0.0, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.2, 0.5), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.compact();
                                const unsigned k = static_cast<unsigned>(r.integer(1, 3));
                                const TestFunction a = derivative(convolve_test(f0, xi), k);
                                const TestFunction b = convolve_test(f0, derivative(xi, k));
                                out.push_back({sup_gap(a, b, *a.support(), 41), "k=" + std::to_string(k) + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"conv-diffop-exchange", "P = 2 + 3D^2: (P(D) f0) * xi, D^k(f0 * f) = (D^k f0) * f = f0 * D^k f, P(D)(f0 * f) = f0 * P(D) f", 1e-8, 10,
                        [](const CheckContext& c, Sampler& r) {
                            const DiffOperator P({{2.0, 0}, {3.0, 2}});
                            const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.2, 0.5), c.cfg);
                            const SpanElement f(abs_one(c.cfg));
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const TestFunction xi = r.any();
                                out.push_back({diffop_exchange_check(P, f0, f, xi).max(), xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"conv-compose-exchange", "f0 * (h o f) = h o (f0 * f)", 1e-10, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<ScalarMap> hs{ScalarMap::abs(), ScalarMap::sin_abs(), ScalarMap::exp_abs_minus_one()};
                            const DemiDistribution f = reg_cos(c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const ScalarMap& h = hs[static_cast<std::size_t>(i) % hs.size()];
                                const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(r.uniform(-0.5, 0.5), 0.4), c.cfg);
                                const TestFunction xi = r.any();
                                const Complex a = convolve_functional(f0, compose(h, f))(xi);
                                const Complex b = compose(h, convolve_functional(f0, f))(xi);
                                out.push_back({std::abs(a - b), h.name + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"conv-scalar-compat", "t(f0 * xi) = (t f0) * xi; t(f0 * f) = f0 * (t f); t(f0 * f) = (t f0) * f for linear f", 1e-9, 20,
                        [](const CheckContext& c, Sampler& r) {
                            const std::vector<DemiDistribution> fs{abs_one(c.cfg), reg_cos(c.cfg)};
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const auto& f = fs[static_cast<std::size_t>(i) % fs.size()];
                                const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(r.uniform(-0.5, 0.5), 0.5), c.cfg);
                                const Complex t = r.unit_disk();
                                const TestFunction xi = r.compact();
                                const ScalarCompatResiduals s3 = scalar_compat_check(f0, f, t, xi);
                                const double res = std::max({s3.test_side, s3.functional_side, s3.linear_side.value_or(0.0)});
                                out.push_back({res, f.label() + "; t=" + fmt(t) + "; " + xi.label()});
                            }
                            return out;
                        }});
    s.checks.push_back({"conv-linear-in-f", "f0 * (f + t g) = f0 * f + t (f0 * g)", 1e-12, 0,
                        [](const CheckContext& c, Sampler& r) {
                            const DemiDistribution f = abs_one(c.cfg), g = dirac();
                            const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.1, 0.6), c.cfg);
                            Outcomes out;
                            for (int i = 0; i < c.n; ++i) {
                                const Complex t = r.unit_disk();
                                const TestFunction xi = r.compact();
                                const Complex lhs = convolve_functional(f0, SpanElement({{1.0, f}, {t, g}}))(xi);
                                const Complex rhs = convolve_functional(f0, f)(xi) + t * convolve_functional(f0, g)(xi);
                                out.push_back({std::abs(lhs - rhs), "t=" + fmt(t) + "; " + xi.label()});
                            }
                            return out;
                        }});
    return s;
}

Suite support_suite() {
    Suite s{"support", {}, "Numerical support probing with bump test functions", {}};
    s.checks.push_back({"support-dirac", "supp delta = {0}: one interval containing 0, width <= 0.5", 0.0, 1,
                        [](const CheckContext&, Sampler&) {
                            const auto est = estimate_support(dirac(), {-1.0, 1.0}, 0.05);
                            double res = 0.0;
                            std::string d = std::to_string(est.size()) + " interval(s)";
                            if (est.size() != 1) res = 1.0;
                            else {
                                const Interval iv = est.front();
                                d += ": [" + fmt(iv.lo) + "," + fmt(iv.hi) + "]";
                                if (!iv.contains(0.0)) res = 1.0;
                                res = std::max(res, iv.width() - 0.5);
                            }
                            return Outcomes{{std::max(res, 0.0), d}};
                        }});
    s.checks.push_back({"support-regular-window", "supp regular(g) = [2,3]: covered, nothing outside [1.5,3.5]", 0.0, 1,
                        [](const CheckContext& c, Sampler&) {
                            const TestFunction g = make_plateau(2.1, 2.9, 0.1, c.cfg);
                            const DemiDistribution f = regular(Multiplier::from_test_function(g), c.cfg);
                            const double res_step = 0.05;
                            const auto est = estimate_support(f, {0.0, 5.0}, res_step);
                            double uncovered = 1.0, outside = 0.0;
                            std::string d;
                            for (const auto& iv : est) {
                                d += "[" + fmt(iv.lo) + "," + fmt(iv.hi) + "]";
                                const double lo = std::max(iv.lo - res_step, 2.0), hi = std::min(iv.hi + res_step, 3.0);
                                if (hi > lo) uncovered -= hi - lo;
                                outside += std::max(0.0, 1.5 - iv.lo) + std::max(0.0, iv.hi - 3.5);
                            }
                            return Outcomes{{std::max(0.0, uncovered) + outside, d.empty() ? "empty" : d}};
                        }});
    s.checks.push_back({"support-zero", "f = 0 iff supp f is empty", 0.0, 1,
                        [](const CheckContext& c, Sampler&) {
                            const auto est = estimate_support(regular(Multiplier::constant(0.0), c.cfg), {-3.0, 3.0}, 0.05);
                            return Outcomes{{static_cast<double>(est.size()), std::to_string(est.size()) + " interval(s)"}};
                        }});
    return s;
}

Suite convergence_suite() {
    Suite s{"convergence", {}, "Uniform convergence on finite sets B for explicit sequences (k <= 100)", {}};
    auto family = [](std::string id, std::string anchor, double tol,
                     std::function<SampleOutcome(const QuadratureConfig&, const std::vector<TestFunction>&)> fn) {
        return CheckSpec{std::move(id), std::move(anchor), tol, 1,
                         [fn](const CheckContext& c, Sampler& r) {
                             const auto B = convergence_set(r);
                             return Outcomes{fn(c.cfg, B)};
                         }};
    };
    s.checks.push_back(family("wstar-linear-family", "f_k = regular(g(1 + 1/k)) -> regular(g)", 1e-4,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const auto seq = [&](int k) {
                                      return regular(Multiplier::cosine(1.0, 0.0).scaled(1.0 + 1.0 / k), cfg);
                                  };
                                  const WStarReport w = sample_w_star_uniformity(seq, reg_cos(cfg), B, kConvergenceKMax);
                                  return convergence_outcome(w.sup_gaps, w.monotone_from(kConvergenceMonotoneFrom, 1e-9),
                                                             "regular(cos (1+1/k))");
                              }));
    s.checks.push_back(family("wstar-composed-family", "f_k = sin|z| o regular(g(1 + 1/k)) -> sin|z| o regular(g)", 1e-4,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const auto seq = [&](int k) {
                                      return compose(ScalarMap::sin_abs(),
                                                     regular(Multiplier::cosine(1.0, 0.0).scaled(1.0 + 1.0 / k), cfg));
                                  };
                                  const WStarReport w =
                                      sample_w_star_uniformity(seq, compose(ScalarMap::sin_abs(), reg_cos(cfg)), B, kConvergenceKMax);
                                  return convergence_outcome(w.sup_gaps, w.monotone_from(kConvergenceMonotoneFrom, 1e-9),
                                                             "sin|regular(cos (1+1/k))|");
                              }));
    s.checks.push_back(family("wstar-constant", "f_k = f: every gap vanishes", 1e-12,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const DemiDistribution f = abs_one(cfg);
                                  const WStarReport w = sample_w_star_uniformity([&](int) { return f; }, f, B, kConvergenceKMax);
                                  return SampleOutcome{*std::max_element(w.sup_gaps.begin(), w.sup_gaps.end()), "[1]"};
                              }));
    s.checks.push_back(family("conv-mollifier-dirac", "g_k * delta -> delta with g_k = k bump(0,1/k)/I0", 1e-4,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const ContinuityReport rep = convolution_continuity_check(
                                      [&](int k) { return ConvolutionMultiplier::mollifier(k, cfg); },
                                      ConvolutionMultiplier::dirac(), [](int) { return dirac(); }, dirac(), B, kConvergenceKMax);
                                  return convergence_outcome(rep.diagonal, rep.monotone_from(kConvergenceMonotoneFrom, 1e-9),
                                                             "mollifier * delta");
                              }));
    s.checks.push_back(family("conv-mollifier-abs", "g_k * [1] -> [1]", 1e-4,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const DemiDistribution f = abs_one(cfg);
                                  const ContinuityReport rep = convolution_continuity_check(
                                      [&](int k) { return ConvolutionMultiplier::mollifier(k, cfg); },
                                      ConvolutionMultiplier::dirac(), [&](int) { return f; }, f, B, kConvergenceKMax);
                                  return convergence_outcome(rep.diagonal, rep.monotone_from(kConvergenceMonotoneFrom, 1e-9),
                                                             "mollifier * [1]");
                              }));
    s.checks.push_back(family("conv-joint-grid", "g_k * (sin|z| o regular(cos (1 + 1/m))) over k, m", 1e-4,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const auto gm = [&](int m) {
                                      return compose(ScalarMap::sin_abs(),
                                                     regular(Multiplier::cosine(1.0, 0.0).scaled(1.0 + 1.0 / m), cfg));
                                  };
                                  const ContinuityReport rep = convolution_continuity_check(
                                      [&](int k) { return ConvolutionMultiplier::mollifier(k, cfg); },
                                      ConvolutionMultiplier::dirac(), gm, compose(ScalarMap::sin_abs(), reg_cos(cfg)), B,
                                      kConvergenceKMax);
                                  SampleOutcome o = convergence_outcome(rep.diagonal, rep.monotone_from(kConvergenceMonotoneFrom, 1e-9),
                                                                        "mollifier * sin|regular(cos (1+1/m))|");
                                  o.description += rep.grid_monotone(1e-9) ? "; grid monotone" : "; grid not monotone";
                                  return o;
                              }));
    s.checks.push_back(family("conv-constant", "f_k = f0, g_m = g: every gap vanishes", 1e-12,
                              [](const QuadratureConfig& cfg, const std::vector<TestFunction>& B) {
                                  const auto f0 = ConvolutionMultiplier::mollifier(4, cfg);
                                  const DemiDistribution g = abs_one(cfg);
                                  const ContinuityReport rep = convolution_continuity_check(
                                      [&](int) { return f0; }, f0, [&](int) { return g; }, g, B, 10, {1, 5, 10});
                                  double worst = *std::max_element(rep.diagonal.begin(), rep.diagonal.end());
                                  for (const auto& row : rep.grid) worst = std::max(worst, *std::max_element(row.begin(), row.end()));
                                  return SampleOutcome{worst, "mollifier(4) * [1]"};
                              }));
    return s;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

// Config -------------------------------------------------------------------------

SuiteConfig SuiteConfig::from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> keys{"seed", "samples_per_check", "quadrature", "tolerance_overrides", "suites",
                                            "output_path"};
    static const std::set<std::string> qkeys{"abs_tol", "rel_tol", "max_subdivisions", "schwartz_truncation_radius",
                                             "seminorm_grid"};
    SuiteConfig c;
    for (const auto& [k, v] : j.items()) {
        if (!keys.count(k)) throw std::invalid_argument("unknown config key: " + k);
        if (k == "seed") c.seed = v.get<std::uint64_t>();
        else if (k == "samples_per_check") c.samples_per_check = v.get<int>();
        else if (k == "suites") c.suites = v.get<std::vector<std::string>>();
        else if (k == "output_path") c.output_path = v.get<std::string>();
        else if (k == "tolerance_overrides") c.tolerance_overrides = v.get<std::map<std::string, double>>();
        else if (k == "quadrature") {
            if (!v.is_object()) throw std::invalid_argument("quadrature must be an object");
            for (const auto& [qk, qv] : v.items()) {
                if (!qkeys.count(qk)) throw std::invalid_argument("unknown quadrature key: " + qk);
                if (qk == "abs_tol") c.quadrature.abs_tol = qv.get<double>();
                else if (qk == "rel_tol") c.quadrature.rel_tol = qv.get<double>();
                else if (qk == "max_subdivisions") c.quadrature.max_subdivisions = qv.get<int>();
                else if (qk == "schwartz_truncation_radius") c.quadrature.schwartz_truncation_radius = qv.get<double>();
                else c.quadrature.seminorm_grid = qv.get<int>();
            }
        }
    }
    return c;
}

Json SuiteConfig::to_json() const {
    Json j;
    j["seed"] = seed;
    j["samples_per_check"] = samples_per_check;
    j["quadrature"] = {{"abs_tol", quadrature.abs_tol},
                       {"rel_tol", quadrature.rel_tol},
                       {"max_subdivisions", quadrature.max_subdivisions},
                       {"schwartz_truncation_radius", quadrature.schwartz_truncation_radius},
                       {"seminorm_grid", quadrature.seminorm_grid}};
    j["tolerance_overrides"] = tolerance_overrides;
    j["suites"] = suites;
    j["output_path"] = output_path;
    return j;
}

void SuiteConfig::validate() const {
    if (samples_per_check < 1) throw std::invalid_argument("samples_per_check must be >= 1");
    quadrature.validate();
    for (const auto& s : suites)
        if (!canonical_suite_id(s)) throw std::invalid_argument("unknown suite id: '" + s + "'");
    std::set<std::string> ids;
    for (const auto& s : registry())
        for (const auto& c : s.checks) ids.insert(c.id);
    for (const auto& [k, v] : tolerance_overrides) {
        if (!ids.count(k)) throw std::invalid_argument("tolerance override for unknown check: " + k);
        if (!(v >= 0.0)) throw std::invalid_argument("tolerance override must be >= 0: " + k);
    }
}

// Registry ------------------------------------------------------------------------

const std::vector<Suite>& registry() {
    static const std::vector<Suite> r{demi_suite(),    diff_suite(),    ode_suite(),        fourier_suite(),
                                      conv_suite(),    support_suite(), convergence_suite()};
    return r;
}

std::optional<std::string> canonical_suite_id(const std::string& id) {
    for (const auto& s : registry()) {
        if (s.id == id) return s.id;
        for (const auto& a : s.aliases)
            if (a == id) return s.id;
    }
    return std::nullopt;
}

std::string describe_suite(const std::string& id) {
    const auto canon = canonical_suite_id(id);
    if (!canon) throw std::invalid_argument("unknown suite id: '" + id + "'");
    for (const auto& s : registry()) {
        if (s.id != *canon) continue;
        std::ostringstream os;
        os << s.id << ": " << s.summary << "\n";
        for (const auto& c : s.checks) {
            os << "  " << c.id << "\n      " << c.anchor << "\n      tolerance " << c.tolerance;
            if (c.cap > 0) os << ", at most " << c.cap << " samples";
            os << "\n";
        }
        return os.str();
    }
    return {};
}

// Running -------------------------------------------------------------------------

Json CheckResult::to_json() const {
    Json j;
    j["check_id"] = check_id;
    j["anchor"] = anchor;
    j["n_samples"] = n_samples;
    j["max_residual"] = number_or_null(max_residual);
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["worst_sample"] = worst_sample;
    return j;
}

CheckResult run_check(const CheckSpec& spec, const SuiteConfig& cfg) {
    CheckResult r;
    r.check_id = spec.id;
    r.anchor = spec.anchor;
    auto it = cfg.tolerance_overrides.find(spec.id);
    r.tolerance = it != cfg.tolerance_overrides.end() ? it->second : spec.tolerance;
    const int n = spec.cap > 0 ? std::min(cfg.samples_per_check, spec.cap) : cfg.samples_per_check;
    Sampler sampler(derive_seed(cfg.seed, spec.id));
    try {
        const auto outcomes = spec.run(CheckContext{cfg.quadrature, n}, sampler);
        r.n_samples = static_cast<int>(outcomes.size());
        r.max_residual = 0.0;
        bool first = true;
        for (const auto& o : outcomes) {
            r.residuals.push_back(o.residual);
            const bool worse = std::isnan(o.residual) || (!std::isnan(r.max_residual) && o.residual > r.max_residual);
            if (first || worse) {
                r.max_residual = o.residual;
                r.worst_sample = o.description;
                first = false;
            }
        }
        r.pass = r.max_residual <= r.tolerance;
    } catch (const std::exception& e) {
        r.max_residual = std::numeric_limits<double>::infinity();
        r.worst_sample = std::string("error: ") + e.what();
        r.pass = false;
    }
    return r;
}

std::vector<CheckResult> run_suites(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<std::string> wanted;
    for (const auto& s : cfg.suites) wanted.push_back(*canonical_suite_id(s));
    std::vector<const CheckSpec*> specs;
    for (const auto& s : registry()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), s.id) == wanted.end()) continue;
        for (const auto& c : s.checks) specs.push_back(&c);
    }

    std::vector<CheckResult> results(specs.size());
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, specs.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < specs.size(); i = next++) results[i] = run_check(*specs[i], cfg);
        });
    for (auto& t : pool) t.join();
    return results;
}

Json report_json(const std::vector<CheckResult>& results) {
    Json j = Json::array();
    for (const auto& r : results) j.push_back(r.to_json());
    return j;
}

std::string residuals_csv(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    os.precision(17);
    os << "check_id,sample_index,residual\n";
    for (const auto& r : results)
        for (std::size_t i = 0; i < r.residuals.size(); ++i) os << r.check_id << "," << i << "," << r.residuals[i] << "\n";
    return os.str();
}

}  // namespace demi
