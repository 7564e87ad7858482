// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N ...] [--verify PATH]
//
// Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "CLI11.hpp"
#include "demi/calculus.hpp"
#include "demi/convolution.hpp"
#include "demi/fourier.hpp"
#include "demi/sampling.hpp"

using namespace demi;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kFeasSlack = 1e-8;
constexpr double kFeasSeconds = 60.0;
constexpr double kWitnessTol = 1e-8;
constexpr double kWitnessFloor = 0.3;
constexpr double kHomogeneousTol = 1e-8;
constexpr double kOdeTol = 1e-7;
constexpr double kMeanFreeTol = 1e-9;
constexpr double kPrimitiveTol = 1e-7;
constexpr double kDualityTol = 1e-6;
constexpr double kGaussianTol = 1e-7;
constexpr double kExchangeTol = 1e-8;
constexpr double kComposeExchangeTol = 1e-10;
constexpr double kConvergenceTol = 1e-4;
constexpr int kConvergenceFrom = 5;
constexpr int kConvergenceKMax = 100;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kDiracSupportWidth = 0.5;
constexpr double kSupportResolution = 0.05;

constexpr std::uint64_t kSeed = 20240917;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const QuadratureConfig cfg;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAIL]");
    }
};

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

double sup_on(const TestFunction& a, const TestFunction& b, Interval w, int n = 801) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = w.lo + w.width() * i / (n - 1);
        m = std::max(m, std::abs(a(x) - b(x)));
    }
    return m;
}

DemiDistribution abs_one() { return abs_regular(Multiplier::constant(1.0), cfg); }
DemiDistribution reg_cos() { return regular(Multiplier::cosine(1.0, 0.0), cfg); }
TestFunction unit_bump() { return make_bump(0.0, 1.0); }

TestFunction with_mass(Sampler& s) {
    for (;;) {
        TestFunction xi = s.compact_unit();
        if (std::abs(integrate(xi, cfg)) > 0.1) return xi;
    }
}

// 1. Demi-linearity feasibility -------------------------------------------------
Verdict criterion1() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<DemiDistribution, ClassTag>> fs{{abs_one(), ClassTag::K},
                                                                {sin_abs(cfg), ClassTag::K},
                                                                {exp_abs(cfg), ClassTag::L},
                                                                {compose(ScalarMap::abs(), reg_cos()), ClassTag::K}};
    Sampler s(kSeed + 1);
    for (const auto& [f, cls] : fs) {
        double worst = -INFINITY;
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            const TestFunction xi = s.for_space(f.space()), eta = s.inside(f);
            const Complex t = s.scalar_for(f);
            const double gap = std::abs(f(combine(1.0, xi, t, eta)) - f(xi));
            const double g = std::abs(f.gamma()(t));
            const double bound = cls == ClassTag::L ? g * (std::abs(f(xi)) + std::abs(f(eta))) : g * std::abs(f(eta));
            worst = std::max(worst, gap - bound);
            if (gap > bound + kFeasSlack) ++bad;
        }
        v.require(bad == 0, f.label() + " max(gap-bound)=" + sci(worst));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < kFeasSeconds, "runtime " + sci(secs) + " s");
    return v;
}

// 2. Nonlinearity exhibit -------------------------------------------------------
Verdict criterion2() {
    Verdict v;
    const double I0 = oracle::I0();
    const auto y = solve_homogeneous(abs_one(), unit_bump(), cfg);
    const TestFunction b = unit_bump();
    const Complex lhs = y(combine(1.0, b, -1.0, b));
    const Complex rhs = y(b) + y(scale(-1.0, b));
    v.require(std::abs(I0 - oracle::kI0) < 1e-14, "romberg I0=" + std::to_string(I0));
    v.require(std::abs(lhs) <= kWitnessTol, "f(xi0-xi0)=" + sci(std::abs(lhs)));
    v.require(std::abs(rhs - 2.0 * I0 * I0) <= kWitnessTol, "|f(xi0)+f(-xi0)-2I0^2|=" + sci(std::abs(rhs - 2.0 * I0 * I0)));
    v.require(rhs.real() > kWitnessFloor, "2I0^2=" + std::to_string(2.0 * I0 * I0));
    return v;
}

// 3. ODE suite ------------------------------------------------------------------
Verdict criterion3() {
    Verdict v;
    Sampler s(kSeed + 3);
    const TestFunction z = normalized(unit_bump(), cfg);

    double a = 0.0;
    for (const auto& f0 : {abs_one(), exp_abs(cfg)}) {
        const auto y = solve_homogeneous(f0, unit_bump(), cfg);
        for (int i = 0; i < 20; ++i) {
            const TestFunction xi = i % 2 ? derivative(s.any(), 1) : projection_A(s.any(), z, cfg);
            a = std::max(a, std::abs(y(xi)));
        }
    }
    v.require(a <= kHomogeneousTol, "(a) homogeneous on mean-free " + sci(a));

    double b = 0.0;
    const std::vector<TestFunction> zetas{unit_bump(), combine(1.0, make_bump(0.5, 0.4), 0.5, make_bump(-0.6, 0.3))};
    for (const auto& f : {abs_one(), sin_abs(cfg), dirac()})
        for (const auto& zeta : zetas) {
            const auto y = solve_inhomogeneous(f, zeta, cfg);
            for (int i = 0; i < 20; ++i) {
                const TestFunction xi = s.compact_unit();
                b = std::max(b, std::abs(y(scale(-1.0, derivative(xi, 1))) - f(xi)));
            }
        }
    v.require(b <= kOdeTol, "(b) y(-xi')=f(xi) " + sci(b));

    double c = 0.0;
    for (const auto& f0 : {abs_one(), sin_abs(cfg)}) {
        const auto y = solve_homogeneous(f0, make_bump(0.0, 0.8), cfg);
        for (int i = 0; i < 10; ++i) c = std::max(c, invariance_check_E1(y, with_mass(s), with_mass(s), cfg));
    }
    v.require(c <= kOdeTol, "(c) constant on E1 " + sci(c));

    double d = 0.0;
    for (const auto& f : {abs_one(), sin_abs(cfg)}) {
        const SpanElement g = general_solution(f, abs_one(), unit_bump(), unit_bump(), cfg);
        for (int i = 0; i < 20; ++i) {
            const TestFunction xi = s.compact_unit();
            d = std::max(d, std::abs(derivative_functional(g, 1)(xi) - f(xi)));
        }
    }
    v.require(d <= kOdeTol, "(d) g'=f " + sci(d));
    return v;
}

// 4. Operator identities --------------------------------------------------------
Verdict criterion4() {
    Verdict v;
    Sampler s(kSeed + 4);
    const TestFunction z = normalized(unit_bump(), cfg);
    double mean = 0.0, prim = 0.0;
    bool exact = true;
    for (int i = 0; i < 20; ++i) {
        const TestFunction xi = s.any();
        mean = std::max(mean, std::abs(integrate(projection_A(xi, z, cfg), cfg)));
        for (unsigned k = 1; k <= 3; ++k) {
            const TestFunction d = derivative(xi, k), a = projection_A(d, z, cfg);
            for (int j = 0; j <= 200; ++j) {
                const double x = -4.0 + 0.04 * j;
                if (a(x) != d(x)) exact = false;
            }
        }
        const TestFunction eta = s.compact();
        prim = std::max(prim, sup_on(primitive_T(derivative(eta, 1), z, cfg), eta, *eta.support()));
    }
    v.require(mean <= kMeanFreeTol, "int A(xi) " + sci(mean));
    v.require(prim <= kPrimitiveTol, "T(xi')=xi " + sci(prim));
    v.require(exact, std::string("A(xi^(k))=xi^(k) ") + (exact ? "exact" : "inexact"));
    return v;
}

// 5. Fourier suite --------------------------------------------------------------
Verdict criterion5() {
    Verdict v;
    Sampler s(kSeed + 5);
    const std::vector<std::pair<DemiDistribution, bool>> fs{
        {dirac(), false},       {dirac_derivative(1), false},
        {regular(Multiplier::constant(1.0), cfg), false},
        {reg_cos(), false},     {abs_one(), false},
        {sin_abs(cfg), true},   {exp_abs(cfg), false},
        {compose(ScalarMap::abs(), reg_cos()), false},
        {sine_of_mean(cfg), false}};
    double dual = 0.0;
    for (const auto& [f, compact_only] : fs) {
        const auto Ff = fourier_functional(f, cfg);
        for (int i = 0; i < 20; ++i) {
            const TestFunction xi = compact_only ? s.compact_unit() : s.any();
            dual = std::max(dual, std::abs(Ff(fourier_test(xi, cfg)) - kTwoPi * f(xi)));
        }
    }
    v.require(dual <= kDualityTol, "duality " + sci(dual));

    const auto Fs = fourier_functional(sine_of_mean(cfg), cfg);
    double closed = 0.0, null = 0.0;
    for (int i = 0; i < 20; ++i) {
        const TestFunction xi = s.any();
        const double m = oracle::romberg([&](double x) { return xi(x).real(); }, -8.0, 8.0, 18);
        closed = std::max(closed, std::abs(Fs(fourier_test(xi, cfg)) - kTwoPi * std::sin(std::exp(-1.0) * m)));
    }
    v.require(closed <= kDualityTol, "2pi sin(e^-1 int xi) " + sci(closed));

    const auto Fy = fourier_functional(solve_homogeneous(abs_one(), unit_bump(), cfg), cfg);
    for (int i = 0; i < 10; ++i) {
        const TransformFunction zeta = fourier_test(s.any(), cfg);
        null = std::max({null, null_identity_check(Fs, zeta), null_identity_check(Fy, zeta)});
    }
    v.require(null <= kDualityTol, "F(f)(i sigma zeta) " + sci(null));

    const TransformFunction g = fourier_test(make_gaussian(0.0, std::sqrt(2.0)), cfg);
    double gauss = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double sg = -6.0 + 12.0 * i / 49.0;
        gauss = std::max(gauss, std::abs(g(sg) - std::sqrt(kTwoPi) * std::exp(-sg * sg / 2.0)));
    }
    v.require(gauss <= kGaussianTol, "gaussian " + sci(gauss));
    return v;
}

// 6. Convolution suite ----------------------------------------------------------
Verdict criterion6() {
    Verdict v;
    Sampler s(kSeed + 6);
    bool exact = true;
    const DemiDistribution f = abs_one();
    for (int i = 0; i < 10; ++i) {
        const TestFunction xi = s.any();
        const TestFunction d0 = convolve_test(ConvolutionMultiplier::dirac(), xi);
        for (unsigned k = 1; k <= 3; ++k) {
            const TestFunction dk = convolve_test(ConvolutionMultiplier::dirac_derivative(k), xi);
            const double sign = k % 2 ? -1.0 : 1.0;
            for (int j = 0; j <= 100; ++j) {
                const double x = -3.0 + 0.06 * j;
                if (dk(x) != sign * xi.value(x, k) || d0(x) != xi(x)) exact = false;
            }
            if (convolve_functional(ConvolutionMultiplier::dirac_derivative(k), f)(xi) != derivative_functional(f, k)(xi))
                exact = false;
        }
        if (convolve_functional(ConvolutionMultiplier::dirac(), f)(xi) != f(xi)) exact = false;
    }
    v.require(exact, std::string("delta identities ") + (exact ? "exact" : "inexact"));

    const DiffOperator P({{2.0, 0}, {3.0, 2}});
    const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.2, 0.5), cfg);
    ExchangeResiduals worst;
    for (int i = 0; i < 10; ++i) {
        const ExchangeResiduals r = diffop_exchange_check(P, f0, SpanElement(f), s.any());
        worst.diffop_on_test = std::max(worst.diffop_on_test, r.diffop_on_test);
        worst.derivative_swap = std::max(worst.derivative_swap, r.derivative_swap);
        worst.diffop_on_functional = std::max(worst.diffop_on_functional, r.diffop_on_functional);
    }
    v.require(worst.diffop_on_test <= kExchangeTol, "P(D) on test " + sci(worst.diffop_on_test));
    v.require(worst.derivative_swap <= kExchangeTol, "derivative swap " + sci(worst.derivative_swap));
    v.require(worst.diffop_on_functional <= kExchangeTol, "P(D) on functional " + sci(worst.diffop_on_functional));

    double comp = 0.0;
    for (const auto& h : {ScalarMap::abs(), ScalarMap::sin_abs(), ScalarMap::exp_abs_minus_one()})
        for (int i = 0; i < 5; ++i) {
            const TestFunction xi = s.any();
            comp = std::max(comp, std::abs(convolve_functional(f0, compose(h, reg_cos()))(xi) -
                                           compose(h, convolve_functional(f0, reg_cos()))(xi)));
        }
    v.require(comp <= kComposeExchangeTol, "compose exchange " + sci(comp));
    return v;
}

// 7. Convergence families -------------------------------------------------------
std::string family_line(const std::vector<double>& gaps, bool monotone) {
    return "gap(" + std::to_string(gaps.size()) + ")=" + sci(gaps.back()) + (monotone ? " monotone" : " not monotone");
}

Verdict criterion7() {
    Verdict v;
    Sampler s(kSeed + 7);
    std::vector<TestFunction> B;
    for (int i = 0; i < 4; ++i) B.push_back(s.compact_unit());
    B.push_back(make_hermite_gaussian(1, 0.2, 0.6));
    const auto ok = [](const std::vector<double>& gaps, bool mono) { return mono && gaps.back() < kConvergenceTol; };

    const auto lin = [&](int k) { return regular(Multiplier::cosine(1.0, 0.0).scaled(1.0 + 1.0 / k), cfg); };
    const WStarReport w1 = sample_w_star_uniformity(lin, reg_cos(), B, kConvergenceKMax);
    const bool m1 = w1.monotone_from(kConvergenceFrom, kMonotoneSlack);
    v.require(ok(w1.sup_gaps, m1), "regular(g(1+1/k)) " + family_line(w1.sup_gaps, m1));

    const auto comp = [&](int k) { return compose(ScalarMap::sin_abs(), lin(k)); };
    const WStarReport w2 = sample_w_star_uniformity(comp, compose(ScalarMap::sin_abs(), reg_cos()), B, kConvergenceKMax);
    const bool m2 = w2.monotone_from(kConvergenceFrom, kMonotoneSlack);
    v.require(ok(w2.sup_gaps, m2), "sin|regular(g(1+1/k))| " + family_line(w2.sup_gaps, m2));

    const auto moll = [&](int k) { return ConvolutionMultiplier::mollifier(k, cfg); };
    const ContinuityReport c1 =
        convolution_continuity_check(moll, ConvolutionMultiplier::dirac(), [](int) { return dirac(); }, dirac(), B, kConvergenceKMax);
    const bool m3 = c1.monotone_from(kConvergenceFrom, kMonotoneSlack);
    v.require(ok(c1.diagonal, m3), "mollifier*delta " + family_line(c1.diagonal, m3));

    const ContinuityReport c2 = convolution_continuity_check(moll, ConvolutionMultiplier::dirac(), comp,
                                                             compose(ScalarMap::sin_abs(), reg_cos()), B, kConvergenceKMax);
    const bool m4 = c2.monotone_from(kConvergenceFrom, kMonotoneSlack);
    v.require(ok(c2.diagonal, m4) && c2.grid_monotone(kMonotoneSlack),
              "mollifier*sin|regular(g(1+1/m))| diagonal " + family_line(c2.diagonal, m4) + ", grid " +
                  (c2.grid_monotone(kMonotoneSlack) ? "monotone" : "not monotone"));
    return v;
}

// 8. Support probing ------------------------------------------------------------
Verdict criterion8() {
    Verdict v;
    const auto d = estimate_support(dirac(), {-1.0, 1.0}, kSupportResolution);
    v.require(d.size() == 1 && d.front().contains(0.0) && d.front().width() <= kDiracSupportWidth,
              "dirac: " + std::to_string(d.size()) + " interval(s)" +
                  (d.empty() ? "" : ", width " + sci(d.front().width())));

    const TestFunction g = make_plateau(2.1, 2.9, 0.1, cfg);
    const auto r = estimate_support(regular(Multiplier::from_test_function(g), cfg), {0.0, 5.0}, kSupportResolution);
    double lo = INFINITY, hi = -INFINITY;
    bool covers = false;
    for (const auto& iv : r) {
        lo = std::min(lo, iv.lo);
        hi = std::max(hi, iv.hi);
        if (iv.lo <= 2.0 + kSupportResolution && iv.hi >= 3.0 - kSupportResolution) covers = true;
    }
    v.require(covers && lo >= 1.5 && hi <= 3.5,
              "regular(g): hull [" + std::to_string(lo) + ", " + std::to_string(hi) + "] in " + std::to_string(r.size()) +
                  " interval(s)");
    return v;
}

// 9. Determinism ----------------------------------------------------------------
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Verdict criterion9(const std::string& verify) {
    Verdict v;
    if (verify.empty()) {
        v.require(false, "no verify executable given");
        return v;
    }
    const fs::path root = fs::temp_directory_path() / ("demicalc-acceptance-" + std::to_string(::getpid()));
    std::vector<std::string> reports;
    for (int run = 0; run < 2; ++run) {
        const fs::path out = root / ("run" + std::to_string(run));
        const std::string cmd = "\"" + verify + "\" run --seed 20240917 --samples 5 --out \"" + out.string() + "\" > \"" +
                                (root / ("log" + std::to_string(run))).string() + "\" 2>&1";
        fs::create_directories(root);
        const int rc = std::system(cmd.c_str());
        v.require(fs::exists(out / "report.json"), "run " + std::to_string(run) + " exit " + std::to_string(rc));
        reports.push_back(slurp(out / "report.json"));
    }
    v.require(!reports[0].empty() && reports[0] == reports[1], std::to_string(reports[0].size()) + " bytes identical");
    fs::remove_all(root);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    std::string verify;
    app.add_option("--criterion", only, "Criterion number (repeatable); default all")->check(CLI::Range(1, 9));
    app.add_option("--verify", verify, "Path to the verify executable");
    CLI11_PARSE(app, argc, argv);
    if (only.empty()) only = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"demi-linearity feasibility", criterion1},
        {"nonlinearity exhibit", criterion2},
        {"ODE suite", criterion3},
        {"operator identities", criterion4},
        {"Fourier suite", criterion5},
        {"convolution suite", criterion6},
        {"convergence families", criterion7},
        {"support probing", criterion8},
        {"determinism", [&] { return criterion9(verify); }}};

    int failed = 0;
    for (int n : only) {
        const auto& [name, fn] = criteria[static_cast<std::size_t>(n - 1)];
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v.require(false, std::string("error: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d %s  %s (%.1f s): %s\n", n, v.pass ? "PASS" : "FAIL", name.c_str(), secs, v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
