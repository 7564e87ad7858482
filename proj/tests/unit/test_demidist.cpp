#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "demi/demidist.hpp"
#include "demi/sampling.hpp"

using namespace demi;

namespace {

const QuadratureConfig cfg;

DemiDistribution one_reg() { return regular(Multiplier::constant(1.0), cfg); }
DemiDistribution one_abs() { return abs_regular(Multiplier::constant(1.0), cfg); }

}  // namespace

TEST(Apply, StandardExamples) {
    const TestFunction b = make_bump(0.0, 1.0);
    EXPECT_DOUBLE_EQ(apply(dirac(), b).real(), std::exp(-1.0));
    EXPECT_EQ(apply(one_reg(), derivative(b, 1)), Complex(0.0));
    EXPECT_NEAR(apply(one_abs(), b).real(), oracle::I0(), 1e-10);
}

TEST(Apply, SpaceMismatchThrows) {
    EXPECT_THROW(sin_abs(cfg)(make_gaussian(0.0, 1.0)), std::invalid_argument);
    EXPECT_THROW(sin_abs(cfg)(make_bump(1.0, 0.5)), std::invalid_argument);
    EXPECT_NO_THROW(sin_abs(cfg)(make_bump(0.5, 0.5)));
}

TEST(Regular, ValuesAndLinearity) {
    const TestFunction b = make_bump(0.0, 1.0);
    EXPECT_NEAR(one_reg()(b).real(), oracle::I0(), 1e-10);
    EXPECT_EQ(regular(Multiplier::constant(0.0), cfg)(b), Complex(0.0));
    const auto f = regular(Multiplier::cosine(1.3, 0.2), cfg);
    const TestFunction xi = make_hermite_gaussian(2, 0.1, 0.8), eta = make_bump(0.3, 0.6);
    EXPECT_NEAR(std::abs(f(combine(1.0, xi, 1.0, eta)) - (f(xi) + f(eta))), 0.0, 1e-12);
    EXPECT_EQ(f.class_tag(), ClassTag::Linear);
}

TEST(AbsRegular, NotLinear) {
    const TestFunction b = make_bump(0.0, 1.0);
    const auto f = one_abs();
    EXPECT_NEAR(f(b).real(), oracle::I0(), 1e-10);
    EXPECT_NEAR(f(scale(-1.0, b)).real(), oracle::I0(), 1e-10);
    EXPECT_EQ(f(zero_function()), Complex(0.0));
    EXPECT_EQ(f.class_tag(), ClassTag::K);
    EXPECT_TRUE(f.nbhd().is_whole());
}

TEST(SinAbs, OracleValue) {
    const TestFunction b = make_bump(0.0, 1.0);
    const double ref = oracle::romberg([](double x) { return std::abs(std::sin(oracle::unit_bump(x))); }, -1.0, 1.0, 20);
    EXPECT_NEAR(ref, oracle::kSinAbsBump, 1e-13);
    EXPECT_NEAR(sin_abs(cfg)(b).real(), ref, 1e-10);
    EXPECT_EQ(sin_abs(cfg)(zero_function()), Complex(0.0));
    EXPECT_NEAR(sin_abs(cfg).gamma().magnitude(1.0), std::numbers::pi / 2.0, 1e-15);
}

TEST(ExpAbs, OracleValue) {
    const Complex v = exp_abs(cfg)(make_gaussian(0.0, 1.0));
    const double ref = oracle::romberg([](double x) { return std::expm1(std::exp(-x * x)); }, -1.0, 1.0, 20);
    EXPECT_NEAR(ref, oracle::kExpAbsGaussian, 1e-13);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), ref, 1e-10);
    EXPECT_EQ(exp_abs(cfg)(zero_function()), Complex(0.0));
    EXPECT_EQ(exp_abs(cfg).class_tag(), ClassTag::L);
}

TEST(Dirac, Family) {
    const TestFunction b = make_bump(0.0, 1.0);
    const TestFunction g = make_hermite_gaussian(1, 0.3, 0.7);
    EXPECT_DOUBLE_EQ(dirac()(b).real(), std::exp(-1.0));
    EXPECT_NEAR(std::abs(dirac_derivative(1)(b)), 0.0, 1e-15);
    EXPECT_EQ(dirac_derivative(2)(g), g.value(0.0, 2));
    EXPECT_EQ(dirac_derivative(3)(g), -g.value(0.0, 3));
}

TEST(Compose, Examples) {
    const TestFunction b = make_bump(0.0, 1.0);
    EXPECT_NEAR(compose(ScalarMap::abs(), one_reg())(scale(-1.0, b)).real(), oracle::I0(), 1e-10);
    EXPECT_EQ(compose(ScalarMap::sin_abs(), one_abs())(zero_function()), Complex(0.0));
    const auto f = regular(Multiplier::cosine(1.0, 0.4), cfg);
    const auto h = compose(ScalarMap::exp_abs_minus_one(), f);
    Sampler s(3);
    for (int i = 0; i < 5; ++i) {
        const TestFunction xi = s.any();
        EXPECT_EQ(h(xi), Complex(std::expm1(std::abs(f(xi)))));
    }
}

TEST(Compose, ClassAndGamma) {
    const auto a = compose(ScalarMap::sin_abs(), one_abs());
    EXPECT_EQ(a.class_tag(), ClassTag::K);
    EXPECT_NEAR(a.gamma().magnitude(0.5), std::numbers::pi / 4.0, 1e-15);
    EXPECT_FALSE(a.nbhd().is_whole());
    const auto l = compose(ScalarMap::abs(), exp_abs(cfg));
    EXPECT_EQ(l.class_tag(), ClassTag::L);
    EXPECT_THROW(compose(ScalarMap::sin_abs(), exp_abs(cfg)), std::invalid_argument);
    EXPECT_THROW(compose(ScalarMap::abs(), sin_abs(cfg)), std::invalid_argument);
}

TEST(Gamma, Admissibility) {
    for (const auto& g : {GammaFn::identity(), GammaFn::linear(std::numbers::pi / 2.0), GammaFn::linear(std::numbers::e),
                          GammaFn::sqrt_abs()}) {
        const GammaCheck c = check_gamma(g);
        EXPECT_TRUE(c.dominates_identity) << g.name();
        EXPECT_TRUE(c.vanishes_at_zero) << g.name();
        EXPECT_TRUE(c.monotone) << g.name();
    }
    EXPECT_FALSE(check_gamma(GammaFn::linear(0.5)).dominates_identity);
    EXPECT_NEAR(GammaFn::sqrt_abs().sup_on_unit_disk(), 1.0, 1e-12);
    EXPECT_EQ(GammaFn::compose(GammaFn::linear(2.0), GammaFn::linear(3.0)).coefficient(), Complex(6.0));
}

TEST(Neighborhood, BallMembership) {
    const auto U = Neighborhood::ball(0, 1.0, SpaceTag::compact_a(1.0));
    EXPECT_TRUE(U.contains(make_bump(0.0, 1.0), cfg));
    EXPECT_FALSE(U.contains(scale(3.0, make_bump(0.0, 1.0)), cfg));
    const TestFunction big = scale(5.0, make_bump(0.2, 0.5));
    EXPECT_TRUE(U.contains(scale(U.fit_factor(big, cfg), big), cfg));
    EXPECT_TRUE(Neighborhood::whole().contains(big, cfg));
    EXPECT_EQ(U.derivative_shift(2).constraints().front().p, 2u);
}

TEST(Feasibility, LinearGapIsExact) {
    const auto f = regular(Multiplier::cosine(0.7, 0.1), cfg);
    Sampler s(11);
    for (int i = 0; i < 20; ++i) {
        const TestFunction xi = s.any(), eta = s.any();
        const Complex t = s.unit_disk();
        const WitnessReport r = check_demi_linearity(f, xi, eta, t, ClassTag::K);
        EXPECT_TRUE(r.feasible);
        EXPECT_NEAR(r.lhs_gap, std::abs(t) * std::abs(r.f_eta), 1e-10);
    }
}

TEST(Feasibility, BuiltinsOnRandomTriples) {
    const std::vector<std::pair<DemiDistribution, ClassTag>> fs{
        {one_abs(), ClassTag::K}, {sin_abs(cfg), ClassTag::K}, {exp_abs(cfg), ClassTag::L}};
    Sampler s(5);
    for (const auto& [f, cls] : fs)
        for (int i = 0; i < 100; ++i) {
            const TestFunction xi = s.for_space(f.space()), eta = s.inside(f);
            const WitnessReport r = check_demi_linearity(f, xi, eta, s.scalar_for(f), cls);
            EXPECT_TRUE(r.feasible) << f.label() << " " << r.sample << " gap=" << r.lhs_gap << " bound=" << r.bound;
        }
}

TEST(Feasibility, Preconditions) {
    const auto f = sin_abs(cfg);
    const TestFunction b = make_bump(0.0, 0.5);
    EXPECT_THROW(check_demi_linearity(f, b, scale(10.0, b), 0.5, ClassTag::K), PreconditionViolation);
    EXPECT_THROW(check_demi_linearity(f, b, b, 1.5, ClassTag::K), PreconditionViolation);
    EXPECT_THROW(check_demi_linearity(f, b, b, Complex(0.0, 0.5), ClassTag::K), PreconditionViolation);
    EXPECT_NO_THROW(check_demi_linearity(f, b, b, -0.5, ClassTag::K));
}

TEST(Span, ExactLinearity) {
    const TestFunction xi = make_hermite_gaussian(1, 0.2, 0.9);
    const Complex a(0.3, -1.1), b(2.0, 0.5);
    const SpanElement s({{a, one_abs()}, {b, dirac()}});
    EXPECT_EQ(s(xi), a * one_abs()(xi) + b * dirac()(xi));
    EXPECT_EQ((SpanElement(one_abs()) + SpanElement(dirac())).terms().size(), 2u);
}

TEST(WStar, LinearAndConstantFamilies) {
    const std::vector<TestFunction> B{make_bump(0.0, 1.0), make_gaussian(0.2, 0.6), make_bump(0.5, 0.3)};
    const Multiplier g = Multiplier::cosine(1.0, 0.0);
    const auto f = regular(g, cfg);
    const WStarReport r = sample_w_star_uniformity([&](int k) { return regular(g.scaled(1.0 + 1.0 / k), cfg); }, f, B, 30);
    double mx = 0.0;
    for (const auto& xi : B) mx = std::max(mx, std::abs(f(xi)));
    for (int k = 1; k <= 30; ++k) EXPECT_NEAR(r.gap_at(k), mx / k, 1e-10);
    EXPECT_TRUE(r.monotone_from(1, 1e-12));
    const WStarReport c = sample_w_star_uniformity([&](int) { return f; }, f, B, 5);
    for (double v : c.sup_gaps) EXPECT_EQ(v, 0.0);
}

TEST(Json, DeclarativeForm) {
    const Json j = sin_abs(cfg).to_json();
    EXPECT_EQ(j["label"], "sin_abs");
    EXPECT_EQ(j["class"], "K");
    EXPECT_TRUE(j.contains("gamma"));
    EXPECT_TRUE(j.contains("nbhd"));
    EXPECT_EQ(one_abs().to_json()["nbhd"], "whole space");
}
