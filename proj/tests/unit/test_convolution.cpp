#include <gtest/gtest.h>

#include <cmath>

#include "../oracles.hpp"
#include "demi/convolution.hpp"
#include "demi/sampling.hpp"

using namespace demi;

namespace {

const QuadratureConfig cfg;

DemiDistribution one_abs() { return abs_regular(Multiplier::constant(1.0), cfg); }

}  // namespace

TEST(ConvolveTest, DiracFamily) {
    Sampler s(31);
    for (int i = 0; i < 10; ++i) {
        const TestFunction xi = s.any();
        const TestFunction d = convolve_test(ConvolutionMultiplier::dirac(), xi);
        const TestFunction d1 = convolve_test(ConvolutionMultiplier::dirac_derivative(1), xi);
        for (double x = -2.0; x <= 2.0; x += 0.1) {
            EXPECT_EQ(d(x), xi(x));
            EXPECT_EQ(d1(x), -xi.value(x, 1));
        }
    }
}

TEST(ConvolveTest, RegularAgainstNestedOracle) {
    const TestFunction g = make_bump(0.1, 0.4);
    const TestFunction xi = make_bump(-0.2, 0.7);
    const TestFunction c = convolve_test(ConvolutionMultiplier::compact_regular(g, cfg), xi);
    for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
        const double ref = oracle::romberg([&](double t) { return g(t).real() * xi(x + t).real(); }, -0.3, 0.5, 18);
        EXPECT_NEAR(c(x).real(), ref, 1e-8) << x;
    }
    ASSERT_TRUE(c.support().has_value());
    EXPECT_DOUBLE_EQ(c.support()->lo, -0.9 - 0.5);
    EXPECT_DOUBLE_EQ(c.support()->hi, 0.5 + 0.3);
    EXPECT_EQ(c(1.0), Complex(0.0));
}

TEST(ConvolveTest, DefinitionAndDerivativeExchange) {
    Sampler s(32);
    const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.2, 0.5), cfg);
    for (int i = 0; i < 20; ++i) {
        const TestFunction xi = s.any();
        const double x = s.uniform(-2.0, 2.0);
        EXPECT_NEAR(std::abs(convolve_test(f0, xi)(x) - f0.apply(translate(xi, x))), 0.0, 1e-9);
        const unsigned k = static_cast<unsigned>(s.integer(1, 3));
        EXPECT_EQ(derivative(convolve_test(f0, xi), k)(x), convolve_test(f0, derivative(xi, k))(x));
    }
}

TEST(ConvolveFunctional, DiracFamily) {
    Sampler s(33);
    const auto f = one_abs();
    for (int i = 0; i < 5; ++i) {
        const TestFunction xi = s.any();
        EXPECT_EQ(convolve_functional(ConvolutionMultiplier::dirac(), f)(xi), f(xi));
        EXPECT_EQ(convolve_functional(ConvolutionMultiplier::dirac_derivative(2), f)(xi), derivative_functional(f, 2)(xi));
    }
}

TEST(ConvolveFunctional, ComposeExchange) {
    Sampler s(34);
    const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.0, 0.5), cfg);
    const auto f = regular(Multiplier::cosine(1.0, 0.0), cfg);
    for (const auto& h : {ScalarMap::abs(), ScalarMap::sin_abs(), ScalarMap::exp_abs_minus_one()}) {
        const TestFunction xi = s.any();
        EXPECT_LE(std::abs(convolve_functional(f0, compose(h, f))(xi) - compose(h, convolve_functional(f0, f))(xi)), 1e-10);
    }
}

TEST(ScalarCompat, Cases) {
    const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.1, 0.5), cfg);
    const TestFunction xi = make_bump(0.2, 0.8);
    const auto one = scalar_compat_check(f0, one_abs(), 1.0, xi);
    EXPECT_EQ(one.test_side, 0.0);
    EXPECT_EQ(one.functional_side, 0.0);
    EXPECT_FALSE(one.linear_side.has_value());
    const auto zero = scalar_compat_check(f0, one_abs(), 0.0, xi);
    EXPECT_EQ(zero.functional_side, 0.0);
    const auto r = scalar_compat_check(f0, one_abs(), Complex(0.3, 0.8), xi);
    EXPECT_LE(r.test_side, 1e-9);
    EXPECT_LE(r.functional_side, 1e-9);
    const auto lin = scalar_compat_check(f0, regular(Multiplier::constant(1.0), cfg), Complex(-0.5, 0.2), xi);
    ASSERT_TRUE(lin.linear_side.has_value());
    EXPECT_LE(*lin.linear_side, 1e-9);
}

TEST(DiffopExchange, Residuals) {
    const SpanElement f(one_abs());
    const TestFunction xi = make_bump(0.0, 0.9);
    const auto r0 = diffop_exchange_check(DiffOperator::d(1), ConvolutionMultiplier::dirac(), f, xi);
    EXPECT_EQ(r0.max(), 0.0);
    const auto id = diffop_exchange_check(DiffOperator::identity(), ConvolutionMultiplier::compact_regular(make_bump(0.2, 0.5), cfg), f, xi);
    EXPECT_EQ(id.diffop_on_functional, 0.0);
    Sampler s(35);
    const DiffOperator P({{2.0, 0}, {3.0, 2}});
    const auto f0 = ConvolutionMultiplier::compact_regular(make_bump(0.2, 0.5), cfg);
    for (int i = 0; i < 4; ++i) EXPECT_LE(diffop_exchange_check(P, f0, f, s.any()).max(), 1e-8);
}

TEST(Multiplier, DerivativeAndScaling) {
    const auto d = ConvolutionMultiplier::dirac().derivative(2).derivative(1);
    EXPECT_EQ(d.kind(), ConvolutionMultiplier::Kind::DiracDerivative);
    EXPECT_EQ(d.order(), 3u);
    const auto m = ConvolutionMultiplier::mollifier(4, cfg);
    EXPECT_NEAR(std::abs(integrate(m.density(), cfg) - 1.0), 0.0, 1e-10);
    EXPECT_DOUBLE_EQ(m.support_bound().hi, 0.25);
    EXPECT_EQ(m.scaled(2.0).coefficient(), Complex(2.0));
    EXPECT_THROW(ConvolutionMultiplier::compact_regular(make_gaussian(0, 1), cfg), std::invalid_argument);
}

TEST(Continuity, MollifierToDirac) {
    const std::vector<TestFunction> B{make_bump(0.0, 1.0), make_bump(0.3, 0.5), make_hermite_gaussian(1, 0.1, 0.7)};
    const auto rep = convolution_continuity_check([](int k) { return ConvolutionMultiplier::mollifier(k, cfg); },
                                                  ConvolutionMultiplier::dirac(), [](int) { return dirac(); }, dirac(), B, 40,
                                                  {1, 10, 40});
    EXPECT_TRUE(rep.monotone_from(5, 1e-12));
    EXPECT_LT(rep.gap_at(40), rep.gap_at(5) / 20.0);
    EXPECT_EQ(rep.grid.size(), 3u);
}

TEST(Continuity, ConstantSequences) {
    const std::vector<TestFunction> B{make_bump(0.0, 1.0)};
    const auto f0 = ConvolutionMultiplier::mollifier(3, cfg);
    const auto rep = convolution_continuity_check([&](int) { return f0; }, f0, [](int) { return one_abs(); }, one_abs(), B, 5,
                                                  {1, 5});
    for (double g : rep.diagonal) EXPECT_EQ(g, 0.0);
}
