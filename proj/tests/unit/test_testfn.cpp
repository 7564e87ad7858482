#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "demi/testfn.hpp"

using namespace demi;

namespace {

std::vector<TestFunction> family() {
    return {make_bump(0.0, 1.0),
            make_bump(0.7, 0.4),
            combine(1.0, make_bump(-0.5, 0.6), Complex(0.3, -0.2), make_bump(0.4, 0.5)),
            make_gaussian(0.3, 0.8),
            make_hermite_gaussian(3, -0.2, 1.1),
            product(make_bump(0.1, 0.9), make_gaussian(0.0, 0.5)),
            product(Multiplier::polynomial({0.0, 0.0, 1.0}), make_bump(0.0, 1.0))};
}

}  // namespace

TEST(TestFunction, BumpValues) {
    auto b = make_bump(0.0, 1.0);
    EXPECT_DOUBLE_EQ(b(0.0).real(), std::exp(-1.0));
    EXPECT_EQ(b(1.0), Complex(0.0));
    EXPECT_DOUBLE_EQ(b(0.5).real(), std::exp(-4.0 / 3.0));
    EXPECT_DOUBLE_EQ(make_bump(2.0, 1.0)(2.0).real(), std::exp(-1.0));
    EXPECT_EQ(b.space(), SpaceTag::compact_a(1.0));
    EXPECT_EQ(make_bump(2.0, 1.0).space(), SpaceTag::compact_a(3.0));
    EXPECT_THROW(make_bump(0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(make_bump(0.0, -1.0), std::invalid_argument);
}

TEST(TestFunction, ZeroAndGaussian) {
    EXPECT_EQ(zero_function()(3.7), Complex(0.0));
    EXPECT_EQ(make_gaussian(0.0, 1.0)(0.0), Complex(1.0));
    EXPECT_EQ(derivative(make_gaussian(0.0, 1.0), 1)(0.0), Complex(0.0));
}

TEST(TestFunction, SpaceTagInvariant) {
    EXPECT_THROW(SpaceTag::compact_a(0.0), std::invalid_argument);
    EXPECT_TRUE(SpaceTag::compact_union().is_compact());
    EXPECT_FALSE(SpaceTag::schwartz().is_compact());
}

TEST(TestFunction, ExactlyZeroOffSupport) {
    for (const auto& xi : family()) {
        if (!xi.is_compact()) continue;
        const auto s = *xi.support();
        for (unsigned k = 0; k < 4; ++k) {
            auto d = derivative(xi, k);
            EXPECT_EQ(d.space(), xi.space());
            EXPECT_TRUE(xi.support()->contains(*d.support()));
            for (double x : {s.lo - 1e-9, s.hi + 1e-9, s.lo - 3.0, s.hi + 10.0}) EXPECT_EQ(d(x), Complex(0.0));
        }
    }
}

TEST(TestFunction, DerivativeCompositionIsBitIdentical) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (const auto& xi : family()) {
        for (unsigned j = 0; j < 3; ++j)
            for (unsigned k = 0; k < 3; ++k) {
                auto a = derivative(derivative(xi, j), k);
                auto b = derivative(xi, j + k);
                for (int i = 0; i < 1000; ++i) {
                    double x = u(rng);
                    ASSERT_EQ(a(x), b(x));
                }
            }
    }
}

TEST(TestFunction, DerivativeMatchesFiniteDifference) {
    for (const auto& xi : family()) {
        for (unsigned k = 0; k < 3; ++k) {
            auto d = derivative(xi, k);
            auto d1 = derivative(xi, k + 1);
            Interval r = xi.is_compact() ? *xi.support() : Interval{-3.0, 3.0};
            for (int i = 1; i < 40; ++i) {
                double x = r.lo + r.width() * i / 40.0;
                double fd = oracle::central_difference([&](double t) { return d(t).real(); }, x);
                double scale = std::max(1.0, std::abs(d1(x).real()));
                EXPECT_NEAR(d1(x).real(), fd, 1e-6 * scale) << xi.label() << " k=" << k << " x=" << x;
            }
        }
    }
    auto b1 = derivative(make_bump(0.0, 1.0), 1);
    EXPECT_NEAR(b1(0.5).real(), oracle::central_difference(oracle::unit_bump, 0.5), 1e-6);
}

TEST(TestFunction, HighOrderBumpDerivativeStaysFinite) {
    auto xi = make_bump(0.0, 0.3);
    for (unsigned k = 0; k < 12; ++k)
        for (double x = -0.299; x < 0.3; x += 0.013) ASSERT_TRUE(std::isfinite(std::abs(xi.value(x, k))));
}

TEST(TestFunction, IntegrateBump) {
    QuadratureConfig cfg;
    EXPECT_NEAR(integrate(make_bump(0.0, 1.0), cfg).real(), oracle::I0(), 1e-12);
    EXPECT_NEAR(integrate(make_bump(1.5, 0.5), cfg).real(), 0.5 * oracle::I0(), 1e-12);
    auto xi = make_bump(0.2, 0.8);
    EXPECT_EQ(integrate(combine(1.0, xi, -1.0, xi), cfg), Complex(0.0));
}

TEST(TestFunction, IntegrateDerivativeVanishes) {
    QuadratureConfig cfg;
    for (const auto& xi : family()) {
        auto d = derivative(xi, 1);
        EXPECT_EQ(integrate(d, cfg), Complex(0.0));
        // The same integral through plain quadrature, without the structural shortcut.
        Interval r = d.integration_range(cfg);
        Complex q = integrate_interval([&](double x) { return d(x); }, r.lo, r.hi, cfg, 40);
        EXPECT_LT(std::abs(q), 1e-10) << xi.label();
    }
}

TEST(TestFunction, IntegrateGaussianAndHermite) {
    QuadratureConfig cfg;
    EXPECT_NEAR(integrate(make_gaussian(1.0, 0.5), cfg).real(), 0.5 * std::sqrt(M_PI), 1e-12);
    EXPECT_NEAR(std::abs(integrate(make_hermite_gaussian(1, 0.0, 1.0), cfg)), 0.0, 1e-12);
    EXPECT_NEAR(integrate(make_hermite_gaussian(2, 0.0, 1.0), cfg).real(), 0.0, 1e-12);
}

TEST(TestFunction, Translate) {
    auto xi = make_bump(0.0, 1.0);
    EXPECT_DOUBLE_EQ(translate(xi, 0.5)(-0.5).real(), std::exp(-1.0));
    auto t = translate(xi, 0.5);
    EXPECT_DOUBLE_EQ(t.support()->lo, -1.5);
    EXPECT_DOUBLE_EQ(t.support()->hi, 0.5);
    auto a = derivative(translate(xi, 0.3), 1);
    auto b = translate(derivative(xi, 1), 0.3);
    for (double x = -1.3; x < 0.7; x += 0.01) ASSERT_EQ(a(x), b(x));
    EXPECT_EQ(translate(xi, 0.0)(0.2), xi(0.2));
}

TEST(TestFunction, CombineAndProduct) {
    auto xi = make_bump(0.0, 1.0);
    auto eta = make_gaussian(0.5, 0.7);
    Complex t(0.2, -0.4);
    auto s = combine(1.0, xi, t, eta);
    EXPECT_EQ(s.space(), SpaceTag::schwartz());
    for (double x = -2.0; x < 2.0; x += 0.1) EXPECT_EQ(s(x), xi(x) + t * eta(x));
    auto z = combine(1.0, xi, -1.0, xi);
    for (double x = -2.0; x < 2.0; x += 0.1) EXPECT_EQ(z(x), Complex(0.0));

    auto cutoff = make_plateau(-1.0, 1.0, 0.5);
    auto p = product(xi, cutoff);
    for (double x = -0.99; x < 1.0; x += 0.01) EXPECT_NEAR(std::abs(p(x) - xi(x)), 0.0, 1e-10);
    EXPECT_EQ(combine(1.0, make_bump(0, 1), 1.0, make_bump(3, 1)).support()->hi, 4.0);
}

TEST(TestFunction, Plateau) {
    auto p = make_plateau(2.0, 3.0, 0.4);
    for (double x = 2.0; x <= 3.0; x += 0.05) EXPECT_NEAR(p(x).real(), 1.0, 1e-10);
    EXPECT_EQ(p(1.59), Complex(0.0));
    EXPECT_EQ(p(3.41), Complex(0.0));
    EXPECT_NEAR(p(3.3999).real(), 0.0, 1e-10);
    EXPECT_GT(p(1.8).real(), 0.0);
}

TEST(TestFunction, Seminorms) {
    QuadratureConfig cfg;
    auto b = make_bump(0.0, 1.0);
    EXPECT_NEAR(seminorm(b, 0, cfg), std::exp(-1.0), 1e-14);
    for (unsigned p = 0; p < 4; ++p) EXPECT_EQ(seminorm(zero_function(), p, cfg), 0.0);
    for (const auto& xi : family())
        for (unsigned p = 0; p < 3; ++p) EXPECT_LE(seminorm(xi, p, cfg), seminorm(xi, p + 1, cfg));

    // Brute-force grid maximisation at 10^6 points.
    auto g = make_gaussian(0.0, 1.0);
    double brute = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        double x = -10.0 + 20.0 * i / 1e6;
        double e = std::exp(-x * x);
        brute = std::max({brute, e, std::abs(x) * e, std::abs(2.0 * x * e), std::abs(2.0 * x * x * e)});
    }
    EXPECT_NEAR(seminorm(g, 1, cfg), brute, 1e-9);
}

TEST(TestFunction, SpaceMembership) {
    EXPECT_TRUE(belongs_to(make_bump(0.0, 1.0), SpaceTag::compact_a(1.0)));
    EXPECT_FALSE(belongs_to(make_bump(0.5, 1.0), SpaceTag::compact_a(1.0)));
    EXPECT_TRUE(belongs_to(make_bump(0.5, 1.0), SpaceTag::compact_union()));
    EXPECT_FALSE(belongs_to(make_gaussian(0.0, 1.0), SpaceTag::compact_union()));
    EXPECT_TRUE(belongs_to(make_gaussian(0.0, 1.0), SpaceTag::schwartz()));
    EXPECT_TRUE(belongs_to(zero_function(), SpaceTag::compact_a(0.1)));
}

TEST(TestFunction, MultiplierGrowthCheck) {
    auto g = make_gaussian(0.0, 1.0);
    auto m = Multiplier::polynomial({0.0, 0.0, 1.0});
    auto p = product(m, g);
    EXPECT_NEAR(p(2.0).real(), 4.0 * std::exp(-4.0), 1e-15);
}
