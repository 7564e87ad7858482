#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "demi/demidist.hpp"

namespace demi {

/// Seeded sampler of test functions and scalars. Draws use the raw engine
/// output only, so sequences are identical across standard libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b);
    int integer(int lo, int hi);  ///< inclusive
    double sign();

    /// One or two bumps inside [-1, 1], i.e. in D_1.
    TestFunction compact_unit();
    /// One or two bumps inside [-2, 2].
    TestFunction compact();
    /// Gaussian or Hermite-gaussian of order <= 3.
    TestFunction schwartz();
    /// Compact or Schwartz with equal probability.
    TestFunction any();
    /// A sample from f's natural family.
    TestFunction for_space(const SpaceTag& space);

    /// A sample rescaled strictly inside f's neighborhood U.
    TestFunction inside(const DemiDistribution& f);
    TestFunction inside(const DemiDistribution& f, TestFunction eta);

    /// Uniform on the closed unit disk.
    Complex unit_disk();
    /// Uniform on [-1, 1].
    double unit_real();
    /// unit_disk() or unit_real() depending on the scalar field of f.
    Complex scalar_for(const DemiDistribution& f);

private:
    TestFunction bumps(double half_width_max, double reach);
    std::mt19937_64 rng_;
};

/// Stable seed for a named stream derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view name);

}  // namespace demi
