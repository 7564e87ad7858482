#include "demi/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace demi {

double Sampler::uniform(double a, double b) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

int Sampler::integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
}

double Sampler::sign() { return (rng_() >> 63) ? -1.0 : 1.0; }

TestFunction Sampler::bumps(double half_width_max, double reach) {
    const int n = integer(1, 2);
    TestFunction acc = zero_function();
    std::ostringstream label;
    for (int i = 0; i < n; ++i) {
        const double h = uniform(std::min(0.2, 0.5 * half_width_max), half_width_max);
        const double c = uniform(-(reach - h), reach - h);
        const double a = sign() * uniform(0.5, 2.0);
        acc = combine(1.0, acc, a, make_bump(c, h));
        label << (i ? "+" : "") << a << "*bump(" << c << "," << h << ")";
    }
    return acc.with_label(label.str());
}

TestFunction Sampler::compact_unit() { return bumps(0.6, 1.0); }

TestFunction Sampler::compact() { return bumps(1.0, 2.0); }

TestFunction Sampler::schwartz() {
    const unsigned n = static_cast<unsigned>(integer(0, 3));
    const double c = uniform(-1.0, 1.0);
    const double s = uniform(0.5, 1.2);
    const double a = sign() * uniform(0.5, 2.0);
    std::ostringstream label;
    label << a << "*hg" << n << "(" << c << "," << s << ")";
    return scale(a, make_hermite_gaussian(n, c, s)).with_label(label.str());
}

TestFunction Sampler::any() { return integer(0, 1) ? schwartz() : compact(); }

TestFunction Sampler::for_space(const SpaceTag& space) {
    switch (space.kind()) {
        case SpaceTag::Kind::CompactA:
            if (space.a() >= 2.0) return compact();
            return space.a() >= 1.0 ? compact_unit() : bumps(0.6 * space.a(), space.a());
        case SpaceTag::Kind::CompactUnion: return compact();
        case SpaceTag::Kind::Schwartz: return any();
    }
    return any();
}

TestFunction Sampler::inside(const DemiDistribution& f) { return inside(f, for_space(f.space())); }

TestFunction Sampler::inside(const DemiDistribution& f, TestFunction eta) {
    const auto& cfg = f.quadrature();
    if (f.nbhd().is_whole()) return eta;
    const double s = f.nbhd().fit_factor(eta, cfg);
    const std::string base = eta.label();
    if (s < 1.0) eta = scale(s, eta);
    for (int i = 0; i < 60 && !f.nbhd().contains(eta, cfg); ++i) eta = scale(0.5, eta);
    if (!f.nbhd().contains(eta, cfg)) throw std::runtime_error("could not fit a sample inside U of " + f.label());
    return eta.with_label(s < 1.0 ? "scaled(" + base + ")" : base);
}

Complex Sampler::unit_disk() {
    const double r = std::sqrt(uniform(0.0, 1.0));
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, th);
}

double Sampler::unit_real() { return uniform(-1.0, 1.0); }

Complex Sampler::scalar_for(const DemiDistribution& f) {
    return f.real_field() ? Complex(unit_real()) : unit_disk();
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view name) {
    std::uint64_t h = 1469598103934665603ULL ^ base;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    // splitmix64 finalizer
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

}  // namespace demi
