#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "demi/demidist.hpp"

namespace demi {

/// zeta(sigma) = sum of c * p(sigma) * integral xi(x) e^{i x sigma} dx over
/// source terms, plus sampled terms with a declared decay radius. Evaluated at
/// real sigma only.
class TransformFunction {
public:
    struct SourceTerm {
        Complex coeff;
        TestFunction source;
        std::vector<Complex> poly;  ///< ascending coefficients in sigma
    };
    struct SampledTerm {
        Complex coeff;
        std::function<Complex(double)> fn;
        double decay_radius;
        std::vector<Complex> poly;
    };

    TransformFunction() = default;
    TransformFunction(std::vector<SourceTerm> src, std::vector<SampledTerm> smp, std::string label,
                      QuadratureConfig cfg);

    /// Value at sigma by adaptive quadrature of the defining integrals.
    Complex operator()(double sigma) const;
    /// k-th sigma-derivative of the source terms via the moments of (ix)^k xi.
    Complex derivative(double sigma, unsigned k) const;

    const std::vector<SourceTerm>& source_terms() const { return src_; }
    const std::vector<SampledTerm>& sampled_terms() const { return smp_; }
    const std::string& label() const { return label_; }
    const QuadratureConfig& quadrature() const { return cfg_; }
    bool is_zero() const { return src_.empty() && smp_.empty(); }
    /// "S" when any ingredient is rapidly decreasing, else "Z(a)".
    std::string space_label() const;

private:
    std::vector<SourceTerm> src_;
    std::vector<SampledTerm> smp_;
    std::string label_;
    QuadratureConfig cfg_;
};

/// F(xi)(sigma) = integral xi(x) e^{+i x sigma} dx.
TransformFunction fourier_test(const TestFunction& xi, const QuadratureConfig& cfg = {});
TransformFunction combine(Complex a, const TransformFunction& z, Complex b, const TransformFunction& w);
/// sigma -> p(sigma) z(sigma), p given by ascending coefficients.
TransformFunction multiply_sigma_polynomial(const TransformFunction& z, std::vector<Complex> coeffs);
/// A user-supplied transform-side function, negligible for |sigma| >= decay_radius.
TransformFunction sampled_transform(std::function<Complex(double)> fn, double decay_radius, std::string label,
                                    const QuadratureConfig& cfg = {});

struct InverseGrid {
    double radius = 0.0;      ///< sigma truncation R
    double sigma_step = 0.0;  ///< trapezoid spacing in sigma
    std::size_t nodes = 0;
};

/// x -> (1/2pi) integral zeta(sigma) e^{-i x sigma} d sigma by a truncated
/// trapezoid sum; derivatives multiply the summand by (-i sigma)^k. Compact
/// sources keep their support. Throws ConvergenceError if the transform does
/// not decay within the largest admissible radius.
TestFunction inverse_fourier_test(const TransformFunction& zeta, const QuadratureConfig& cfg = {},
                                  InverseGrid* grid = nullptr);

/// F(f)(zeta) = 2pi f(F^{-1} zeta), evaluated through the numerical inverse.
class TransformFunctional {
public:
    TransformFunctional(SpanElement source, QuadratureConfig cfg);

    Complex operator()(const TransformFunction& zeta) const;
    const SpanElement& source() const { return source_; }
    const std::string& label() const { return label_; }
    /// Class data of a single-term source; spans of linear functionals are Linear.
    ClassTag class_tag() const;
    const GammaFn& gamma() const;
    /// zeta in F(U) iff F^{-1} zeta in U.
    bool nbhd_contains(const TransformFunction& zeta) const;
    bool real_field() const;
    const QuadratureConfig& quadrature() const { return cfg_; }

private:
    const DemiDistribution& single() const;
    SpanElement source_;
    std::string label_;
    QuadratureConfig cfg_;
};

TransformFunctional fourier_functional(const DemiDistribution& f, const QuadratureConfig& cfg = {});
TransformFunctional fourier_functional(const SpanElement& f, const QuadratureConfig& cfg = {});

/// xi -> sin(e^{-1} integral xi): the homogeneous solution built from
/// f0 = sin o delta and the unit bump.
DemiDistribution sine_of_mean(const QuadratureConfig& cfg = {});

/// |Ff(sigma -> i sigma zeta(sigma))|.
double null_identity_check(const TransformFunctional& Ff, const TransformFunction& zeta);

/// (C delta(F xi), F(f)(F xi)) with f = sine_of_mean: C int xi versus
/// 2pi sin(e^{-1} int xi).
std::pair<Complex, Complex> delta_vs_transform_check(Complex C, const TestFunction& xi,
                                                     const QuadratureConfig& cfg = {});

/// Transform-side feasibility check against the source functional's gamma.
WitnessReport check_demi_linearity(const TransformFunctional& Ff, const TransformFunction& zeta,
                                   const TransformFunction& eta, Complex t, ClassTag cls);

}  // namespace demi
