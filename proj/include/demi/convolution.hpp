#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "demi/calculus.hpp"

namespace demi {

/// A distribution with bounded support acting by (f0 * xi)(x) = f0(xi(x + .)).
class ConvolutionMultiplier {
public:
    enum class Kind { Dirac, DiracDerivative, CompactRegular };

    static ConvolutionMultiplier dirac();
    static ConvolutionMultiplier dirac_derivative(unsigned k);
    /// xi -> integral g(tau) xi(tau) d tau for compactly supported g.
    static ConvolutionMultiplier compact_regular(const TestFunction& g, const QuadratureConfig& cfg = {});
    /// g_k = k bump(0, 1/k) / I0, normalized to unit mass.
    static ConvolutionMultiplier mollifier(int k, const QuadratureConfig& cfg = {});

    Kind kind() const { return kind_; }
    unsigned order() const { return order_; }
    Complex coefficient() const { return coeff_; }
    const TestFunction& density() const { return g_; }
    Interval support_bound() const;
    std::string label() const;
    const QuadratureConfig& quadrature() const { return cfg_; }

    /// D^k f0: the Dirac family shifts its order; a regular density g becomes g^(k).
    ConvolutionMultiplier derivative(unsigned k) const;
    ConvolutionMultiplier scaled(Complex t) const;
    /// f0 applied to a test function.
    Complex apply(const TestFunction& xi) const;

private:
    ConvolutionMultiplier(Kind k, unsigned order, TestFunction g, QuadratureConfig cfg)
        : kind_(k), order_(order), g_(std::move(g)), cfg_(cfg) {}
    Kind kind_;
    unsigned order_ = 0;
    Complex coeff_ = 1.0;
    TestFunction g_;
    QuadratureConfig cfg_;
};

/// x -> f0(xi(x + .)). Regular multipliers keep the defining integral for
/// derivatives of every order: D^k(f0 * xi) = f0 * xi^(k).
TestFunction convolve_test(const ConvolutionMultiplier& f0, const TestFunction& xi);
/// (f0 * f)(xi) = f(f0 * xi).
DemiDistribution convolve_functional(const ConvolutionMultiplier& f0, const DemiDistribution& f);
SpanElement convolve_functional(const ConvolutionMultiplier& f0, const SpanElement& f);

struct ScalarCompatResiduals {
    double test_side = 0.0;               ///< sup |t (f0 * xi) - (t f0) * xi|
    double functional_side = 0.0;         ///< |t (f0 * f)(xi) - (f0 * (t f))(xi)|
    std::optional<double> linear_side;    ///< |t (f0 * f)(xi) - ((t f0) * f)(xi)|, linear f only
};
ScalarCompatResiduals scalar_compat_check(const ConvolutionMultiplier& f0, const DemiDistribution& f, Complex t,
                                          const TestFunction& xi);

struct ExchangeResiduals {
    double diffop_on_test = 0.0;   ///< sup |(P(D) f0) * xi - sum a_k (-1)^k f0 * xi^(k)|
    double derivative_swap = 0.0;  ///< max_k of |D^k(f0*f) - (D^k f0)*f| and |D^k(f0*f) - f0*D^k f|
    double diffop_on_functional = 0.0;  ///< |P(D)(f0 * f) - f0 * [P(D) f]|
    double max() const { return std::max({diffop_on_test, derivative_swap, diffop_on_functional}); }
};
ExchangeResiduals diffop_exchange_check(const DiffOperator& P, const ConvolutionMultiplier& f0, const SpanElement& f,
                                        const TestFunction& xi);

/// Gaps sup_B |(f_k * g_m)(xi) - (f * g)(xi)| along the diagonal k = m = 1..k_max
/// and on a coarse (k, m) grid.
struct ContinuityReport {
    std::vector<double> diagonal;
    std::vector<int> grid_index;
    std::vector<std::vector<double>> grid;  ///< grid[i][j] for k = grid_index[i], m = grid_index[j]
    bool monotone_from(int k0, double slack = 0.0) const;
    bool grid_monotone(double slack = 0.0) const;
    double gap_at(int k) const { return diagonal.at(static_cast<std::size_t>(k - 1)); }
};
ContinuityReport convolution_continuity_check(const std::function<ConvolutionMultiplier(int)>& f_seq,
                                              const ConvolutionMultiplier& f_lim,
                                              const std::function<DemiDistribution(int)>& g_seq,
                                              const DemiDistribution& g_lim, const std::vector<TestFunction>& B,
                                              int k_max, std::vector<int> grid_index = {1, 2, 5, 10, 20, 50, 100});

/// sup of |a(x) - b(x)| on a uniform grid over the union of both supports.
double sup_distance(const TestFunction& a, const TestFunction& b, int points = 401, const QuadratureConfig& cfg = {});

}  // namespace demi
