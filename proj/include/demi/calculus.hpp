#pragma once

#include <vector>

#include "demi/demidist.hpp"

namespace demi {

/// P(D) = sum a_k D^k with distinct orders.
class DiffOperator {
public:
    explicit DiffOperator(std::vector<std::pair<Complex, unsigned>> terms);
    static DiffOperator identity() { return DiffOperator({{1.0, 0}}); }
    static DiffOperator d(unsigned k) { return DiffOperator({{1.0, k}}); }

    const std::vector<std::pair<Complex, unsigned>>& terms() const { return terms_; }
    std::string describe() const;

private:
    std::vector<std::pair<Complex, unsigned>> terms_;
};

/// (D^k f)(xi) = f((-1)^k xi^(k)); balls of U move from p to p + k.
DemiDistribution derivative_functional(const DemiDistribution& f, unsigned k);
SpanElement derivative_functional(const SpanElement& f, unsigned k);
/// P(D) f = sum a_k D^k f.
SpanElement apply_operator(const DiffOperator& P, const SpanElement& f);
/// P(D) xi = sum a_k xi^(k).
TestFunction apply_operator(const DiffOperator& P, const TestFunction& xi);

/// max over samples of |D^k(h o f)(xi) - (h o D^k f)(xi)|.
double compose_derivative_identity_check(const ScalarMap& h, const DemiDistribution& f, unsigned k,
                                         const std::vector<TestFunction>& samples);

/// (zeta f)(xi) = f(zeta xi).
DemiDistribution multiply(const Multiplier& zeta, const DemiDistribution& f);
DemiDistribution multiply(const TestFunction& zeta, const DemiDistribution& f);
SpanElement multiply(const Multiplier& zeta, const SpanElement& f);

/// xi / integral(xi). Throws std::invalid_argument when the integral vanishes.
TestFunction normalized(const TestFunction& xi, const QuadratureConfig& cfg = {});

/// A(xi) = xi - (integral xi) zeta for normalized zeta. Returns xi itself when
/// its integral is structurally zero.
TestFunction projection_A(const TestFunction& xi, const TestFunction& zeta, const QuadratureConfig& cfg = {});
/// T(xi)(x) = integral from -inf to x of A(xi); compact inputs only. The result
/// carries A(xi) as its exact first derivative.
TestFunction primitive_T(const TestFunction& xi, const TestFunction& zeta, const QuadratureConfig& cfg = {});

/// y(xi) = f0((integral xi) xi0): a solution of y' = 0.
DemiDistribution solve_homogeneous(const DemiDistribution& f0, const TestFunction& xi0,
                                   const QuadratureConfig& cfg = {});
/// y(xi) = f(-T(xi, zeta / integral zeta)): a solution of y' = f.
DemiDistribution solve_inhomogeneous(const DemiDistribution& f, const TestFunction& zeta,
                                     const QuadratureConfig& cfg = {});
/// g = g0 + y_zeta, with g0 = solve_homogeneous(f0, xi0).
SpanElement general_solution(const DemiDistribution& f, const DemiDistribution& f0, const TestFunction& xi0,
                             const TestFunction& zeta, const QuadratureConfig& cfg = {});

/// |y(xi / int xi) - y(eta / int eta)|; inputs already in E_1 pass unchanged.
double invariance_check_E1(const DemiDistribution& y, const TestFunction& xi, const TestFunction& eta,
                           const QuadratureConfig& cfg = {});

/// Outer estimate of supp f: grid centres c in the window where
/// |f(bump(c, h))| > tol, refined from the coarsest probe scale to the finest
/// one, merged into maximal intervals. Cannot certify emptiness.
std::vector<Interval> estimate_support(const DemiDistribution& f, Interval window, double resolution,
                                       std::vector<double> probe_scales = {0.5, 0.25, 0.125}, double tol = 1e-10);

}  // namespace demi
