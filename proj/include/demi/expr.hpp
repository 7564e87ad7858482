#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "demi/core.hpp"
#include "demi/quadrature.hpp"

namespace demi {

/// Node of the expression core. eval(x, k) returns the exact k-th derivative
/// at x; every node differentiates structurally, so derivative values never
/// go through finite differences.
class Node {
public:
    virtual ~Node() = default;
    virtual Complex eval(double x, unsigned order) const = 0;
    virtual std::string describe() const = 0;
    virtual bool is_zero() const { return false; }
    /// Lower bound on the number of derivatives this node is known to be of.
    /// Lets integrate() use the fundamental theorem of calculus structurally.
    virtual unsigned derivative_depth() const { return 0; }
};

using NodePtr = std::shared_ptr<const Node>;
using Term = std::pair<Complex, NodePtr>;

NodePtr zero_node();
NodePtr constant_node(Complex c);
/// exp(1/(u^2-1)) for |u| < 1, u = (x-c)/h.
NodePtr bump_node(double c, double h);
/// p(u) exp(-u^2), u = (x-c)/s, p given by ascending coefficients.
NodePtr polygauss_node(double c, double s, std::vector<double> poly);
/// Ascending coefficients in x.
NodePtr polynomial_node(std::vector<Complex> coeffs);
/// amp * cos(omega x + phase).
NodePtr cosine_node(double amp, double omega, double phase);
NodePtr sum_node(std::vector<Term> terms);
NodePtr product_node(NodePtr a, NodePtr b);
/// x -> e(x + dx).
NodePtr shift_node(NodePtr e, double dx);
NodePtr deriv_node(NodePtr e, unsigned k);
/// x -> integral of the integrand from lo to x, tabulated on fixed panels.
/// Order k >= 1 returns the integrand at order k - 1.
NodePtr primitive_node(NodePtr integrand, Interval range, const QuadratureConfig& cfg);

/// Physicists' Hermite polynomial H_n, ascending coefficients.
std::vector<double> hermite_coefficients(unsigned n);

}  // namespace demi
