#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "demi/expr.hpp"
#include "demi/quadrature.hpp"

namespace demi {

class SpaceTag {
public:
    enum class Kind { CompactA, CompactUnion, Schwartz };

    static SpaceTag compact_a(double a);
    static SpaceTag compact_union() { return SpaceTag(Kind::CompactUnion, 0.0); }
    static SpaceTag schwartz() { return SpaceTag(Kind::Schwartz, 0.0); }

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    bool is_compact() const { return kind_ != Kind::Schwartz; }
    std::string to_string() const;

    bool operator==(const SpaceTag&) const = default;

private:
    SpaceTag(Kind k, double a) : kind_(k), a_(a) {}
    Kind kind_;
    double a_;
};

/// Immutable smooth function on R: an expression tree, a space tag and a
/// support bound. Compact functions evaluate to exactly 0 off their support.
class TestFunction {
public:
    TestFunction();
    TestFunction(NodePtr expr, SpaceTag space, std::optional<Interval> support, std::string label = {});

    Complex operator()(double x) const { return value(x, 0); }
    /// k-th derivative at x, without building a derivative node.
    Complex value(double x, unsigned order) const;

    const NodePtr& expr() const { return expr_; }
    const SpaceTag& space() const { return space_; }
    const std::optional<Interval>& support() const { return support_; }
    bool is_compact() const { return support_.has_value(); }
    bool is_zero() const { return expr_->is_zero(); }
    const std::string& label() const { return label_; }

    TestFunction with_label(std::string label) const;
    /// Support if compact, otherwise [-R, R] with R the truncation radius.
    Interval integration_range(const QuadratureConfig& cfg) const;

private:
    NodePtr expr_;
    SpaceTag space_;
    std::optional<Interval> support_;
    std::string label_;
};

/// Smooth multiplier for the action (zeta f)(xi) = f(zeta xi). Need not decay.
class Multiplier {
public:
    static Multiplier constant(Complex c);
    /// Ascending coefficients in x.
    static Multiplier polynomial(std::vector<Complex> coeffs);
    static Multiplier cosine(double omega, double phase);
    static Multiplier from_test_function(const TestFunction& xi);

    const NodePtr& expr() const { return expr_; }
    bool polynomial_growth() const { return poly_growth_; }
    const std::optional<Interval>& support() const { return support_; }
    const std::string& label() const { return label_; }
    /// Set for constant multipliers, which act by plain scaling.
    const std::optional<Complex>& constant_value() const { return constant_; }
    Multiplier derivative(unsigned k) const;
    Multiplier scaled(Complex c) const;

private:
    Multiplier(NodePtr e, bool poly, std::optional<Interval> supp, std::string label)
        : expr_(std::move(e)), poly_growth_(poly), support_(supp), label_(std::move(label)) {}
    NodePtr expr_;
    bool poly_growth_;
    std::optional<Interval> support_;
    std::string label_;
    std::optional<Complex> constant_;
};

TestFunction zero_function();
TestFunction make_bump(double c, double h);
/// exp(-((x-c)/s)^2), tagged Schwartz.
TestFunction make_gaussian(double c, double s);
/// H_n((x-c)/s) exp(-((x-c)/s)^2).
TestFunction make_hermite_gaussian(unsigned n, double c, double s);
/// Smooth cutoff equal to 1 on [a, b], supported on [a - margin, b + margin].
TestFunction make_plateau(double a, double b, double margin, const QuadratureConfig& cfg = {});

Complex evaluate(const TestFunction& xi, double x);
TestFunction derivative(const TestFunction& xi, unsigned k);
/// tau -> xi(x + tau).
TestFunction translate(const TestFunction& xi, double x);
TestFunction combine(Complex a, const TestFunction& xi, Complex b, const TestFunction& eta);
TestFunction scale(Complex a, const TestFunction& xi);
TestFunction product(const TestFunction& xi, const TestFunction& eta);
TestFunction product(const Multiplier& m, const TestFunction& xi);
/// Primitive x -> integral of xi from the left end of range to x; supported on range.
TestFunction running_integral(const TestFunction& xi, Interval range, const QuadratureConfig& cfg);

/// Adaptive quadrature over the support (Schwartz: truncated). Derivative
/// nodes integrate to exactly 0.
Complex integrate(const TestFunction& xi, const QuadratureConfig& cfg = {});
/// Integral of h(xi(x)) over xi's integration range, or over the given range.
QuadratureResult integrate_composed(const TestFunction& xi, const std::function<Complex(Complex)>& h,
                                    const QuadratureConfig& cfg, std::optional<Interval> range = std::nullopt);
QuadratureResult integrate_detailed(const TestFunction& xi, const QuadratureConfig& cfg = {});

/// p-th seminorm in xi's own space.
double seminorm(const TestFunction& xi, unsigned p, const QuadratureConfig& cfg = {});
/// p-th seminorm of the given space: sup max_{q<=p} |D^q xi| on compact
/// spaces, sup max_{k,q<=p} |x^k D^q xi| on the Schwartz space.
double seminorm(const TestFunction& xi, unsigned p, const SpaceTag& space, const QuadratureConfig& cfg = {});

/// Whether xi lies in the given space (support check for compact spaces).
bool belongs_to(const TestFunction& xi, const SpaceTag& space);

}  // namespace demi
