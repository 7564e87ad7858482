#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace demi {

using Complex = std::complex<double>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
    double radius() const { return std::max(std::abs(lo), std::abs(hi)); }
    Interval shifted(double d) const { return {lo + d, hi + d}; }
};

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// Thrown when adaptive quadrature (or a truncated transform) cannot reach the
/// requested tolerance. Carries the best available estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Complex best, double err)
        : std::runtime_error(what), best_(best), err_(err) {}
    Complex best_estimate() const { return best_; }
    double error_estimate() const { return err_; }

private:
    Complex best_;
    double err_;
};

/// A documented precondition of an operation was violated by its inputs.
class PreconditionViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace demi
