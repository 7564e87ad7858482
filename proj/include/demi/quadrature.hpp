#pragma once

#include <functional>

#include "demi/core.hpp"

namespace demi {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    double schwartz_truncation_radius = 40.0;
    int seminorm_grid = 4001;

    void validate() const;
};

struct QuadratureResult {
    Complex value;
    double error = 0.0;
    int intervals = 0;
};

using ScalarFn = std::function<Complex(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b].
/// Stops once the summed error estimate is <= max(abs_tol, rel_tol * |I|).
/// Throws ConvergenceError after max_subdivisions bisections.
/// initial_panels > 1 seeds a uniform partition, for integrands whose mass may
/// sit between the nodes of a single wide panel.
QuadratureResult integrate_adaptive(const ScalarFn& f, double a, double b,
                                    const QuadratureConfig& cfg, int initial_panels = 1);

inline Complex integrate_interval(const ScalarFn& f, double a, double b,
                                  const QuadratureConfig& cfg, int initial_panels = 1) {
    return integrate_adaptive(f, a, b, cfg, initial_panels).value;
}

}  // namespace demi
