#pragma once
#include <functional>

namespace choquard {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over the finite interval
// [a, b]: globally adaptive, always bisecting the panel with the largest
// error estimate, until the summed estimate is below
// max(abs_tol, rel_tol * |value|).
// Throws NumericalError if the subdivision budget is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-12,
                           int max_subdivisions = 4000);

// Integration over [a, +inf) via the substitution r = a + t/(1-t), t in [0,1).
// The integrand must decay fast enough for the transformed integrand to stay
// bounded (polynomial decay faster than 1/r^2 suffices).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double abs_tol = 1e-12, double rel_tol = 1e-12);

} // namespace choquard
