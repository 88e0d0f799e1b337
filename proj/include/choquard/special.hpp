#pragma once

namespace choquard {

// Euler Gamma function, Lanczos approximation (g = 7, 9 coefficients).
// Relative error <= 1e-13 on (0, 50]; throws ValidationError for x <= 0,
// NumericalError on overflow.
double gamma_fn(double x);

// log Gamma for positive x (same Lanczos core, overflow-free).
double lgamma_fn(double x);

// Regularized incomplete gamma functions, a > 0, x >= 0:
//   gamma_p(a,x) = gamma(a,x)/Gamma(a)   (lower)
//   gamma_q(a,x) = Gamma(a,x)/Gamma(a)   (upper), gamma_p + gamma_q = 1.
// Series expansion for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

} // namespace choquard
