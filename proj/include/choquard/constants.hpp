#pragma once
#include "choquard/params.hpp"

namespace choquard {

struct ConstantsReport {
    double hls_constant = 0.0;  // C(N, alpha)
    double sobolev = 0.0;       // S
    double shl = 0.0;           // S_{H,L}
    double threshold = 0.0;     // compactness threshold level for the family
};

// Sharp constant of the symmetric Hardy-Littlewood-Sobolev inequality:
//   C(N, alpha) = pi^{alpha/2} Gamma(N/2 - alpha/2)/Gamma(N - alpha/2)
//                 * (Gamma(N/2)/Gamma(N))^{-1 + alpha/N}.
double hls_sharp_constant(int dim, double alpha);

// Best constant of the Sobolev embedding H^1 -> L^{2*}, computed two ways:
// (a) radial quadrature of |grad U|^2 / (int U^{2*})^{2/2*} for the explicit
//     extremal bubble, (b) closed form pi N (N-2) (Gamma(N/2)/Gamma(N))^{2/N}.
// The two paths must agree to 1e-6 relative or a NumericalError is thrown;
// the closed-form value is returned.
double best_sobolev_constant(int dim);

// S_{H,L} = S / C(N, alpha)^{(N-2)/(2N-alpha)}.
double shl_constant(int dim, double alpha);

// Compactness threshold level:
//   families A, B: ((N+2-alpha)/(2(2N-alpha))) * S_{H,L}^{(2N-alpha)/(N+2-alpha)}
//   family C:      (1/N) * S^{N/2}.
double ps_threshold(const ProblemParams& params);

// Fourier symbol prefactor of the kernel |x|^{-alpha}:
//   c(N, alpha) = pi^{N/2} 2^{N-alpha} Gamma((N-alpha)/2) / Gamma(alpha/2).
double riesz_symbol_constant(int dim, double alpha);

ConstantsReport constants_report(const ProblemParams& params);

} // namespace choquard
