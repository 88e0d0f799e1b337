#pragma once
#include "choquard/potentials.hpp"

namespace choquard {

enum class DerivativeKind { central, spectral };

struct DiamagneticReport {
    double fraction_satisfied = 0.0;
    double max_violation = 0.0;  // max over points of |grad|u|| - |grad_A u|
};

// Periodic central difference along one axis: (u_{j+1} - u_{j-1}) / (2h).
ComplexField central_difference(const ComplexField& u, int axis);

// Covariant gradient components (grad + iA) u. The default stencil is the
// periodic central difference; the spectral variant (exact for band-limited
// fields) is available for convergence studies.
std::vector<ComplexField> covariant_gradient(const ComplexField& u, const PotentialSet& pots,
                                             DerivativeKind kind = DerivativeKind::central);

// The quadratic-form representative of the covariant kinetic operator:
// sum_j D_j^dag (D_j u) with D_j^dag = -D_j for the central stencil, so that
// <apply_kinetic(u), psi>_{L^2} = sum_j <D_j u, D_j psi>_{L^2} exactly.
ComplexField apply_kinetic(const ComplexField& u, const PotentialSet& pots);

enum class ScalarChoice { periodic, effective };

// sum (|grad_A u|^2 + V_sel |u|^2) h^dim.
double magnetic_norm_sq(const ComplexField& u, const PotentialSet& pots, ScalarChoice scalar,
                        DerivativeKind kind = DerivativeKind::central);

// Diagnostic cross term 2 sum A . Im(conj(u) grad u) h^dim, the piece by which
// |grad_A u|^2 differs from |grad u|^2 + |A|^2 |u|^2 for complex fields.
double magnetic_cross_term(const ComplexField& u, const PotentialSet& pots);

// Pointwise comparison |grad|u|| <= |grad_A u| + tol with the same central
// stencil on both sides. tol < 0 selects the default 10 * spacing.
DiamagneticReport diamagnetic_check(const ComplexField& u, const PotentialSet& pots,
                                    double tol = -1.0);

// e^{i chi} u for a real phase field chi.
ComplexField gauge_rotate(const ComplexField& u, const RealField& chi);

} // namespace choquard
