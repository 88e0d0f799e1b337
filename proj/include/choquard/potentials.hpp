#pragma once
#include "choquard/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace choquard {

// Closed-form potential specification. All profiles are exactly periodic on
// the box (the well by compact support inside one period).
//
//   magnetic "none":     A = 0
//   magnetic "builtin":  A(x) = a0 * (sin(2 pi x_2 / L), 0, ...), needs dim >= 2
//   scalar:              V_P(x) = v0 + v1 * prod_i cos^2(2 pi x_i / L)
//   well:                W(x) = w0 * exp(-|x - x0|^2 / sigma^2) on |x - x0| < 3 sigma,
//                        0 outside; x0 = box center (the coordinate origin)
//   gauge_chi0:          when nonzero, adds grad(chi) to A with
//                        chi(x) = (chi0 L / (2 pi)) sin(2 pi x_1 / L),
//                        i.e. A_1 += chi0 cos(2 pi x_1 / L).
struct PotentialSpec {
    std::string magnetic = "builtin";  // "none" | "builtin"
    double a0 = 0.5;
    double v0 = 1.0;
    double v1 = 0.5;
    double w0 = 0.2;    // 0 disables the well
    double sigma = 1.0;
    double gauge_chi0 = 0.0;
};

struct PotentialSet {
    Grid grid;
    std::vector<RealField> vector_potential;  // dim components
    RealField periodic_scalar;                // V_P
    RealField perturbation;                   // W
    RealField effective_scalar;               // V = V_P - W
    double min_periodic = 0.0;                // min V_P (the sampled V0 bound)
    double min_effective = 0.0;               // min V (the sampled W0 bound)
    bool has_magnetic = false;                // any nonzero A sample
};

// Samples the potential functions on the grid and validates the positivity
// hypotheses:
// min V_P > 0 and min (V_P - W) > 0, W >= 0 everywhere. Throws
// ValidationError with the offending minimum otherwise.
PotentialSet sample_potentials(const Grid& grid, const PotentialSpec& spec);

// The gauge phase chi sampled on the grid (for building e^{i chi} u pairs).
RealField gauge_phase(const Grid& grid, double chi0);

} // namespace choquard
