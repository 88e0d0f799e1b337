#pragma once
#include "choquard/field.hpp"

namespace choquard {

// Handling of the k = 0 mode of the kernel transform, whose continuum symbol
// diverges. `zero` drops it (the convolution output is mean-free);
// `background_subtract` removes the input mean before convolving. Both
// renormalize away the same infinite constant and agree on mean-free data.
enum class ZeroModePolicy { zero, background_subtract };

struct RieszPlan {
    Grid grid;
    double alpha = 1.0;
    ZeroModePolicy policy = ZeroModePolicy::zero;
    std::vector<double> multiplier;  // continuum symbol sampled on the mode lattice
};

// Builds the spectral multiplier c(N, alpha) |xi|^{alpha - N} on the discrete
// frequency lattice xi_m = 2 pi m / L. Requires 0 < alpha < grid.dim.
RieszPlan riesz_plan(const Grid& grid, double alpha,
                     ZeroModePolicy policy = ZeroModePolicy::zero);

// Spectral convolution |x|^{-alpha} * f: forward transform, multiply,
// inverse transform. Throws NumericalError if the imaginary residue of the
// output exceeds 1e-8 of its norm.
RealField riesz_convolve(const RieszPlan& plan, const RealField& f);

// Kernel variant for the direct-summation oracle:
//   min_image:  K(z) = 1/|z|_min^alpha with the cell-averaged (equal-volume
//               ball) analytic self entry - the literal nearest-image reading.
//   periodized: exact renormalized lattice periodization of |x|^{-alpha}
//               (the kernel the spectral multiplier realizes), evaluated by
//               an Ewald-type split; the self entry carries the lattice
//               constant that makes the direct sum match the spectral
//               operator to fourth order in the mode resolution.
enum class DirectKernel { min_image, periodized };

// O(n^2) direct circular summation oracle; grids limited to <= 2^15 points.
RealField riesz_convolve_direct(const Grid& grid, double alpha, const RealField& f,
                                DirectKernel kernel = DirectKernel::min_image);

// Kernel sample table used by riesz_convolve_direct (exposed for tests).
RealField direct_kernel_table(const Grid& grid, double alpha, DirectKernel kernel);

// Madelung-type lattice constant of the renormalized periodized kernel on the
// unit lattice; the box-L value is madelung_constant / L^alpha.
double madelung_constant(int dim, double alpha);

// interaction(u, s) = sum (|x|^{-alpha} * |u|^s) |u|^s h^dim >= 0.
// The admissible exponent window is [(2N-alpha)/N, (2N-alpha)/(N-2)];
// outside it the call throws ValidationError unless force = true.
double interaction(const ComplexField& u, double s, const RieszPlan& plan, bool force = false);

} // namespace choquard
