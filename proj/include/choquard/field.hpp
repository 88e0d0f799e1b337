#pragma once
#include "choquard/grid.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace choquard {

using cplx = std::complex<double>;

struct ComplexField {
    Grid grid;
    std::vector<cplx> v;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), v(g.total(), cplx{0.0, 0.0}) {}

    // Throws ValidationError if any sample is non-finite.
    void check_finite(const char* context) const;
};

struct RealField {
    Grid grid;
    std::vector<double> v;

    RealField() = default;
    explicit RealField(const Grid& g) : grid(g), v(g.total(), 0.0) {}
};

// Evaluates fn(x) at every grid point, x given as a dim-long coordinate array.
ComplexField sample_complex(const Grid& g, const std::function<cplx(const std::array<double, 4>&)>& fn);
RealField sample_real(const Grid& g, const std::function<double(const std::array<double, 4>&)>& fn);

// Discrete L^p norm with cell-volume weight: (sum |u|^p h^dim)^{1/p}. p >= 1.
double lp_norm(const ComplexField& u, double p);

// sum u conj(w) h^dim.
cplx l2_inner(const ComplexField& u, const ComplexField& w);
double l2_norm(const ComplexField& u);

ComplexField scaled(const ComplexField& u, double t);

// Periodic shift by whole grid cells (positive = toward larger coordinates).
ComplexField shifted(const ComplexField& u, const std::array<int, 4>& cells);

// Deterministic smooth band-limited field: a seeded sum of Fourier modes
// |m|_inf <= mode_cap with Gaussian-damped coefficients, optionally multiplied
// by a Gaussian envelope exp(-|x|^2 / envelope_sigma^2) (envelope_sigma <= 0
// disables the envelope). Fully reproducible from the seed.
ComplexField smooth_seeded_field(const Grid& g, std::uint64_t seed, int mode_cap = 2,
                                 double envelope_sigma = 0.0);

} // namespace choquard
