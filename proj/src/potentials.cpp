#include "choquard/potentials.hpp"
#include "choquard/errors.hpp"

#include <cmath>
#include <sstream>

namespace choquard {

PotentialSet sample_potentials(const Grid& grid, const PotentialSpec& spec) {
    if (spec.magnetic != "none" && spec.magnetic != "builtin") {
        throw ValidationError("sample_potentials: magnetic spec must be 'none' or 'builtin', got '"
                              + spec.magnetic + "'");
    }
    if (spec.magnetic == "builtin" && spec.a0 != 0.0 && grid.dim < 2) {
        throw ValidationError("sample_potentials: builtin magnetic profile needs dim >= 2");
    }
    if (spec.w0 < 0.0) {
        throw ValidationError("sample_potentials: well amplitude w0 must be >= 0");
    }
    if (spec.w0 > 0.0 && !(spec.sigma > 0.0)) {
        throw ValidationError("sample_potentials: well width sigma must be > 0");
    }

    PotentialSet ps;
    ps.grid = grid;
    const double two_pi_over_L = 2.0 * M_PI / grid.L;

    ps.vector_potential.assign(grid.dim, RealField(grid));
    if (spec.magnetic == "builtin" && grid.dim >= 2 && spec.a0 != 0.0) {
        RealField& a1 = ps.vector_potential[0];
        const std::size_t tot = grid.total();
        for (std::size_t f = 0; f < tot; ++f) {
            auto idx = grid.unflat(f);
            a1.v[f] = spec.a0 * std::sin(two_pi_over_L * grid.coord(idx[1]));
        }
        ps.has_magnetic = true;
    }
    if (spec.gauge_chi0 != 0.0) {
        RealField& a1 = ps.vector_potential[0];
        const std::size_t tot = grid.total();
        for (std::size_t f = 0; f < tot; ++f) {
            auto idx = grid.unflat(f);
            a1.v[f] += spec.gauge_chi0 * std::cos(two_pi_over_L * grid.coord(idx[0]));
        }
        ps.has_magnetic = true;
    }

    ps.periodic_scalar = RealField(grid);
    ps.perturbation = RealField(grid);
    ps.effective_scalar = RealField(grid);
    const std::size_t tot = grid.total();
    double min_vp = 0.0, min_eff = 0.0;
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = grid.unflat(f);
        double prod = 1.0;
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            double x = grid.coord(idx[d]);
            double c = std::cos(two_pi_over_L * x);
            prod *= c * c;
            r2 += x * x;
        }
        double vp = spec.v0 + spec.v1 * prod;
        double w = 0.0;
        if (spec.w0 > 0.0) {
            double s2 = spec.sigma * spec.sigma;
            if (r2 < 9.0 * s2) {
                w = spec.w0 * std::exp(-r2 / s2);
            }
        }
        ps.periodic_scalar.v[f] = vp;
        ps.perturbation.v[f] = w;
        ps.effective_scalar.v[f] = vp - w;
        if (f == 0 || vp < min_vp) min_vp = vp;
        if (f == 0 || vp - w < min_eff) min_eff = vp - w;
    }
    ps.min_periodic = min_vp;
    ps.min_effective = min_eff;

    std::ostringstream err;
    if (!(min_vp > 0.0)) {
        err << "sample_potentials: periodic scalar potential must be positive; min V_P = " << min_vp;
        throw ValidationError(err.str());
    }
    if (!(min_eff > 0.0)) {
        err << "sample_potentials: effective potential must stay positive; min (V_P - W) = "
            << min_eff;
        throw ValidationError(err.str());
    }
    return ps;
}

RealField gauge_phase(const Grid& grid, double chi0) {
    RealField chi(grid);
    const double two_pi_over_L = 2.0 * M_PI / grid.L;
    const std::size_t tot = grid.total();
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = grid.unflat(f);
        chi.v[f] = chi0 * grid.L / (2.0 * M_PI) * std::sin(two_pi_over_L * grid.coord(idx[0]));
    }
    return chi;
}

} // namespace choquard
