#include "choquard/stencil.hpp"
#include "choquard/errors.hpp"
#include "choquard/fft.hpp"

#include <cmath>

namespace choquard {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
    if (!(a == b)) {
        throw ValidationError(std::string(context) + ": grid mismatch");
    }
}

// Stride (in flat index units) of one step along `axis`.
std::size_t axis_stride(const Grid& g, int axis) {
    std::size_t s = 1;
    for (int d = g.dim - 1; d > axis; --d) s *= static_cast<std::size_t>(g.n);
    return s;
}

ComplexField spectral_derivative(const ComplexField& u, int axis) {
    const Grid& g = u.grid;
    ComplexField out = u;
    dft_inplace(g.dim, g.n, out.v.data(), -1);
    const double two_pi_over_L = 2.0 * M_PI / g.L;
    const std::size_t tot = g.total();
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = g.unflat(f);
        int m = idx[axis];
        if (m > g.n / 2) m -= g.n;
        if (2 * m == g.n) m = 0;  // drop the unpaired Nyquist mode of the derivative
        out.v[f] *= cplx{0.0, m * two_pi_over_L};
    }
    dft_inplace(g.dim, g.n, out.v.data(), +1);
    const double inv = 1.0 / static_cast<double>(tot);
    for (cplx& z : out.v) z *= inv;
    return out;
}

} // namespace

ComplexField central_difference(const ComplexField& u, int axis) {
    const Grid& g = u.grid;
    if (axis < 0 || axis >= g.dim) {
        throw ValidationError("central_difference: axis out of range");
    }
    ComplexField out(g);
    const std::size_t stride = axis_stride(g, axis);
    const std::size_t block = stride * static_cast<std::size_t>(g.n);
    const double inv2h = 1.0 / (2.0 * g.h);
    const std::size_t tot = g.total();
    for (std::size_t base = 0; base < tot; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int j = 0; j < g.n; ++j) {
                std::size_t here = base + off + static_cast<std::size_t>(j) * stride;
                std::size_t up = base + off + static_cast<std::size_t>((j + 1) % g.n) * stride;
                std::size_t dn = base + off + static_cast<std::size_t>((j + g.n - 1) % g.n) * stride;
                out.v[here] = (u.v[up] - u.v[dn]) * inv2h;
            }
        }
    }
    return out;
}

std::vector<ComplexField> covariant_gradient(const ComplexField& u, const PotentialSet& pots,
                                             DerivativeKind kind) {
    require_same_grid(u.grid, pots.grid, "covariant_gradient");
    std::vector<ComplexField> comps;
    comps.reserve(u.grid.dim);
    for (int ax = 0; ax < u.grid.dim; ++ax) {
        ComplexField gax = (kind == DerivativeKind::central) ? central_difference(u, ax)
                                                             : spectral_derivative(u, ax);
        const RealField& a = pots.vector_potential[ax];
        for (std::size_t f = 0; f < gax.v.size(); ++f) {
            gax.v[f] += cplx{0.0, a.v[f]} * u.v[f];
        }
        comps.push_back(std::move(gax));
    }
    return comps;
}

ComplexField apply_kinetic(const ComplexField& u, const PotentialSet& pots) {
    require_same_grid(u.grid, pots.grid, "apply_kinetic");
    ComplexField out(u.grid);
    for (int ax = 0; ax < u.grid.dim; ++ax) {
        ComplexField w = central_difference(u, ax);
        const RealField& a = pots.vector_potential[ax];
        for (std::size_t f = 0; f < w.v.size(); ++f) {
            w.v[f] += cplx{0.0, a.v[f]} * u.v[f];
        }
        ComplexField dw = central_difference(w, ax);
        for (std::size_t f = 0; f < out.v.size(); ++f) {
            out.v[f] -= dw.v[f] + cplx{0.0, a.v[f]} * w.v[f];
        }
    }
    return out;
}

double magnetic_norm_sq(const ComplexField& u, const PotentialSet& pots, ScalarChoice scalar,
                        DerivativeKind kind) {
    require_same_grid(u.grid, pots.grid, "magnetic_norm_sq");
    auto comps = covariant_gradient(u, pots, kind);
    const RealField& vsel =
        (scalar == ScalarChoice::periodic) ? pots.periodic_scalar : pots.effective_scalar;
    double acc = 0.0;
    for (std::size_t f = 0; f < u.v.size(); ++f) {
        double kin = 0.0;
        for (int ax = 0; ax < u.grid.dim; ++ax) kin += std::norm(comps[ax].v[f]);
        acc += kin + vsel.v[f] * std::norm(u.v[f]);
    }
    return acc * u.grid.cell_volume();
}

double magnetic_cross_term(const ComplexField& u, const PotentialSet& pots) {
    require_same_grid(u.grid, pots.grid, "magnetic_cross_term");
    double acc = 0.0;
    for (int ax = 0; ax < u.grid.dim; ++ax) {
        ComplexField du = central_difference(u, ax);
        const RealField& a = pots.vector_potential[ax];
        for (std::size_t f = 0; f < u.v.size(); ++f) {
            acc += 2.0 * a.v[f] * std::imag(std::conj(u.v[f]) * du.v[f]);
        }
    }
    return acc * u.grid.cell_volume();
}

DiamagneticReport diamagnetic_check(const ComplexField& u, const PotentialSet& pots, double tol) {
    require_same_grid(u.grid, pots.grid, "diamagnetic_check");
    if (tol < 0.0) tol = 10.0 * u.grid.h;
    ComplexField mod(u.grid);
    for (std::size_t f = 0; f < u.v.size(); ++f) mod.v[f] = std::abs(u.v[f]);
    std::vector<ComplexField> mod_grad;
    mod_grad.reserve(u.grid.dim);
    for (int ax = 0; ax < u.grid.dim; ++ax) mod_grad.push_back(central_difference(mod, ax));
    auto cov = covariant_gradient(u, pots, DerivativeKind::central);

    DiamagneticReport rep;
    std::size_t satisfied = 0;
    double max_viol = -1e300;
    for (std::size_t f = 0; f < u.v.size(); ++f) {
        double lhs2 = 0.0, rhs2 = 0.0;
        for (int ax = 0; ax < u.grid.dim; ++ax) {
            lhs2 += std::norm(mod_grad[ax].v[f]);
            rhs2 += std::norm(cov[ax].v[f]);
        }
        double lhs = std::sqrt(lhs2), rhs = std::sqrt(rhs2);
        if (lhs <= rhs + tol) ++satisfied;
        max_viol = std::max(max_viol, lhs - rhs);
    }
    rep.fraction_satisfied = static_cast<double>(satisfied) / static_cast<double>(u.v.size());
    rep.max_violation = max_viol;
    return rep;
}

ComplexField gauge_rotate(const ComplexField& u, const RealField& chi) {
    if (!(u.grid == chi.grid)) {
        throw ValidationError("gauge_rotate: grid mismatch");
    }
    ComplexField out = u;
    for (std::size_t f = 0; f < out.v.size(); ++f) {
        out.v[f] *= cplx{std::cos(chi.v[f]), std::sin(chi.v[f])};
    }
    return out;
}

} // namespace choquard
