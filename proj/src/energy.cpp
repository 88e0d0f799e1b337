#include "choquard/energy.hpp"
#include "choquard/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace choquard {

double FiberCoeffs::value(double t) const {
    return 0.5 * t * t * norm_sq - std::pow(t, crit_exp) * crit / crit_coeff
           - lambda * std::pow(t, sub_exp) * sub / sub_coeff;
}

double FiberCoeffs::residual(double t) const {
    return t * t * norm_sq - std::pow(t, crit_exp) * crit - lambda * std::pow(t, sub_exp) * sub;
}

EnergyModel::EnergyModel(const ProblemParams& params, const PotentialSet& pots)
    : params_(params), pots_(&pots), plan_(riesz_plan(pots.grid, params.alpha)) {
    params_.validate();
}

EnergyBreakdown EnergyModel::energy(const ComplexField& u, ScalarChoice scalar) const {
    if (!(u.grid == pots_->grid)) {
        throw ValidationError("energy: grid mismatch");
    }
    EnergyBreakdown br;
    auto comps = covariant_gradient(u, *pots_, DerivativeKind::central);
    const RealField& vsel =
        (scalar == ScalarChoice::periodic) ? pots_->periodic_scalar : pots_->effective_scalar;
    double kin = 0.0, pot = 0.0;
    for (std::size_t f = 0; f < u.v.size(); ++f) {
        for (int ax = 0; ax < u.grid.dim; ++ax) kin += std::norm(comps[ax].v[f]);
        pot += vsel.v[f] * std::norm(u.v[f]);
    }
    const double hN = u.grid.cell_volume();
    br.kinetic_magnetic = kin * hN;
    br.potential = pot * hN;

    const double tas = params_.two_alpha_star();
    const double ts = params_.two_star();
    const double lam = params_.lambda;
    const double p = params_.p;

    auto power_term = [&](double expo) {
        double acc = 0.0;
        for (const cplx& z : u.v) acc += std::pow(std::abs(z), expo);
        return acc * hN;
    };

    switch (params_.family) {
        case Family::A:
            br.choquard_critical = interaction(u, tas, plan_);
            br.choquard_sub = interaction(u, p, plan_);
            br.total = 0.5 * br.norm_sq() - br.choquard_critical / (2.0 * tas)
                       - lam * br.choquard_sub / (2.0 * p);
            break;
        case Family::B:
            br.choquard_critical = interaction(u, tas, plan_);
            br.power_sub = power_term(p + 1.0);
            br.total = 0.5 * br.norm_sq() - br.choquard_critical / (2.0 * tas)
                       - lam * br.power_sub / (p + 1.0);
            break;
        case Family::C:
            br.power_critical = power_term(ts);
            br.choquard_sub = interaction(u, p, plan_);
            br.total = 0.5 * br.norm_sq() - br.power_critical / ts
                       - lam * br.choquard_sub / (2.0 * p);
            break;
    }
    return br;
}

ComplexField EnergyModel::gradient(const ComplexField& u, ScalarChoice scalar) const {
    if (!(u.grid == pots_->grid)) {
        throw ValidationError("gradient: grid mismatch");
    }
    ComplexField g = apply_kinetic(u, *pots_);
    const RealField& vsel =
        (scalar == ScalarChoice::periodic) ? pots_->periodic_scalar : pots_->effective_scalar;
    for (std::size_t f = 0; f < g.v.size(); ++f) g.v[f] += vsel.v[f] * u.v[f];

    const double tas = params_.two_alpha_star();
    const double ts = params_.two_star();
    const double lam = params_.lambda;
    const double p = params_.p;

    auto subtract_choquard_term = [&](double s, double coeff) {
        RealField dens(u.grid);
        for (std::size_t f = 0; f < u.v.size(); ++f) dens.v[f] = std::pow(std::abs(u.v[f]), s);
        RealField conv = riesz_convolve(plan_, dens);
        for (std::size_t f = 0; f < g.v.size(); ++f) {
            double a = std::abs(u.v[f]);
            if (a > 0.0) {
                g.v[f] -= coeff * conv.v[f] * std::pow(a, s - 2.0) * u.v[f];
            }
        }
    };
    auto subtract_power_term = [&](double expo, double coeff) {
        for (std::size_t f = 0; f < g.v.size(); ++f) {
            double a = std::abs(u.v[f]);
            if (a > 0.0) {
                g.v[f] -= coeff * std::pow(a, expo - 2.0) * u.v[f];
            }
        }
    };

    switch (params_.family) {
        case Family::A:
            subtract_choquard_term(tas, 1.0);
            subtract_choquard_term(p, lam);
            break;
        case Family::B:
            subtract_choquard_term(tas, 1.0);
            subtract_power_term(p + 1.0, lam);
            break;
        case Family::C:
            subtract_power_term(ts, 1.0);
            subtract_choquard_term(p, lam);
            break;
    }
    return g;
}

FiberCoeffs EnergyModel::fiber_coeffs(const ComplexField& u, ScalarChoice scalar) const {
    EnergyBreakdown br = energy(u, scalar);
    FiberCoeffs fc;
    fc.norm_sq = br.norm_sq();
    fc.lambda = params_.lambda;
    const double tas = params_.two_alpha_star();
    switch (params_.family) {
        case Family::A:
            fc.crit = br.choquard_critical;
            fc.crit_exp = 2.0 * tas;
            fc.crit_coeff = 2.0 * tas;
            fc.sub = br.choquard_sub;
            fc.sub_exp = 2.0 * params_.p;
            fc.sub_coeff = 2.0 * params_.p;
            break;
        case Family::B:
            fc.crit = br.choquard_critical;
            fc.crit_exp = 2.0 * tas;
            fc.crit_coeff = 2.0 * tas;
            fc.sub = br.power_sub;
            fc.sub_exp = params_.p + 1.0;
            fc.sub_coeff = params_.p + 1.0;
            break;
        case Family::C:
            fc.crit = br.power_critical;
            fc.crit_exp = params_.two_star();
            fc.crit_coeff = params_.two_star();
            fc.sub = br.choquard_sub;
            fc.sub_exp = 2.0 * params_.p;
            fc.sub_coeff = 2.0 * params_.p;
            break;
    }
    return fc;
}

double EnergyModel::nehari_residual(const ComplexField& u, ScalarChoice scalar) const {
    double nrm = l2_norm(u);
    if (!(nrm > 0.0)) {
        throw ValidationError("nehari_residual: zero field");
    }
    FiberCoeffs fc = fiber_coeffs(u, scalar);
    return fc.residual(1.0);
}

double nehari_root(const FiberCoeffs& fc) {
    const double a = fc.norm_sq;
    if (!(a > 0.0)) {
        throw ValidationError("nehari_root: vanishing norm");
    }
    if (fc.crit <= 1e-14 * a && fc.lambda * fc.sub <= 1e-14 * a) {
        throw ValidationError("nehari_root: degenerate input - all nonlinear terms vanish");
    }
    // phi(t) = residual(t u)/t^2 = a - c t^{ce-2} - lambda s t^{se-2}:
    // strictly decreasing with phi(0+) = a > 0, so the root is unique.
    auto phi = [&](double t) {
        return a - fc.crit * std::pow(t, fc.crit_exp - 2.0)
               - fc.lambda * fc.sub * std::pow(t, fc.sub_exp - 2.0);
    };
    auto dphi = [&](double t) {
        return -fc.crit * (fc.crit_exp - 2.0) * std::pow(t, fc.crit_exp - 3.0)
               - fc.lambda * fc.sub * (fc.sub_exp - 2.0) * std::pow(t, fc.sub_exp - 3.0);
    };
    double lo = 1.0, hi = 1.0;
    int guard = 0;
    if (phi(1.0) > 0.0) {
        while (phi(hi) > 0.0) {
            hi *= 2.0;
            if (++guard > 200) throw ConvergenceError("nehari_root: bracketing failed (upward)");
        }
        lo = hi * 0.5;
    } else {
        while (phi(lo) <= 0.0) {
            lo *= 0.5;
            if (++guard > 200) throw ConvergenceError("nehari_root: bracketing failed (downward)");
        }
        hi = lo * 2.0;
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        double d = dphi(t);
        if (d == 0.0) break;
        double step = phi(t) / d;
        double tn = t - step;
        if (!(tn > 0.0)) break;
        t = tn;
    }
    return t;
}

EnergyModel::Projection EnergyModel::nehari_project(const ComplexField& u,
                                                    ScalarChoice scalar) const {
    double nrm = l2_norm(u);
    if (!(nrm > 0.0)) {
        throw ValidationError("nehari_project: zero field");
    }
    FiberCoeffs fc = fiber_coeffs(u, scalar);
    double t = nehari_root(fc);

    double res = fc.residual(t);
    double proj_norm_sq = t * t * fc.norm_sq;
    if (std::fabs(res) > 1e-10 * proj_norm_sq) {
        std::ostringstream err;
        err << "nehari_project: projection residual " << res << " exceeds tolerance "
            << 1e-10 * proj_norm_sq;
        throw NumericalError(err.str());
    }
    // The projected point must dominate the fiber on a wide log-spaced grid.
    const double vt = fc.value(t);
    const double slack = 1e-12 * std::max(1.0, std::fabs(vt));
    for (int i = 0; i < 1000; ++i) {
        double expo = -2.0 + 4.0 * static_cast<double>(i) / 999.0;
        double tg = t * std::pow(10.0, expo);
        if (fc.value(tg) > vt + slack) {
            throw NumericalError("nehari_project: fiber maximum check failed");
        }
    }

    Projection out;
    out.t_u = t;
    out.projected = scaled(u, t);
    return out;
}

FiberingScan EnergyModel::fibering_scan(const ComplexField& u, ScalarChoice scalar,
                                        const std::vector<double>& t_grid) const {
    if (t_grid.size() < 2) {
        throw ValidationError("fibering_scan: need at least two grid points");
    }
    FiberCoeffs fc = fiber_coeffs(u, scalar);
    FiberingScan scan;
    scan.table.reserve(t_grid.size());
    std::size_t imax = 0;
    double vmax = -1e300;
    int prev_sign = 0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        double t = t_grid[i];
        double val = fc.value(t);
        scan.table.push_back({t, val});
        if (val > vmax) {
            vmax = val;
            imax = i;
        }
        double r = fc.residual(t);
        int sign = (r > 0.0) - (r < 0.0);
        if (sign != 0) {
            if (prev_sign != 0 && sign != prev_sign) ++scan.sign_changes;
            prev_sign = sign;
        }
    }
    scan.argmax_interior = imax > 0 && imax + 1 < t_grid.size();
    if (scan.argmax_interior) {
        // Golden-section refinement on the bracketing interval (the fiber is
        // unimodal around its interior maximum).
        double lo = t_grid[imax - 1], hi = t_grid[imax + 1];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = fc.value(x1), f2 = fc.value(x2);
        for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = fc.value(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = fc.value(x1);
            }
        }
        scan.argmax = 0.5 * (lo + hi);
        scan.max_value = fc.value(scan.argmax);
    } else {
        scan.argmax = t_grid[imax];
        scan.max_value = vmax;
    }
    return scan;
}

} // namespace choquard
