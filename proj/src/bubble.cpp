#include "choquard/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/quadrature.hpp"
#include "choquard/special.hpp"

namespace choquard {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Radial cutoff profile: 1 on [0, delta], 0 on [2*delta, inf), C^1 monotone
// in between with |psi'| <= 2/delta.
double cutoff_value(CutoffProfile profile, double r, double delta) {
    if (r <= delta) return 1.0;
    if (r >= 2.0 * delta) return 0.0;
    double w = (r - delta) / delta;
    if (profile == CutoffProfile::smoothstep) {
        return 1.0 - w * w * w * (10.0 + w * (-15.0 + 6.0 * w));
    }
    double c = std::cos(0.5 * kPi * w);
    return c * c;
}

double cutoff_derivative(CutoffProfile profile, double r, double delta) {
    if (r <= delta || r >= 2.0 * delta) return 0.0;
    double w = (r - delta) / delta;
    if (profile == CutoffProfile::smoothstep) {
        return -30.0 * w * w * (1.0 - w) * (1.0 - w) / delta;
    }
    return -0.5 * kPi * std::sin(kPi * w) / delta;
}

double profile_amplitude(int dim) {
    double n = static_cast<double>(dim);
    return std::pow(n * (n - 2.0), 0.25 * (n - 2.0));
}

// U(s) = amplitude * (1+s^2)^{-(N-2)/2} and its s-derivative.
double profile_value(int dim, double s) {
    double n = static_cast<double>(dim);
    return profile_amplitude(dim) * std::pow(1.0 + s * s, -0.5 * (n - 2.0));
}

double profile_derivative(int dim, double s) {
    double n = static_cast<double>(dim);
    return -(n - 2.0) * s / (1.0 + s * s) * profile_value(dim, s);
}

double radius_from_coords(const Grid& grid, std::size_t flat_index) {
    auto idx = grid.unflat(flat_index);
    double r2 = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax) {
        double x = grid.coord(idx[static_cast<std::size_t>(ax)]);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

} // namespace

CutoffProfile cutoff_profile_from_string(const std::string& s) {
    if (s == "smoothstep") return CutoffProfile::smoothstep;
    if (s == "mollified") return CutoffProfile::mollified;
    throw ValidationError("unknown cutoff profile '" + s +
                          "' (expected smoothstep or mollified)");
}

std::string cutoff_profile_to_string(CutoffProfile c) {
    return c == CutoffProfile::smoothstep ? "smoothstep" : "mollified";
}

void BubbleParams::validate(const Grid& grid) const {
    std::ostringstream err;
    if (!(eps > 0.0) || !(delta > 0.0) || !(eps < delta)) {
        err << "bubble parameters require 0 < eps < delta, got eps=" << eps
            << " delta=" << delta;
        throw ValidationError(err.str());
    }
    if (!(2.0 * delta < 0.5 * grid.L)) {
        err << "bubble support 2*delta=" << 2.0 * delta
            << " must stay inside the half box " << 0.5 * grid.L;
        throw ValidationError(err.str());
    }
}

double bubble_eta(const ProblemParams& params) {
    double n = static_cast<double>(params.dim);
    return std::min(n - 2.0, (2.0 * n - params.alpha) / 2.0);
}

BubbleParams make_bubble_params(const ProblemParams& params, double eps, double delta,
                                CutoffProfile profile) {
    BubbleParams bp;
    bp.eps = eps;
    bp.delta = delta;
    bp.eta = bubble_eta(params);
    bp.cutoff_profile = profile;
    return bp;
}

ComplexField talenti_bubble(const Grid& grid) {
    if (grid.dim < 3) {
        throw ValidationError("talenti_bubble: requires dim >= 3");
    }
    ComplexField out(grid);
    for (std::size_t f = 0; f < out.v.size(); ++f) {
        double r = radius_from_coords(grid, f);
        out.v[f] = profile_value(grid.dim, r);
    }
    return out;
}

ComplexField make_u_eps(const Grid& grid, const BubbleParams& bp) {
    if (grid.dim < 3) {
        throw ValidationError("make_u_eps: requires dim >= 3");
    }
    bp.validate(grid);
    double n = static_cast<double>(grid.dim);
    double scale = std::pow(bp.eps, 0.5 * (2.0 - n));
    ComplexField out(grid);
    for (std::size_t f = 0; f < out.v.size(); ++f) {
        double r = radius_from_coords(grid, f);
        double psi = cutoff_value(bp.cutoff_profile, r, bp.delta);
        out.v[f] = (psi == 0.0) ? 0.0 : psi * scale * profile_value(grid.dim, r / bp.eps);
    }
    return out;
}

double closed_form_I3(double eps, double delta) {
    if (!(eps > 0.0) || !(delta > 0.0)) {
        throw ValidationError("closed_form_I3: eps and delta must be positive");
    }
    return eps * (delta - eps * std::atan(delta / eps));
}

double closed_form_I4(double eps, double delta) {
    if (!(eps > 0.0) || !(delta > 0.0)) {
        throw ValidationError("closed_form_I4: eps and delta must be positive");
    }
    double q = delta / eps;
    return 0.5 * eps * eps * (std::log1p(q * q) + 1.0 / (1.0 + q * q) - 1.0);
}

double bubble_radial_integral(int dim, double eps, double delta) {
    if (dim == 3) return closed_form_I3(eps, delta);
    if (dim == 4) return closed_form_I4(eps, delta);
    double n = static_cast<double>(dim);
    auto f = [n](double r) { return std::pow(r, n - 1.0) * std::pow(1.0 + r * r, 2.0 - n); };
    QuadratureResult q = integrate(f, 0.0, delta / eps, 1e-12, 1e-12);
    return eps * eps * q.value;
}

double sphere_measure(int dim) {
    double n = static_cast<double>(dim);
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
}

double bubble_gradient_norm_sq(int dim, const BubbleParams& bp) {
    if (dim < 3) {
        throw ValidationError("bubble_gradient_norm_sq: requires dim >= 3");
    }
    double n = static_cast<double>(dim);
    double scale = std::pow(bp.eps, 0.5 * (2.0 - n));
    auto integrand = [&](double r) {
        double s = r / bp.eps;
        double du = cutoff_derivative(bp.cutoff_profile, r, bp.delta) * scale
                        * profile_value(dim, s)
                    + cutoff_value(bp.cutoff_profile, r, bp.delta) * scale
                          * profile_derivative(dim, s) / bp.eps;
        return du * du * std::pow(r, n - 1.0);
    };
    QuadratureResult inner = integrate(integrand, 0.0, bp.delta, 1e-12, 1e-10);
    QuadratureResult outer = integrate(integrand, bp.delta, 2.0 * bp.delta, 1e-12, 1e-10);
    return sphere_measure(dim) * (inner.value + outer.value);
}

double bubble_annulus_mass(int dim, const BubbleParams& bp) {
    if (dim < 3) {
        throw ValidationError("bubble_annulus_mass: requires dim >= 3");
    }
    double n = static_cast<double>(dim);
    double scale = std::pow(bp.eps, 0.5 * (2.0 - n));
    auto integrand = [&](double r) {
        double u = cutoff_value(bp.cutoff_profile, r, bp.delta) * scale
                   * profile_value(dim, r / bp.eps);
        return u * u * std::pow(r, n - 1.0);
    };
    QuadratureResult q = integrate(integrand, bp.delta, 2.0 * bp.delta, 1e-12, 1e-10);
    return sphere_measure(dim) * q.value;
}

MassReport l2_mass_integral(const Grid& grid, const BubbleParams& bp) {
    ComplexField u = make_u_eps(grid, bp);
    double acc = 0.0;
    for (std::size_t f = 0; f < u.v.size(); ++f) {
        if (radius_from_coords(grid, f) < bp.delta) acc += std::norm(u.v[f]);
    }
    MassReport rep;
    rep.grid_value = acc * grid.cell_volume();
    double n = static_cast<double>(grid.dim);
    rep.radial_value = sphere_measure(grid.dim) * std::pow(n * (n - 2.0), 0.5 * (n - 2.0))
                       * bubble_radial_integral(grid.dim, bp.eps, bp.delta);
    rep.rel_diff = std::fabs(rep.grid_value - rep.radial_value) / rep.radial_value;
    if (rep.rel_diff > 5e-2) {
        std::ostringstream err;
        err << "l2_mass_integral: grid and radial values disagree (rel diff "
            << rep.rel_diff << " > 5e-2); refine the grid";
        throw NumericalError(err.str());
    }
    return rep;
}

std::vector<DivergenceRow> divergence_scan(const ProblemParams& params,
                                           const BubbleParams& bp_base,
                                           const std::vector<double>& eps_sequence,
                                           double C2, double C3) {
    params.validate();
    if (!in_case1_window(params)) {
        std::ostringstream err;
        err << "divergence_scan: p=" << params.p
            << " is outside the concentration window for dim=" << params.dim
            << " alpha=" << params.alpha;
        throw ValidationError(err.str());
    }
    if (!(C2 > 0.0) || !(C3 > 0.0)) {
        throw ValidationError("divergence_scan: C2 and C3 must be positive");
    }
    if (eps_sequence.empty()) {
        throw ValidationError("divergence_scan: empty eps sequence");
    }
    double n = static_cast<double>(params.dim);
    double eta = bubble_eta(params);
    double expo = 2.0 * n - params.alpha - (n - 2.0) * params.p;
    double mass_scale =
        sphere_measure(params.dim) * std::pow(n * (n - 2.0), 0.5 * (n - 2.0));
    std::vector<DivergenceRow> rows;
    rows.reserve(eps_sequence.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        double eps = eps_sequence[i];
        if (!(eps > 0.0 && eps < bp_base.delta)) {
            std::ostringstream err;
            err << "divergence_scan: eps=" << eps << " must lie in (0, delta="
                << bp_base.delta << ")";
            throw ValidationError(err.str());
        }
        double mass = mass_scale * bubble_radial_integral(params.dim, eps, bp_base.delta);
        double value = std::pow(eps, -eta) * (C2 * mass - C3 * std::pow(eps, expo));
        DivergenceRow row;
        row.eps = eps;
        row.value = value;
        row.decreasing = (i == 0) || value < prev;
        rows.push_back(row);
        prev = value;
    }
    return rows;
}

Case1Report case1_check(const ProblemParams& params, const PotentialSet& pots,
                        const BubbleParams& bp, const std::vector<double>& t_grid) {
    params.validate();
    ComplexField u = make_u_eps(pots.grid, bp);
    EnergyModel model(params, pots);
    FiberingScan scan = model.fibering_scan(u, ScalarChoice::periodic, t_grid);
    Case1Report rep;
    rep.sup_tJ = scan.max_value;
    rep.threshold = ps_threshold(params);
    rep.margin = rep.threshold - rep.sup_tJ;
    rep.argmax_t = scan.argmax;
    rep.resolution_warning = !scan.argmax_interior;
    return rep;
}

std::vector<Case2Row> case2_scan(const ProblemParams& params, const PotentialSet& pots,
                                 const BubbleParams& bp,
                                 const std::vector<double>& lambda_sequence) {
    params.validate();
    if (!in_case2_window(params)) {
        std::ostringstream err;
        err << "case2_scan: (family " << family_to_string(params.family) << ", dim="
            << params.dim << ", p=" << params.p
            << ") is outside the large-coupling window";
        throw ValidationError(err.str());
    }
    if (lambda_sequence.empty()) {
        throw ValidationError("case2_scan: empty lambda sequence");
    }
    for (double lam : lambda_sequence) {
        if (!(lam > 0.0)) {
            throw ValidationError("case2_scan: lambda values must be positive");
        }
    }
    ComplexField u = make_u_eps(pots.grid, bp);
    EnergyModel model(params, pots);
    FiberCoeffs fc = model.fiber_coeffs(u, ScalarChoice::periodic);
    double threshold = ps_threshold(params);
    std::vector<Case2Row> rows;
    rows.reserve(lambda_sequence.size());
    double prev_t = 0.0;
    for (std::size_t i = 0; i < lambda_sequence.size(); ++i) {
        fc.lambda = lambda_sequence[i];
        double t = nehari_root(fc);
        double sup = fc.value(t);
        Case2Row row;
        row.lambda = lambda_sequence[i];
        row.t_lambda = t;
        row.sup_tJ = sup;
        row.decreasing = (i == 0) || t < prev_t;
        row.below_threshold = sup < threshold;
        row.quadratic_bound = sup <= 0.5 * t * t * fc.norm_sq;
        rows.push_back(row);
        prev_t = t;
    }
    return rows;
}

std::vector<double> dyadic_sequence(double start, int count) {
    if (!(start > 0.0) || count < 1) {
        throw ValidationError("dyadic_sequence: start must be positive, count >= 1");
    }
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(count));
    double v = start;
    for (int k = 0; k < count; ++k) {
        seq.push_back(v);
        v *= 0.5;
    }
    return seq;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw ValidationError("log_spaced: need 0 < lo < hi and count >= 2");
    }
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(count));
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        double s = static_cast<double>(i) / static_cast<double>(count - 1);
        seq.push_back(std::exp(llo + s * (lhi - llo)));
    }
    return seq;
}

} // namespace choquard
