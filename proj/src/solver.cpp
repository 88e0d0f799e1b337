#include "choquard/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/fft.hpp"

namespace choquard {

namespace {

struct ProjectedState {
    double t = 1.0;
    ComplexField field;
    double value = 0.0;  // fiber value at t, i.e. the on-manifold energy
};

// Project v onto the Nehari manifold through the fiber coefficients; mirrors
// nehari_project but also reports the projected energy without a second
// integral evaluation.
ProjectedState project(const EnergyModel& model, const ComplexField& v,
                       ScalarChoice scalar) {
    FiberCoeffs fc = model.fiber_coeffs(v, scalar);
    double t = nehari_root(fc);
    if (std::fabs(fc.residual(t)) > 1e-10 * t * t * fc.norm_sq) {
        throw NumericalError("solver projection: manifold residual out of tolerance");
    }
    ProjectedState st;
    st.t = t;
    st.field = scaled(v, t);
    st.value = fc.value(t);
    return st;
}

ComplexField initial_field(const Grid& grid, std::uint64_t seed) {
    ComplexField noise = smooth_seeded_field(grid, seed, 2);
    ComplexField out(grid);
    for (std::size_t f = 0; f < out.v.size(); ++f) {
        auto idx = grid.unflat(f);
        double r2 = 0.0;
        for (int ax = 0; ax < grid.dim; ++ax) {
            double x = grid.coord(idx[static_cast<std::size_t>(ax)]);
            r2 += x * x;
        }
        out.v[f] = std::exp(-0.5 * r2) * (1.0 + 0.05 * noise.v[f]);
    }
    return out;
}

} // namespace

StepRule step_rule_from_string(const std::string& s) {
    if (s == "fixed") return StepRule::fixed;
    if (s == "adaptive-two-point") return StepRule::adaptive_two_point;
    throw ValidationError("unknown step rule '" + s +
                          "' (expected fixed or adaptive-two-point)");
}

std::string step_rule_to_string(StepRule r) {
    return r == StepRule::fixed ? "fixed" : "adaptive-two-point";
}

void SolveConfig::validate() const {
    std::ostringstream err;
    if (max_iters < 1) {
        err << "max_iters must be >= 1, got " << max_iters;
        throw ValidationError(err.str());
    }
    if (!(grad_tol > 0.0)) {
        err << "grad_tol must be > 0, got " << grad_tol;
        throw ValidationError(err.str());
    }
    if (!(step_init > 0.0)) {
        err << "step_init must be > 0, got " << step_init;
        throw ValidationError(err.str());
    }
    if (reproject_every < 1) {
        err << "reproject_every must be >= 1, got " << reproject_every;
        throw ValidationError(err.str());
    }
}

Solution solve_ground_state(const ProblemParams& params, const PotentialSet& pots,
                            ScalarChoice scalar, const SolveConfig& config,
                            const ComplexField* warm_start) {
    config.validate();
    EnergyModel model(params, pots);

    ComplexField u0 = warm_start ? *warm_start : initial_field(pots.grid, config.seed);
    if (warm_start && !(warm_start->grid == pots.grid)) {
        throw ValidationError("solve_ground_state: warm-start grid mismatch");
    }
    ProjectedState cur = project(model, u0, scalar);

    Solution sol;
    sol.level_history.reserve(64);
    sol.level_history.push_back(cur.value);

    double step = config.step_init;
    ComplexField u_prev(pots.grid), g_prev(pots.grid);
    bool have_prev = false;
    double res = 0.0;
    int accepted_steps = 0;
    bool converged = false;

    for (int it = 0; it <= config.max_iters; ++it) {
        ComplexField g = model.gradient(cur.field, scalar);
        res = l2_norm(g) / l2_norm(cur.field);
        if (res <= config.grad_tol) {
            converged = true;
            break;
        }
        if (it == config.max_iters) break;

        if (config.step_rule == StepRule::adaptive_two_point) {
            if (have_prev) {
                double num = 0.0, den = 0.0;
                for (std::size_t f = 0; f < g.v.size(); ++f) {
                    cplx du = cur.field.v[f] - u_prev.v[f];
                    cplx dg = g.v[f] - g_prev.v[f];
                    num += std::norm(du);
                    den += (du * std::conj(dg)).real();
                }
                if (std::fabs(den) > 1e-300) {
                    step = std::clamp(std::fabs(num / den), 1e-6, 1e3);
                }
            }
        } else {
            step = config.step_init;
        }
        u_prev = cur.field;
        g_prev = g;
        have_prev = true;

        bool reproject = (it % config.reproject_every) == 0;
        bool accepted = false;
        double s = step;
        for (int halving = 0; halving <= 30; ++halving) {
            ComplexField v(pots.grid);
            for (std::size_t f = 0; f < v.v.size(); ++f) {
                v.v[f] = cur.field.v[f] - s * g.v[f];
            }
            ProjectedState trial;
            if (reproject) {
                trial = project(model, v, scalar);
            } else {
                trial.t = 1.0;
                trial.field = std::move(v);
                trial.value = model.energy(trial.field, scalar).total;
            }
            if (trial.value <= cur.value + 1e-12 * std::max(1.0, std::fabs(cur.value))) {
                cur = std::move(trial);
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;  // stagnation: no acceptable step at any scale
        ++accepted_steps;
        sol.level_history.push_back(cur.value);
    }

    sol.field = cur.field;
    sol.energy = model.energy(cur.field, scalar);
    sol.residual = res;
    sol.iterations = accepted_steps;
    sol.level = sol.energy.total;
    sol.converged = converged;
    return sol;
}

VanishingReport vanishing_diagnostic(const ComplexField& u, double radius) {
    const Grid& grid = u.grid;
    if (!(radius > 0.0) || !(radius < 0.5 * grid.L)) {
        std::ostringstream err;
        err << "vanishing_diagnostic: radius must lie in (0, " << 0.5 * grid.L
            << "), got " << radius;
        throw ValidationError(err.str());
    }
    const std::size_t total = grid.total();
    std::vector<cplx> dens(total), ball(total);
    for (std::size_t f = 0; f < total; ++f) dens[f] = std::norm(u.v[f]);
    const double r2max = radius * radius;
    for (std::size_t f = 0; f < total; ++f) {
        auto idx = grid.unflat(f);
        double d2 = 0.0;
        for (int ax = 0; ax < grid.dim; ++ax) {
            double d = static_cast<double>(idx[static_cast<std::size_t>(ax)]) * grid.h;
            if (d > 0.5 * grid.L) d -= grid.L;
            d2 += d * d;
        }
        ball[f] = (d2 <= r2max) ? 1.0 : 0.0;
    }
    dft_inplace(grid.dim, grid.n, dens.data(), -1);
    dft_inplace(grid.dim, grid.n, ball.data(), -1);
    for (std::size_t f = 0; f < total; ++f) dens[f] *= ball[f];
    dft_inplace(grid.dim, grid.n, dens.data(), +1);
    const double scale = grid.cell_volume() / static_cast<double>(total);

    VanishingReport rep;
    std::size_t best = 0;
    double best_mass = -1.0;
    for (std::size_t f = 0; f < total; ++f) {
        double m = dens[f].real() * scale;
        if (m > best_mass) {
            best_mass = m;
            best = f;
        }
    }
    rep.max_ball_mass = std::max(0.0, best_mass);
    auto idx = grid.unflat(best);
    for (int ax = 0; ax < grid.dim; ++ax) {
        rep.argmax_center[static_cast<std::size_t>(ax)] =
            grid.coord(idx[static_cast<std::size_t>(ax)]);
    }
    return rep;
}

LevelComparison compare_levels(const ProblemParams& params, const PotentialSet& pots,
                               const SolveConfig& config) {
    double wmax = 0.0;
    for (double w : pots.perturbation.v) wmax = std::max(wmax, std::fabs(w));

    Solution c_sol = solve_ground_state(params, pots, ScalarChoice::periodic, config);
    if (!c_sol.converged) {
        std::ostringstream err;
        err << "compare_levels: periodic solve did not converge (residual "
            << c_sol.residual << " after " << c_sol.iterations << " steps)";
        throw ConvergenceError(err.str());
    }
    Solution d_sol = solve_ground_state(params, pots, ScalarChoice::effective, config);
    if (!d_sol.converged) {
        std::ostringstream err;
        err << "compare_levels: perturbed solve did not converge (residual "
            << d_sol.residual << " after " << d_sol.iterations << " steps)";
        throw ConvergenceError(err.str());
    }

    LevelComparison rep;
    rep.c_level = c_sol.level;
    rep.d_level = d_sol.level;
    rep.gap = rep.c_level - rep.d_level;
    rep.threshold = ps_threshold(params);
    rep.c_iterations = c_sol.iterations;
    rep.d_iterations = d_sol.iterations;
    rep.perturbation_active = wmax > 0.0;
    if (rep.perturbation_active) {
        if (!(rep.d_level < rep.c_level)) {
            std::ostringstream err;
            err << "compare_levels: expected the perturbed level " << rep.d_level
                << " below the periodic level " << rep.c_level;
            throw NumericalError(err.str());
        }
        if (!(rep.c_level < rep.threshold)) {
            std::ostringstream err;
            err << "compare_levels: periodic level " << rep.c_level
                << " is not below the compactness threshold " << rep.threshold;
            throw NumericalError(err.str());
        }
    }
    return rep;
}

} // namespace choquard
