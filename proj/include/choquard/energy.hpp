#pragma once
#include "choquard/params.hpp"
#include "choquard/potentials.hpp"
#include "choquard/riesz.hpp"
#include "choquard/stencil.hpp"

namespace choquard {

struct EnergyBreakdown {
    double kinetic_magnetic = 0.0;  // int |grad_A u|^2
    double potential = 0.0;         // int V_sel |u|^2
    double choquard_critical = 0.0; // D(u)
    double choquard_sub = 0.0;      // B(u): families A and C
    double power_sub = 0.0;         // ||u||_{p+1}^{p+1}: family B
    double power_critical = 0.0;    // ||u||_{2*}^{2*}: family C
    double total = 0.0;             // J (periodic scalar) or I (effective scalar)

    double norm_sq() const { return kinetic_magnetic + potential; }
};

// Homogeneity data of the fiber t -> total(t u): each term scales by a fixed
// power of t, so one breakdown evaluates the entire ray.
struct FiberCoeffs {
    double norm_sq = 0.0;      // t^2 coefficient source
    double crit = 0.0;         // D or ||u||_{2*}^{2*}
    double crit_exp = 0.0;     // 2 * two_alpha_star, or two_star for family C
    double sub = 0.0;          // lambda-coupled subcritical term value
    double sub_exp = 0.0;      // 2p (Choquard) or p+1 (local power)
    double crit_coeff = 0.0;   // divisor of the critical term in the total
    double sub_coeff = 0.0;    // divisor of the lambda term in the total
    double lambda = 0.0;

    double value(double t) const;      // total(t u)
    double residual(double t) const;   // d/dt total(t u) * t = Nehari residual of t u
};

struct FiberingRow {
    double t = 0.0;
    double value = 0.0;
};

struct FiberingScan {
    std::vector<FiberingRow> table;
    double argmax = 0.0;        // refined interior maximizer
    double max_value = 0.0;     // value at the refined maximizer
    bool argmax_interior = false;
    int sign_changes = 0;       // of the residual along the scan grid
};

class EnergyModel {
public:
    EnergyModel(const ProblemParams& params, const PotentialSet& pots);

    const ProblemParams& params() const { return params_; }
    const PotentialSet& potentials() const { return *pots_; }
    const RieszPlan& plan() const { return plan_; }

    EnergyBreakdown energy(const ComplexField& u, ScalarChoice scalar) const;

    // L^2-representative G of the derivative: Re<G, psi>_{L^2} equals the
    // directional derivative of the energy at u in direction psi.
    ComplexField gradient(const ComplexField& u, ScalarChoice scalar) const;

    // ||u||^2_{A,V} - (critical term) - lambda (subcritical term); zero on the
    // Nehari manifold. Throws ValidationError for the zero field.
    double nehari_residual(const ComplexField& u, ScalarChoice scalar) const;

    // The unique t_u > 0 with residual(t_u u) = 0 and the projected field.
    // Throws ConvergenceError after 200 bracketing iterations, ValidationError
    // if all nonlinear terms are degenerate.
    struct Projection {
        double t_u = 0.0;
        ComplexField projected;
    };
    Projection nehari_project(const ComplexField& u, ScalarChoice scalar) const;

    FiberCoeffs fiber_coeffs(const ComplexField& u, ScalarChoice scalar) const;
    FiberingScan fibering_scan(const ComplexField& u, ScalarChoice scalar,
                               const std::vector<double>& t_grid) const;

private:
    ProblemParams params_;
    const PotentialSet* pots_;
    RieszPlan plan_;
};

// Root of the fiber residual by bracketing bisection plus Newton polish,
// given the homogeneity coefficients. Exposed for scan reuse.
double nehari_root(const FiberCoeffs& fc);

} // namespace choquard
