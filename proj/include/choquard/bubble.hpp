#pragma once
#include <vector>

#include "choquard/energy.hpp"
#include "choquard/field.hpp"
#include "choquard/params.hpp"
#include "choquard/potentials.hpp"

namespace choquard {

enum class CutoffProfile { smoothstep, mollified };

CutoffProfile cutoff_profile_from_string(const std::string& s);
std::string cutoff_profile_to_string(CutoffProfile c);

// Concentration-bubble construction parameters. eta is derived from the
// problem parameters; the factory below fills it in.
struct BubbleParams {
    double eps = 0.1;    // concentration scale, 0 < eps < delta
    double delta = 1.0;  // cutoff inner radius; support ends at 2*delta
    double eta = 1.0;    // decay-rate exponent min{N-2, (2N-alpha)/2}
    CutoffProfile cutoff_profile = CutoffProfile::smoothstep;

    // Checks 0 < eps < delta and 2*delta < box_length/2 for the given grid.
    void validate(const Grid& grid) const;
};

double bubble_eta(const ProblemParams& params);

// BubbleParams with eta derived from (dim, alpha).
BubbleParams make_bubble_params(const ProblemParams& params, double eps, double delta,
                                CutoffProfile profile = CutoffProfile::smoothstep);

// The radial profile [N(N-2)]^{(N-2)/4} (1+|x|^2)^{-(N-2)/2} sampled with its
// peak at the box center (coordinate origin). Real positive values.
ComplexField talenti_bubble(const Grid& grid);

// The cutoff rescaled bubble psi(x) * eps^{(2-N)/2} * U(x/eps): exactly the
// rescaled profile inside radius delta, exactly zero outside radius 2*delta,
// C^1 cutoff in between with |psi'| <= 2/delta.
ComplexField make_u_eps(const Grid& grid, const BubbleParams& bp);

// eps * (delta - eps * atan(delta/eps)) =
//   eps^2 * integral_0^{delta/eps} r^2/(1+r^2) dr.
double closed_form_I3(double eps, double delta);

// (eps^2/2) * [log(1 + delta^2/eps^2) + eps^2/(eps^2+delta^2) - 1] =
//   eps^2 * integral_0^{delta/eps} r^3/(1+r^2)^2 dr.
double closed_form_I4(double eps, double delta);

// The radial integral eps^2 * integral_0^{delta/eps} r^{N-1}(1+r^2)^{2-N} dr:
// closed forms for N = 3, 4, adaptive quadrature for N >= 5.
double bubble_radial_integral(int dim, double eps, double delta);

// N*omega_N, the surface measure of the unit sphere in R^N.
double sphere_measure(int dim);

// N*omega_N integral_0^{2 delta} u'(r)^2 r^{N-1} dr for the radial profile
// u(r) = psi(r) eps^{(2-N)/2} U(r/eps), by adaptive quadrature with the
// analytic derivative (split at the cutoff kinks).
double bubble_gradient_norm_sq(int dim, const BubbleParams& bp);

// N*omega_N integral_delta^{2 delta} u(r)^2 r^{N-1} dr: the mass carried by
// the cutoff annulus.
double bubble_annulus_mass(int dim, const BubbleParams& bp);

struct MassReport {
    double grid_value;    // sum of |u_eps|^2 h^N over grid points with r < delta
    double radial_value;  // N*omega_N [N(N-2)]^{(N-2)/2} * radial integral
    double rel_diff;      // |grid - radial| / radial
};

// Computes the bubble mass inside the inner ball two independent ways and
// cross-checks them; throws NumericalError when they disagree beyond 5e-2.
MassReport l2_mass_integral(const Grid& grid, const BubbleParams& bp);

struct DivergenceRow {
    double eps;
    double value;      // I_eps
    bool decreasing;   // value < previous row's value (first row: true)
};

// I_eps = eps^{-eta} (C2 * mass(B_delta) - C3 * eps^{2N - alpha - (N-2)p})
// over the given eps sequence, using the radial closed form for the mass.
// Throws ValidationError when p is outside the case-1 window.
std::vector<DivergenceRow> divergence_scan(const ProblemParams& params,
                                           const BubbleParams& bp_base,
                                           const std::vector<double>& eps_sequence,
                                           double C2 = 1.0, double C3 = 1.0);

struct Case1Report {
    double sup_tJ;
    double threshold;
    double margin;              // threshold - sup_tJ (may be negative)
    double argmax_t;
    bool resolution_warning;    // true when the scan argmax sat on a t-grid endpoint
};

// Builds u_eps on the potentials' grid, scans t -> J(t u_eps) over t_grid
// (with local refinement), and compares the supremum against the
// concentration-compactness threshold. Never throws on a negative margin;
// the report carries it.
Case1Report case1_check(const ProblemParams& params, const PotentialSet& pots,
                        const BubbleParams& bp, const std::vector<double>& t_grid);

struct Case2Row {
    double lambda;
    double t_lambda;        // fiber maximizer for this lambda
    double sup_tJ;          // J(t_lambda * u_eps)
    bool decreasing;        // t_lambda < previous row's (first row: true)
    bool below_threshold;   // sup_tJ < threshold
    bool quadratic_bound;   // sup_tJ <= (t_lambda^2/2) * ||u_eps||^2
};

// Fiber analysis of J(t u_eps) as lambda grows along lambda_sequence; the
// coefficients are computed once and reweighted per row.
std::vector<Case2Row> case2_scan(const ProblemParams& params, const PotentialSet& pots,
                                 const BubbleParams& bp,
                                 const std::vector<double>& lambda_sequence);

// {start * 2^0, start * 2^-1, ..., start * 2^-(count-1)}.
std::vector<double> dyadic_sequence(double start, int count);

// count log-spaced points between lo and hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int count);

} // namespace choquard
