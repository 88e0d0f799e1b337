#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "choquard/energy.hpp"
#include "choquard/field.hpp"
#include "choquard/params.hpp"
#include "choquard/potentials.hpp"

namespace choquard {

enum class StepRule { fixed, adaptive_two_point };

StepRule step_rule_from_string(const std::string& s);
std::string step_rule_to_string(StepRule r);

struct SolveConfig {
    int max_iters = 5000;
    StepRule step_rule = StepRule::adaptive_two_point;
    double step_init = 1e-2;
    double grad_tol = 1e-8;      // relative L2 gradient residual
    int reproject_every = 1;
    std::uint64_t seed = 1234;

    void validate() const;
};

struct Solution {
    ComplexField field;
    EnergyBreakdown energy;
    double residual = 0.0;   // ||gradient||_L2 / ||u||_L2 at exit
    int iterations = 0;      // accepted descent steps
    double level = 0.0;      // on-manifold energy at exit
    bool converged = false;
    std::vector<double> level_history;  // recorded on-manifold energies
};

// Ground-state search: seeded (or warm-started) field, projected onto the
// Nehari manifold, descended along the negative gradient with two-point
// adaptive steps, reprojecting each accepted step. The recorded energy
// sequence is nonincreasing up to 1e-12 per step; a step that cannot be
// accepted after 30 halvings stops the loop with converged = false.
Solution solve_ground_state(const ProblemParams& params, const PotentialSet& pots,
                            ScalarChoice scalar, const SolveConfig& config,
                            const ComplexField* warm_start = nullptr);

struct VanishingReport {
    double max_ball_mass = 0.0;
    std::array<double, 4> argmax_center{0.0, 0.0, 0.0, 0.0};
};

// Largest mass integral of |u|^2 over radius-r balls centered at grid points
// (computed by convolution with the ball indicator), with the maximizing
// center. Requires radius < box_length / 2.
VanishingReport vanishing_diagnostic(const ComplexField& u, double radius);

struct LevelComparison {
    double c_level = 0.0;     // periodic-potential level
    double d_level = 0.0;     // perturbed-potential level
    double gap = 0.0;         // c_level - d_level
    double threshold = 0.0;
    int c_iterations = 0;
    int d_iterations = 0;
    bool perturbation_active = false;  // false when W is identically zero
};

// Solves the periodic and the perturbed problem from the same seed and
// compares their levels. When the perturbation is active, enforces
// d_level < c_level and c_level below the threshold; a non-converged
// sub-solve aborts with a diagnostic.
LevelComparison compare_levels(const ProblemParams& params, const PotentialSet& pots,
                               const SolveConfig& config);

} // namespace choquard
