#pragma once
#include <string>

namespace choquard {

// Nonlinearity family of the model equation:
//   A: two Choquard terms (critical + subcritical),
//   B: critical Choquard + local power |u|^{p-1}u,
//   C: coupled Choquard + critical local power.
enum class Family { A, B, C };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

struct ProblemParams {
    int dim = 3;           // N >= 3
    double alpha = 1.0;    // Riesz exponent, 0 < alpha < N
    double p = 3.0;        // subcritical exponent (family-dependent window)
    double lambda = 1.0;   // coupling > 0
    Family family = Family::A;

    double two_alpha_star() const { return (2.0 * dim - alpha) / (dim - 2.0); }
    double two_star() const { return 2.0 * dim / (dim - 2.0); }

    // Throws ValidationError when any invariant fails (dimension, alpha window,
    // lambda sign, family-specific p window).
    void validate() const;
};

// The p-window inside which the concentration (small-eps bubble) estimate
// applies for any lambda > 0. Families A/C: N = 3 requires
// p in (5 - alpha, two_alpha_star); N >= 4 requires
// p in ((2N-2-alpha)/(N-2), two_alpha_star). Family B: N = 3 requires
// p in (3, 5); N >= 4 admits the whole validated range.
bool in_case1_window(const ProblemParams& params);

// The complementary window where the estimate needs lambda large: the
// validated p-range up to and including the case-1 lower endpoint
// (empty for family B when N >= 4).
bool in_case2_window(const ProblemParams& params);

} // namespace choquard
