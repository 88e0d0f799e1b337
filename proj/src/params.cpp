#include "choquard/params.hpp"
#include "choquard/errors.hpp"

#include <sstream>

namespace choquard {

Family family_from_string(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    if (s == "C" || s == "c") return Family::C;
    throw ValidationError("unknown family '" + s + "' (expected A, B, or C)");
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
    }
    return "?";
}

void ProblemParams::validate() const {
    std::ostringstream err;
    if (dim < 3) {
        err << "dim must be >= 3, got " << dim;
        throw ValidationError(err.str());
    }
    if (!(alpha > 0.0 && alpha < dim)) {
        err << "alpha must lie in (0, " << dim << "), got " << alpha;
        throw ValidationError(err.str());
    }
    if (!(lambda > 0.0)) {
        err << "lambda must be > 0, got " << lambda;
        throw ValidationError(err.str());
    }
    const double tas = two_alpha_star();
    const double lower_critical = (2.0 * dim - alpha) / dim;
    switch (family) {
        case Family::A:
        case Family::C:
            if (!(p > lower_critical && p < tas)) {
                err << "family " << family_to_string(family) << " requires p in ("
                    << lower_critical << ", " << tas << "), got " << p;
                throw ValidationError(err.str());
            }
            break;
        case Family::B:
            if (!(p > 1.0 && p < two_star() - 1.0)) {
                err << "family B requires p in (1, " << two_star() - 1.0 << "), got " << p;
                throw ValidationError(err.str());
            }
            break;
    }
}

bool in_case1_window(const ProblemParams& params) {
    if (params.family == Family::B) {
        if (params.dim == 3) return params.p > 3.0 && params.p < 5.0;
        return params.p > 1.0 && params.p < params.two_star() - 1.0;
    }
    const double tas = params.two_alpha_star();
    if (params.dim == 3) {
        return params.p > 5.0 - params.alpha && params.p < tas;
    }
    const double lo = (2.0 * params.dim - 2.0 - params.alpha) / (params.dim - 2.0);
    return params.p > lo && params.p < tas;
}

bool in_case2_window(const ProblemParams& params) {
    if (params.family == Family::B) {
        return params.dim == 3 && params.p > 1.0 && params.p <= 3.0;
    }
    const double lower_critical = (2.0 * params.dim - params.alpha) / params.dim;
    const double hi = (params.dim == 3) ? 5.0 - params.alpha
                                        : (2.0 * params.dim - 2.0 - params.alpha)
                                              / (params.dim - 2.0);
    return params.p > lower_critical && params.p <= hi;
}

} // namespace choquard
