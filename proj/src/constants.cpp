#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/quadrature.hpp"
#include "choquard/special.hpp"

#include <cmath>
#include <sstream>

namespace choquard {

double hls_sharp_constant(int dim, double alpha) {
    if (dim < 3) {
        throw ValidationError("hls_sharp_constant: dim must be >= 3");
    }
    if (!(alpha > 0.0 && alpha < dim)) {
        std::ostringstream err;
        err << "hls_sharp_constant: alpha must lie in (0, " << dim << "), got " << alpha;
        throw ValidationError(err.str());
    }
    const double n = dim;
    double log_val = 0.5 * alpha * std::log(M_PI)
                   + lgamma_fn(0.5 * n - 0.5 * alpha) - lgamma_fn(n - 0.5 * alpha)
                   + (-1.0 + alpha / n) * (lgamma_fn(0.5 * n) - lgamma_fn(n));
    return std::exp(log_val);
}

namespace {

// Radial-quadrature path for the Sobolev quotient of the explicit extremal
// profile W(r) = (1 + r^2)^{-(N-2)/2} (the normalization prefactor cancels
// in the quotient):
//   S_quad = int_0^inf W'(r)^2 r^{N-1} dr / (int_0^inf W^{2*} r^{N-1} dr)^{2/2*}
//            * (N omega_N)^{1 - 2/2*}.
double sobolev_from_bubble_quadrature(int dim) {
    const double n = dim;
    const double two_star = 2.0 * n / (n - 2.0);
    auto wprime_sq = [n](double r) {
        // W'(r) = -(N-2) r (1+r^2)^{-N/2}
        double b = 1.0 + r * r;
        double w = (n - 2.0) * r * std::pow(b, -0.5 * n);
        return w * w * std::pow(r, n - 1.0);
    };
    auto w_pow = [n, two_star](double r) {
        double b = 1.0 + r * r;
        return std::pow(b, -0.5 * (n - 2.0) * two_star) * std::pow(r, n - 1.0);
    };
    QuadratureResult num = integrate_to_infinity(wprime_sq, 0.0, 1e-14, 1e-13);
    QuadratureResult den = integrate_to_infinity(w_pow, 0.0, 1e-14, 1e-13);
    if (!(num.value > 0.0) || !(den.value > 0.0)) {
        throw NumericalError("best_sobolev_constant: quadrature returned non-positive value");
    }
    // Surface measure of the unit sphere: N omega_N = 2 pi^{N/2} / Gamma(N/2).
    const double nsphere = 2.0 * std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n);
    double grad_term = nsphere * num.value;
    double lp_term = std::pow(nsphere * den.value, 2.0 / two_star);
    return grad_term / lp_term;
}

} // namespace

double best_sobolev_constant(int dim) {
    if (dim < 3) {
        throw ValidationError("best_sobolev_constant: dim must be >= 3");
    }
    const double n = dim;
    double closed = M_PI * n * (n - 2.0) * std::pow(gamma_fn(0.5 * n) / gamma_fn(n), 2.0 / n);
    double quad = sobolev_from_bubble_quadrature(dim);
    double rel = std::fabs(quad - closed) / closed;
    if (rel > 1e-6) {
        std::ostringstream err;
        err << "best_sobolev_constant: quadrature path " << quad
            << " and closed form " << closed << " disagree (rel " << rel << ")";
        throw NumericalError(err.str());
    }
    return closed;
}

double shl_constant(int dim, double alpha) {
    double s = best_sobolev_constant(dim);
    double c = hls_sharp_constant(dim, alpha);
    double expo = (dim - 2.0) / (2.0 * dim - alpha);
    return s / std::pow(c, expo);
}

double ps_threshold(const ProblemParams& params) {
    params.validate();
    const double n = params.dim;
    if (params.family == Family::C) {
        double s = best_sobolev_constant(params.dim);
        return std::pow(s, 0.5 * n) / n;
    }
    const double a = params.alpha;
    double shl = shl_constant(params.dim, a);
    double pref = (n + 2.0 - a) / (2.0 * (2.0 * n - a));
    double expo = (2.0 * n - a) / (n + 2.0 - a);
    return pref * std::pow(shl, expo);
}

double riesz_symbol_constant(int dim, double alpha) {
    if (!(alpha > 0.0 && alpha < dim)) {
        throw ValidationError("riesz_symbol_constant: alpha must lie in (0, dim)");
    }
    const double n = dim;
    return std::pow(M_PI, 0.5 * n) * std::pow(2.0, n - alpha)
         * gamma_fn(0.5 * (n - alpha)) / gamma_fn(0.5 * alpha);
}

ConstantsReport constants_report(const ProblemParams& params) {
    params.validate();
    ConstantsReport rep;
    rep.hls_constant = hls_sharp_constant(params.dim, params.alpha);
    rep.sobolev = best_sobolev_constant(params.dim);
    rep.shl = rep.sobolev / std::pow(rep.hls_constant, (params.dim - 2.0) / (2.0 * params.dim - params.alpha));
    rep.threshold = ps_threshold(params);
    return rep;
}

} // namespace choquard
