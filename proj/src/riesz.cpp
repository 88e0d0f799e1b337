#include "choquard/riesz.hpp"
#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/fft.hpp"
#include "choquard/special.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <sstream>

namespace choquard {

namespace {
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

void dft_inplace(int dim, int n, cplx* data, int sign) {
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        std::vector<int> dims(static_cast<std::size_t>(dim), n);
        plan = fftw_plan_dft(dim, dims.data(), buf, buf,
                             sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) {
        throw NumericalError("dft_inplace: transform planning failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
}

RieszPlan riesz_plan(const Grid& grid, double alpha, ZeroModePolicy policy) {
    if (!(alpha > 0.0 && alpha < grid.dim)) {
        std::ostringstream err;
        err << "riesz_plan: alpha must lie in (0, " << grid.dim << "), got " << alpha;
        throw ValidationError(err.str());
    }
    RieszPlan plan;
    plan.grid = grid;
    plan.alpha = alpha;
    plan.policy = policy;
    plan.multiplier.assign(grid.total(), 0.0);

    const double c = riesz_symbol_constant(grid.dim, alpha);
    const double base_k = 2.0 * M_PI / grid.L;
    const std::size_t tot = grid.total();
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = grid.unflat(f);
        double k2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            int m = idx[d];
            if (m > grid.n / 2) m -= grid.n;
            double kd = base_k * m;
            k2 += kd * kd;
        }
        if (k2 > 0.0) {
            plan.multiplier[f] = c * std::pow(std::sqrt(k2), alpha - grid.dim);
        }
    }
    return plan;
}

RealField riesz_convolve(const RieszPlan& plan, const RealField& f) {
    if (!(f.grid == plan.grid)) {
        throw ValidationError("riesz_convolve: grid mismatch");
    }
    const Grid& g = plan.grid;
    const std::size_t tot = g.total();
    std::vector<cplx> buf(tot);
    double mean = 0.0;
    if (plan.policy == ZeroModePolicy::background_subtract) {
        for (double x : f.v) mean += x;
        mean /= static_cast<double>(tot);
    }
    for (std::size_t i = 0; i < tot; ++i) buf[i] = cplx{f.v[i] - mean, 0.0};

    dft_inplace(g.dim, g.n, buf.data(), -1);
    for (std::size_t i = 0; i < tot; ++i) buf[i] *= plan.multiplier[i];
    dft_inplace(g.dim, g.n, buf.data(), +1);
    const double inv = 1.0 / static_cast<double>(tot);

    RealField out(g);
    double re2 = 0.0, im2 = 0.0;
    for (std::size_t i = 0; i < tot; ++i) {
        double re = buf[i].real() * inv;
        double im = buf[i].imag() * inv;
        out.v[i] = re;
        re2 += re * re;
        im2 += im * im;
    }
    if (im2 > 1e-16 * re2 && re2 > 0.0) {
        std::ostringstream err;
        err << "riesz_convolve: imaginary residue " << std::sqrt(im2)
            << " exceeds 1e-8 of the output norm " << std::sqrt(re2);
        throw NumericalError(err.str());
    }
    return out;
}

double madelung_constant(int dim, double alpha) {
    if (!(alpha > 0.0 && alpha < dim) || dim < 1 || dim > 4) {
        throw ValidationError("madelung_constant: need dim in [1,4] and alpha in (0, dim)");
    }
    const double n = dim;
    const double kappa = 2.5;  // unit-lattice splitting parameter
    const double c = riesz_symbol_constant(dim, alpha);

    double acc = 0.0;
    // Short-range sum over nonzero lattice vectors.
    const int rs = 5;
    std::array<int, 4> j{0, 0, 0, 0};
    std::function<void(int)> rec_short = [&](int d) {
        if (d == dim) {
            double r2 = 0.0;
            for (int i = 0; i < dim; ++i) r2 += static_cast<double>(j[i]) * j[i];
            if (r2 == 0.0) return;
            double r = std::sqrt(r2);
            acc += gamma_q(0.5 * alpha, kappa * kappa * r2) / std::pow(r, alpha);
            return;
        }
        for (int v = -rs; v <= rs; ++v) {
            j[d] = v;
            rec_short(d + 1);
        }
    };
    rec_short(0);

    // Reciprocal sum over nonzero modes.
    const int kf = 8;
    std::function<void(int)> rec_recip = [&](int d) {
        if (d == dim) {
            double m2 = 0.0;
            for (int i = 0; i < dim; ++i) m2 += static_cast<double>(j[i]) * j[i];
            if (m2 == 0.0) return;
            double kmag = 2.0 * M_PI * std::sqrt(m2);
            double q = gamma_q(0.5 * (n - alpha), M_PI * M_PI * m2 / (kappa * kappa));
            acc += c * std::pow(kmag, alpha - n) * q;
            return;
        }
        for (int v = -kf; v <= kf; ++v) {
            j[d] = v;
            rec_recip(d + 1);
        }
    };
    rec_recip(0);

    // Neutralizing background and the regularized self limit.
    acc -= 2.0 * std::pow(M_PI, 0.5 * n) * std::pow(kappa, alpha - n)
           / ((n - alpha) * gamma_fn(0.5 * alpha));
    acc -= std::pow(kappa, alpha) / gamma_fn(0.5 * alpha + 1.0);
    return acc;
}

namespace {

// Equal-volume-ball cell average of |z|^{-alpha}: the closed-form analytic
// integral over the ball of the cell's volume, divided by the cell volume.
double ball_average_self(const Grid& g, double alpha) {
    const double n = g.dim;
    const double omega_n = std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
    const double rho = g.h * std::pow(omega_n, -1.0 / n);
    return n * omega_n * std::pow(rho, n - alpha) / ((n - alpha) * std::pow(g.h, n));
}

RealField ewald_kernel_table(const Grid& g, double alpha) {
    const double L = g.L;
    const double V = std::pow(L, g.dim);
    const double kappa = 4.0 / L;
    const double c = riesz_symbol_constant(g.dim, alpha);
    const double n = g.dim;

    // Wrapped displacement per axis index: d_j = j h mapped into [-L/2, L/2).
    std::vector<double> disp(static_cast<std::size_t>(g.n));
    for (int jj = 0; jj < g.n; ++jj) {
        double d = jj * g.h;
        if (d >= 0.5 * L) d -= L;
        disp[static_cast<std::size_t>(jj)] = d;
    }

    RealField out(g);
    const std::size_t tot = g.total();

    // Short-range: images within |j|_inf <= 2 (kappa L = 4 makes the next
    // shell's contribution below 1e-16).
    const int rs = 2;
    // Reciprocal range: exp(-pi^2 m^2 / (kappa L)^2) = exp(-m^2 pi^2/16).
    const int kf = 9;

    // Precompute the reciprocal-mode list with weights.
    struct Mode {
        std::array<double, 4> k;
        double w;
    };
    std::vector<Mode> modes;
    {
        std::array<int, 4> m{0, 0, 0, 0};
        std::function<void(int)> rec = [&](int d) {
            if (d == g.dim) {
                double m2 = 0.0;
                for (int i = 0; i < g.dim; ++i) m2 += static_cast<double>(m[i]) * m[i];
                if (m2 == 0.0) return;
                double kmag = 2.0 * M_PI * std::sqrt(m2) / L;
                double q = gamma_q(0.5 * (n - alpha), kmag * kmag / (4.0 * kappa * kappa));
                double w = c * std::pow(kmag, alpha - n) * q / V;
                if (std::fabs(w) < 1e-18) return;
                Mode mo;
                for (int i = 0; i < g.dim; ++i) mo.k[i] = 2.0 * M_PI * m[i] / L;
                mo.w = w;
                modes.push_back(mo);
                return;
            }
            for (int v = -kf; v <= kf; ++v) {
                m[d] = v;
                rec(d + 1);
            }
        };
        rec(0);
    }

    const double background = -2.0 * std::pow(M_PI, 0.5 * n) * std::pow(kappa, alpha - n)
                              / ((n - alpha) * gamma_fn(0.5 * alpha) * V);

    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = g.unflat(f);
        std::array<double, 4> z{0.0, 0.0, 0.0, 0.0};
        for (int d = 0; d < g.dim; ++d) z[d] = disp[static_cast<std::size_t>(idx[d])];

        double val = background;
        // Short-range images.
        std::array<int, 4> jm{0, 0, 0, 0};
        std::function<void(int)> rec_s = [&](int d) {
            if (d == g.dim) {
                double r2 = 0.0;
                for (int i = 0; i < g.dim; ++i) {
                    double zz = z[i] + jm[i] * L;
                    r2 += zz * zz;
                }
                if (r2 < 1e-28) return;  // origin handled by the self entry
                double r = std::sqrt(r2);
                val += gamma_q(0.5 * alpha, kappa * kappa * r2) / std::pow(r, alpha);
                return;
            }
            for (int v = -rs; v <= rs; ++v) {
                jm[d] = v;
                rec_s(d + 1);
            }
        };
        rec_s(0);
        // Reciprocal sum.
        for (const Mode& mo : modes) {
            double phase = 0.0;
            for (int d = 0; d < g.dim; ++d) phase += mo.k[d] * z[d];
            val += mo.w * std::cos(phase);
        }
        out.v[f] = val;
    }

    const double m1 = madelung_constant(g.dim, alpha);
    out.v[0] = -m1 * std::pow(g.h, -alpha) + m1 * std::pow(L, -alpha);
    return out;
}

RealField min_image_kernel_table(const Grid& g, double alpha) {
    std::vector<double> disp(static_cast<std::size_t>(g.n));
    for (int jj = 0; jj < g.n; ++jj) {
        double d = jj * g.h;
        if (d >= 0.5 * g.L) d -= g.L;
        disp[static_cast<std::size_t>(jj)] = d;
    }
    RealField out(g);
    const std::size_t tot = g.total();
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = g.unflat(f);
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            double zz = disp[static_cast<std::size_t>(idx[d])];
            r2 += zz * zz;
        }
        out.v[f] = (r2 > 0.0) ? std::pow(r2, -0.5 * alpha) : 0.0;
    }
    out.v[0] = ball_average_self(g, alpha);
    return out;
}

} // namespace

RealField direct_kernel_table(const Grid& grid, double alpha, DirectKernel kernel) {
    if (!(alpha > 0.0 && alpha < grid.dim)) {
        throw ValidationError("direct_kernel_table: alpha must lie in (0, dim)");
    }
    return kernel == DirectKernel::min_image ? min_image_kernel_table(grid, alpha)
                                             : ewald_kernel_table(grid, alpha);
}

RealField riesz_convolve_direct(const Grid& grid, double alpha, const RealField& f,
                                DirectKernel kernel) {
    if (!(f.grid == grid)) {
        throw ValidationError("riesz_convolve_direct: grid mismatch");
    }
    if (grid.total() > (1u << 15)) {
        std::ostringstream err;
        err << "riesz_convolve_direct: cost guard - grid has " << grid.total()
            << " points (limit 32768)";
        throw ValidationError(err.str());
    }
    RealField K = direct_kernel_table(grid, alpha, kernel);
    RealField out(grid);
    const int n = grid.n;
    const double hN = grid.cell_volume();

    // diff[i*n + j] = (i - j) mod n, shared by every axis.
    std::vector<int> diff(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            diff[static_cast<std::size_t>(i) * n + j] = ((i - j) % n + n) % n;
        }
    }
    auto drow = [&](int i) { return diff.data() + static_cast<std::size_t>(i) * n; };

    switch (grid.dim) {
        case 1: {
            for (int x0 = 0; x0 < n; ++x0) {
                const int* d0 = drow(x0);
                double acc = 0.0;
                for (int y0 = 0; y0 < n; ++y0) acc += K.v[static_cast<std::size_t>(d0[y0])] * f.v[static_cast<std::size_t>(y0)];
                out.v[static_cast<std::size_t>(x0)] = acc * hN;
            }
            break;
        }
        case 2: {
            for (int x0 = 0; x0 < n; ++x0) {
                const int* d0 = drow(x0);
                for (int x1 = 0; x1 < n; ++x1) {
                    const int* d1 = drow(x1);
                    double acc = 0.0;
                    for (int y0 = 0; y0 < n; ++y0) {
                        const std::size_t kb = static_cast<std::size_t>(d0[y0]) * n;
                        const std::size_t fb = static_cast<std::size_t>(y0) * n;
                        for (int y1 = 0; y1 < n; ++y1) acc += K.v[kb + d1[y1]] * f.v[fb + y1];
                    }
                    out.v[static_cast<std::size_t>(x0) * n + x1] = acc * hN;
                }
            }
            break;
        }
        case 3: {
            for (int x0 = 0; x0 < n; ++x0) {
                const int* d0 = drow(x0);
                for (int x1 = 0; x1 < n; ++x1) {
                    const int* d1 = drow(x1);
                    for (int x2 = 0; x2 < n; ++x2) {
                        const int* d2 = drow(x2);
                        double acc = 0.0;
                        for (int y0 = 0; y0 < n; ++y0) {
                            const std::size_t k0 = static_cast<std::size_t>(d0[y0]) * n;
                            const std::size_t f0 = static_cast<std::size_t>(y0) * n;
                            for (int y1 = 0; y1 < n; ++y1) {
                                const double* krow = K.v.data() + (k0 + d1[y1]) * n;
                                const double* frow = f.v.data() + (f0 + y1) * n;
                                for (int y2 = 0; y2 < n; ++y2) acc += krow[d2[y2]] * frow[y2];
                            }
                        }
                        out.v[(static_cast<std::size_t>(x0) * n + x1) * n + x2] = acc * hN;
                    }
                }
            }
            break;
        }
        case 4: {
            for (int x0 = 0; x0 < n; ++x0) {
                const int* d0 = drow(x0);
                for (int x1 = 0; x1 < n; ++x1) {
                    const int* d1 = drow(x1);
                    for (int x2 = 0; x2 < n; ++x2) {
                        const int* d2 = drow(x2);
                        for (int x3 = 0; x3 < n; ++x3) {
                            const int* d3 = drow(x3);
                            double acc = 0.0;
                            for (int y0 = 0; y0 < n; ++y0) {
                                const std::size_t k0 = static_cast<std::size_t>(d0[y0]) * n;
                                const std::size_t f0 = static_cast<std::size_t>(y0) * n;
                                for (int y1 = 0; y1 < n; ++y1) {
                                    const std::size_t k1 = (k0 + d1[y1]) * n;
                                    const std::size_t f1 = (f0 + y1) * n;
                                    for (int y2 = 0; y2 < n; ++y2) {
                                        const double* krow = K.v.data() + (k1 + d2[y2]) * n;
                                        const double* frow = f.v.data() + (f1 + y2) * n;
                                        for (int y3 = 0; y3 < n; ++y3) acc += krow[d3[y3]] * frow[y3];
                                    }
                                }
                            }
                            out.v[((static_cast<std::size_t>(x0) * n + x1) * n + x2) * n + x3] =
                                acc * hN;
                        }
                    }
                }
            }
            break;
        }
        default:
            throw ValidationError("riesz_convolve_direct: unsupported dimension");
    }
    return out;
}

double interaction(const ComplexField& u, double s, const RieszPlan& plan, bool force) {
    if (!(u.grid == plan.grid)) {
        throw ValidationError("interaction: grid mismatch");
    }
    const double n = plan.grid.dim;
    const double lo = (2.0 * n - plan.alpha) / n;
    const double hi = (2.0 * n - plan.alpha) / (n - 2.0);
    if ((s < lo || s > hi) && !force) {
        std::ostringstream err;
        err << "interaction: exponent " << s << " outside the admissible window [" << lo << ", "
            << hi << "] (pass force to evaluate anyway)";
        throw ValidationError(err.str());
    }
    RealField dens(u.grid);
    for (std::size_t i = 0; i < u.v.size(); ++i) dens.v[i] = std::pow(std::abs(u.v[i]), s);
    RealField conv = riesz_convolve(plan, dens);
    double acc = 0.0;
    for (std::size_t i = 0; i < dens.v.size(); ++i) acc += conv.v[i] * dens.v[i];
    return acc * u.grid.cell_volume();
}

} // namespace choquard
