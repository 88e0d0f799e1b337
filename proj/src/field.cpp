#include "choquard/field.hpp"
#include "choquard/errors.hpp"

#include <cmath>
#include <random>

namespace choquard {

void ComplexField::check_finite(const char* context) const {
    for (const cplx& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError(std::string(context) + ": field contains non-finite samples");
        }
    }
}

namespace {

template <typename Out, typename Fn>
void sample_impl(const Grid& g, Out& out, const Fn& fn) {
    const std::size_t tot = g.total();
    std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = g.unflat(f);
        for (int d = 0; d < g.dim; ++d) x[d] = g.coord(idx[d]);
        out.v[f] = fn(x);
    }
}

} // namespace

ComplexField sample_complex(const Grid& g, const std::function<cplx(const std::array<double, 4>&)>& fn) {
    ComplexField out(g);
    sample_impl(g, out, fn);
    return out;
}

RealField sample_real(const Grid& g, const std::function<double(const std::array<double, 4>&)>& fn) {
    RealField out(g);
    sample_impl(g, out, fn);
    return out;
}

double lp_norm(const ComplexField& u, double p) {
    if (!(p >= 1.0)) {
        throw ValidationError("lp_norm: p must be >= 1");
    }
    double acc = 0.0;
    for (const cplx& z : u.v) acc += std::pow(std::abs(z), p);
    return std::pow(acc * u.grid.cell_volume(), 1.0 / p);
}

cplx l2_inner(const ComplexField& u, const ComplexField& w) {
    if (!(u.grid == w.grid)) {
        throw ValidationError("l2_inner: grid mismatch");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < u.v.size(); ++i) acc += u.v[i] * std::conj(w.v[i]);
    return acc * u.grid.cell_volume();
}

double l2_norm(const ComplexField& u) {
    double acc = 0.0;
    for (const cplx& z : u.v) acc += std::norm(z);
    return std::sqrt(acc * u.grid.cell_volume());
}

ComplexField scaled(const ComplexField& u, double t) {
    ComplexField out = u;
    for (cplx& z : out.v) z *= t;
    return out;
}

ComplexField shifted(const ComplexField& u, const std::array<int, 4>& cells) {
    const Grid& g = u.grid;
    ComplexField out(g);
    const std::size_t tot = g.total();
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = g.unflat(f);
        std::array<int, 4> src = idx;
        for (int d = 0; d < g.dim; ++d) {
            int s = (idx[d] - cells[d]) % g.n;
            if (s < 0) s += g.n;
            src[d] = s;
        }
        out.v[f] = u.v[g.flat(src)];
    }
    return out;
}

ComplexField smooth_seeded_field(const Grid& g, std::uint64_t seed, int mode_cap,
                                 double envelope_sigma) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Draw coefficients in a fixed lexicographic order over modes m with
    // |m|_inf <= mode_cap (the zero mode included, lightly weighted).
    struct Mode {
        std::array<int, 4> m;
        cplx c;
    };
    std::vector<Mode> modes;
    const int mc = mode_cap;
    std::array<int, 4> m{0, 0, 0, 0};
    std::function<void(int)> rec = [&](int d) {
        if (d == g.dim) {
            double m2 = 0.0;
            for (int i = 0; i < g.dim; ++i) m2 += static_cast<double>(m[i]) * m[i];
            double damp = std::exp(-0.5 * m2);
            double re = normal(rng), im = normal(rng);
            modes.push_back({m, cplx{re * damp, im * damp}});
            return;
        }
        for (int j = -mc; j <= mc; ++j) {
            m[d] = j;
            rec(d + 1);
        }
    };
    rec(0);

    const double two_pi_over_L = 2.0 * M_PI / g.L;
    ComplexField out(g);
    const std::size_t tot = g.total();
    std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};
    for (std::size_t f = 0; f < tot; ++f) {
        auto idx = g.unflat(f);
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            x[d] = g.coord(idx[d]);
            r2 += x[d] * x[d];
        }
        cplx acc{0.0, 0.0};
        for (const Mode& mo : modes) {
            double phase = 0.0;
            for (int d = 0; d < g.dim; ++d) phase += mo.m[d] * x[d];
            phase *= two_pi_over_L;
            acc += mo.c * cplx{std::cos(phase), std::sin(phase)};
        }
        if (envelope_sigma > 0.0) {
            acc *= std::exp(-r2 / (envelope_sigma * envelope_sigma));
        }
        out.v[f] = acc;
    }

    // Normalize to unit root-mean-square amplitude for scale-stable tests.
    double rms = 0.0;
    for (const cplx& z : out.v) rms += std::norm(z);
    rms = std::sqrt(rms / static_cast<double>(tot));
    if (rms > 0.0) {
        for (cplx& z : out.v) z /= rms;
    }
    return out;
}

} // namespace choquard
