#pragma once
#include <array>
#include <cstddef>
#include <vector>

namespace choquard {

// Uniform periodic box [-L/2, L/2)^dim with n points per axis.
// Coordinates of index j along an axis: x_j = -L/2 + j * h, h = L/n.
struct Grid {
    int dim = 3;
    int n = 16;          // points per axis
    double L = 8.0;      // box edge length
    double h = 0.5;      // spacing = L / n

    std::size_t total() const {
        std::size_t t = 1;
        for (int d = 0; d < dim; ++d) t *= static_cast<std::size_t>(n);
        return t;
    }
    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= h;
        return v;
    }
    double coord(int j) const { return -0.5 * L + j * h; }

    // Row-major (last axis fastest) index <-> multi-index conversion.
    std::size_t flat(const std::array<int, 4>& idx) const {
        std::size_t f = 0;
        for (int d = 0; d < dim; ++d) f = f * n + static_cast<std::size_t>(idx[d]);
        return f;
    }
    std::array<int, 4> unflat(std::size_t f) const {
        std::array<int, 4> idx{0, 0, 0, 0};
        for (int d = dim - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(f % n);
            f /= n;
        }
        return idx;
    }

    bool operator==(const Grid&) const = default;
};

// Validates and builds a Grid. points_per_axis must be >= 8 and factor into
// the FFT-friendly primes {2, 3, 5}; dim in [1, 4]; box_length > 0.
Grid make_grid(int dim, int points_per_axis, double box_length);

// True iff n >= 8 and n factors into primes {2, 3, 5}.
bool is_supported_axis_count(int n);

} // namespace choquard
