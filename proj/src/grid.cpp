#include "choquard/grid.hpp"
#include "choquard/errors.hpp"

#include <sstream>

namespace choquard {

bool is_supported_axis_count(int n) {
    if (n < 8) return false;
    for (int p : {2, 3, 5}) {
        while (n % p == 0) n /= p;
    }
    return n == 1;
}

Grid make_grid(int dim, int points_per_axis, double box_length) {
    std::ostringstream err;
    if (dim < 1 || dim > 4) {
        err << "make_grid: dim must lie in [1, 4], got " << dim;
        throw ValidationError(err.str());
    }
    if (!is_supported_axis_count(points_per_axis)) {
        err << "make_grid: points_per_axis must be >= 8 with prime factors in {2,3,5}, got "
            << points_per_axis;
        throw ValidationError(err.str());
    }
    if (!(box_length > 0.0)) {
        err << "make_grid: box_length must be > 0, got " << box_length;
        throw ValidationError(err.str());
    }
    Grid g;
    g.dim = dim;
    g.n = points_per_axis;
    g.L = box_length;
    g.h = box_length / points_per_axis;
    return g;
}

} // namespace choquard
