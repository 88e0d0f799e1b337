#pragma once
#include "choquard/field.hpp"

namespace choquard {

// Unnormalized in-place c2c DFT over a dim-cube of n points per axis.
// sign = -1 forward, +1 backward (backward leaves the 1/n^dim factor to the
// caller). Plan creation is internally serialized; execution is thread-safe.
void dft_inplace(int dim, int n, cplx* data, int sign);

} // namespace choquard
