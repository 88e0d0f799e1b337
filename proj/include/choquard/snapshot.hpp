#pragma once
#include "choquard/field.hpp"

#include <string>

namespace choquard {

// Field snapshot format (.cfd): a single JSON header line
//   {"dim": d, "points_per_axis": n, "box_length": L, "dtype": "c128"}
// terminated by '\n', followed by raw little-endian 8-byte-real (re, im)
// pairs in row-major order.
void write_cfd(const std::string& path, const ComplexField& u);
ComplexField read_cfd(const std::string& path);

} // namespace choquard
