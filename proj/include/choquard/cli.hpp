#pragma once

namespace choquard {

// Command-line front end. Returns the process exit code:
//   0 success, 2 validation error, 3 numerical-accuracy error,
//   4 non-convergence.
int run(int argc, char** argv);

} // namespace choquard
