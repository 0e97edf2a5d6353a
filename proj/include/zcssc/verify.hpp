#pragma once

#include <iosfwd>

namespace zcssc {

// Quick self-check of the analytic identities and noiseless round trips.
// Prints one line per check; returns true when all pass.
bool run_verification(std::ostream& out);

}  // namespace zcssc
