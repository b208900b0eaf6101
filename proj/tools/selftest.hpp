#pragma once

#include <cstdint>
#include <ostream>

namespace qsn::cli {

// Runs the seven invariant families, one summary line each plus a footer.
// Returns the number of failed families (0 means a clean pass).
int run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace qsn::cli
