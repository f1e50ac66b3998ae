#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace supgof {

// Seed used by randomized commands when --seed is absent; always echoed to
// the diagnostic stream so no run is silently irreproducible.
inline constexpr std::uint64_t kDefaultSeed = 1729;

// Runs one invocation (argv without the program name) and writes results to
// `out`, diagnostics to `err`.  Returns the process exit status: 0 success,
// 2 usage or domain error, 3 internal numeric failure.  Every command is a
// thin adapter over the library modules.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace supgof
