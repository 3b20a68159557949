// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_TOOLS_CLI_CLI_HPP_
#define PONSHARE_TOOLS_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ponshare::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the ponshare binary. Subcommands:
//   generate      draw one random PON and write it in PON file format
//   eval          evaluate one PON file at one offered load
//   scenario1     (r, l) surface with active RNs at stage 2
//   scenario2     (r, q) surface with randomly active RNs at l = 2
//   oracle-check  compare pathing and allocation with the brute-force oracle
// Returns 0 on success, 2 on flag errors, 1 on runtime errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Convenience overload for tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ponshare::cli

#endif  // PONSHARE_TOOLS_CLI_CLI_HPP_
