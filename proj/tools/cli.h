// SPDX-License-Identifier: Apache-2.0
#ifndef SMPRIVACY_TOOLS_CLI_H_
#define SMPRIVACY_TOOLS_CLI_H_

#include <ostream>

namespace smprivacy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smprivacy::cli

#endif  // SMPRIVACY_TOOLS_CLI_H_
