// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace terravor::cli {

/// Exit codes: 0 success, 2 usage or validation failure, 1 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Runs one command line. `args` excludes the program name. Results go to the
/// files named by --out / --svg / --terrain, or to `out` when --out is absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace terravor::cli
