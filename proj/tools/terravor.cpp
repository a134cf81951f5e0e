// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#include "terravor/cli.hpp"

int main(int argc, char** argv) { return terravor::cli::run(argc, argv); }
