// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include <iostream>

#include "cli/cli.hpp"

int main(int argc, char** argv) { return ponshare::cli::run(argc, argv, std::cout, std::cerr); }
