// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include <iostream>

#include "mmct/cli/runner.hpp"

int main(int argc, char** argv) { return mmct::cli::main_entry(argc, argv, std::cout, std::cerr); }
