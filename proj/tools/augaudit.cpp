// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <iostream>

#include "augaudit/cli.hpp"

int main(int argc, char** argv) { return augaudit::run_cli(argc, argv, std::cout, std::cerr); }
