// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#include "epsobol/cli.hpp"

int main(int argc, char** argv) { return epsobol::cli::run_cli(argc, argv); }
