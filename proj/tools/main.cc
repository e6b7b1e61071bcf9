// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "cli.h"

int main(int argc, char** argv) { return smprivacy::cli::run(argc, argv, std::cout, std::cerr); }
