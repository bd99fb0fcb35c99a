// SPDX-License-Identifier: MIT

#include <string>
#include <vector>

#include "schilder/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return schilder::cli::run(args);
}
