// SPDX-License-Identifier: MIT
//
// The acceptance suite: eleven numbered criteria, each a deterministic
// pass/fail check with pinned tolerances. Shared by the `verify` CLI command
// and the acceptance test binary.
#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "schilder/io.hpp"

namespace schilder::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    io::Value details;  // deterministic numbers only (reports are byte-compared)
};

// Runs the requested criteria (all by default, 1..11). progress, when given,
// receives one pass/fail line per criterion.
std::vector<CriterionResult> run_acceptance(
    const std::optional<std::vector<int>>& only = std::nullopt,
    std::FILE* progress = nullptr);

io::Value acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace schilder::verify
