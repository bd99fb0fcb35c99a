// SPDX-License-Identifier: MIT
//
// Configuration, dispatch and report emission for the command-line tool.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schilder/io.hpp"
#include "schilder/spectrum.hpp"
#include "schilder/types.hpp"

namespace schilder::cli {

struct RunConfig {
    std::string command;
    double alpha = 0.4;
    DecaySpec spectrum = DecaySpec::geometric(0.5, 0.5);
    std::size_t level = 8;       // J
    std::size_t coeff_count = 0; // N, 0 = 2^J
    std::size_t channels = 4;    // K
    std::uint64_t seed = 42;
    std::size_t paths = 100000;  // M
    double delta = 0.2;
    std::vector<double> eps_grid;
    double mc_upto = 0.015625;   // 2^-6
    double tight_a = 1.0;
    double div_growth = 1.4142135623730951;  // tightness (c_k) = growth^k
    std::size_t basis_n = 0;
    double basis_t = 0.0;
    std::string transform_dir = "forward";   // forward | inverse
    std::string input;
    std::string output;
    std::string center;          // coefficient CSV for ball commands
    std::string format = "json"; // json | csv (curve emission)
    std::size_t dump_limit = 4;  // simulate: paths written to CSV
};

// argv (without the program name) + optional JSON config file named by
// --config; flags override file values; unknown keys are rejected.
RunConfig parse_config(const std::vector<std::string>& args);

// "2^-3..2^-14" (descending dyadic range) or a comma list of floats.
std::vector<double> parse_eps_grid(const std::string& text);

// Spectrum descriptor, e.g. {"kind":"geometric","lambda0":0.5,"ratio":0.5,"K":4}.
DecaySpec parse_spectrum_json(const std::string& text, std::size_t& channels_out);

// Bit-stable emission: stdout when location is empty.
void emit_report(const io::Value& report, const std::string& location);

// Full dispatch; returns the process exit code (0 ok, 2 validation, 1 runtime).
int run(const std::vector<std::string>& args);

}  // namespace schilder::cli
