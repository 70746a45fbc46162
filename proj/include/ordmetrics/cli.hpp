#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordmetrics/distances.hpp"
#include "ordmetrics/kemeny.hpp"

namespace ordmetrics {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string out_dir = "out";
  std::string solver = "best_of";    // greedy | local_search | combined | best_of
  std::string mode = "heuristic";    // exact | heuristic
  uint64_t seed = 1;
  int threads = 1;
  long long budget = 2000000;
};

KKMethod parse_solver(const std::string& name);
IsoMode parse_mode(const std::string& name);

// Creates the output directory and echoes the effective configuration to
// <out>/effective_config.json; every command calls this first.
void write_effective_config(const RunConfig& cfg);

void cmd_generate(const RunConfig& cfg);         // inputs: manifest.json
void cmd_indices(const RunConfig& cfg);          // inputs: election dir
void cmd_kkemeny(const RunConfig& cfg);          // inputs: election dir
void cmd_compare_kkemeny(const RunConfig& cfg);  // inputs: election dir
void cmd_distance(const RunConfig& cfg);         // inputs: two election files
void cmd_map(const RunConfig& cfg);              // inputs: election dir
void cmd_prefmap(const RunConfig& cfg);          // inputs: one election file
void cmd_correlate(const RunConfig& cfg);        // inputs: indices.csv, election dir

// Dispatches cfg.command; throws ValidationError for unknown commands.
void run_command(const RunConfig& cfg);

// Full argv parsing and exit-code mapping: 0 ok, 1 validation error,
// 2 budget exceeded.
int cli_main(int argc, const char* const* argv);

}  // namespace ordmetrics
