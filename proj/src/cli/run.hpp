#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace usco {
namespace cli {

/// Parsed command-line configuration shared by all subcommands.
struct RunConfig {
  std::string command;             // construct | check | converge | demo
  std::string fixture;
  std::string member;              // function within the fixture
  std::string input_path;          // serialized simple function
  std::string scheme;              // converge: "constant" synthetic scheme
  int horizon = 64;
  double grid = 1e-2;
  int probes = 0;                  // 0 = fixture default
  int prefix = 0;                  // 0 = fixture default
  std::vector<double> eps_schedule;  // empty = fixture default
  std::uint64_t seed = 0;          // 0 = fixture default
  std::string out_dir = ".";
  bool all = false;
};

/// Exit codes: 0 certified/success, 1 falsified, 2 inconclusive, 3 bad config.
int run_command(const RunConfig& config);

}  // namespace cli
}  // namespace usco
