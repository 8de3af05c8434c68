#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "usco/geometry.hpp"
#include "usco/point.hpp"

namespace usco {

/// A sequence of points with a declared limit and a certified nonincreasing
/// bound on the distance to that limit.
struct ProbeSequence {
  std::function<Point(int)> at;     // 1-based index
  Point limit;
  std::function<double(int)> gap;   // upper bound on distance(at(n), limit)
  std::string name;

  static ProbeSequence from_points(std::vector<Point> points, Point limit,
                                   std::string name = "stored");
};

enum class ApproachRate { Geometric, Harmonic };

/// Parameters of a probing run. All randomness derives from `seed`.
struct ProbePlan {
  int sequences = 20;
  int prefix = 200;
  std::vector<double> eps_schedule;     // strictly decreasing
  double grid_resolution = 1e-3;
  Box domain;                           // region probes must stay in
  std::vector<Point> targets;           // accumulation points to aim at
  std::vector<ProbeSequence> supplied;  // caller probes, used first
  ApproachRate approach = ApproachRate::Geometric;
  std::uint64_t seed = 0x75c0b0;
  double value_cap = 1e9;               // instant unboundedness threshold
  double growth_ratio = 1.5;            // per-doubling growth that flags blow-up
  int index_horizon = 64;               // cap for sequence index schedules

  static std::vector<double> default_eps_schedule();  // 1, 1/2, ..., 2^-10
  static ProbePlan standard(Box domain, std::vector<Point> targets);

  void validate() const;  // throws std::invalid_argument on bad parameters
};

/// Deterministic uniform double in [0, 1), identical across platforms.
double uniform01(std::mt19937_64& rng);

/// Builds the plan's probe sequences: supplied ones first, then generated
/// approaches toward the targets (or random interior points), clamped to the
/// domain box.
std::vector<ProbeSequence> make_probes(const ProbePlan& plan);

/// Outcome of the epsilon-net feasibility test on a finite sample.
struct NetResult {
  bool net_found = false;
  std::vector<int> net_indices;                     // greedy centers
  std::vector<std::pair<int, int>> separated_pairs; // witness when no net
};

/// Greedy epsilon-net on the sample. Returns the net if its size stays at or
/// below half the sample (rounded up); otherwise reports that more than half
/// the points are pairwise more than epsilon apart, as evidence against any
/// convergent subsequence at this resolution.
NetResult total_boundedness_probe(const std::vector<Point>& points, double epsilon);

}  // namespace usco
