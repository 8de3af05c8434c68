#pragma once

#include <optional>
#include <string>
#include <vector>

#include "usco/probe.hpp"
#include "usco/space.hpp"
#include "usco/verdict.hpp"

namespace usco {

/// Result of analyzing the values sampled along one converging probe.
struct ValueAnalysis {
  enum class Status {
    Ok,            // bounded, clustering, limits admissible
    Unbounded,     // norm growth certifies escape from every bounded set
    NoCluster,     // majority of the sample pairwise separated at some eps
    LimitOutside,  // every tail cluster's limit certified outside the space
    Undecided,     // evidence insufficient to certify or falsify
  };

  Status status = Status::Undecided;
  double max_norm = 0.0;
  double fail_eps = 0.0;              // eps of the failed net test
  std::string detail;
  std::vector<Point> cluster_reps;    // latest member of each tail cluster
  double cluster_gap = 0.0;           // certified limit gap of the checked cluster
};

/// One tail cluster of a value sample: its members in sample order and a
/// certified (possibly infinite) bound on the distance from the last member
/// to the subsequential limit.
struct TailCluster {
  std::vector<Point> members;
  double limit_gap = kInf;
  bool stabilized = false;  // members identical from some index on
};

/// Greedy clustering of the tail half of the sample at the final eps of the
/// schedule, with a geometric-decay extrapolation of each cluster's limit gap.
std::vector<TailCluster> extract_tail_clusters(const std::vector<Point>& values,
                                               double final_eps);

/// Norm-growth test: flags values whose running max exceeds the cap or keeps
/// growing by `growth_ratio` across successive doublings of the prefix.
bool growth_unbounded(const std::vector<double>& norms, double cap, double growth_ratio,
                      std::string* detail);

/// Full per-probe analysis used by the usco-boundedness checkers: growth
/// test, eps-net battery over the schedule, and (when the value space
/// declares a limit oracle) membership of every tail cluster's limit.
ValueAnalysis analyze_values(const std::vector<Point>& values, const ProbePlan& plan,
                             const Space& value_space);

/// Re-runs the value analysis on a stored witness alone. A witness extracted
/// from a Falsified verdict reproduces Falsified.
Verdict check_witness(const Witness& witness, const ProbePlan& plan, const Space& value_space);

}  // namespace usco
