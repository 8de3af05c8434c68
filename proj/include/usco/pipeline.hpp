#pragma once

#include <optional>
#include <vector>

#include "usco/blend.hpp"
#include "usco/cover.hpp"
#include "usco/glue.hpp"
#include "usco/probe.hpp"
#include "usco/space.hpp"

namespace usco {

struct BaireOneInput {
  PointFn eval;
  BaireOneScheme scheme;
  std::optional<Verdict> usco_verdict;  // hypothesis certificate for f
};

struct PipelineConfig {
  int horizon = 64;       // levels built and largest h_n index
  Box region;             // verification / diagnostics region
  int verify_points = 201;
  ProbePlan plan;         // plan for the final sequence check
  Space codomain = Space::euclidean(1);
  bool run_sequence_check = true;
};

struct PipelineResult {
  DiagonalGlue glue;
  FunctionSequence h;                 // glued sequence with the verdict attached
  std::vector<double> level_bounds;   // certified sup bounds per level
  Verdict sequence_verdict;
};

/// Full construction for a usco-bounded Baire-one function into a convex
/// Euclidean value set: build simple approximants with geometrically
/// shrinking sup error, certify them by bounded-perturbation transfer,
/// expand each into its continuous stage sequence, and glue diagonally.
/// Throws std::invalid_argument when the hypothesis verdict is missing or
/// not Certified, or when the value space is not Euclidean.
PipelineResult approximate_pipeline(const BaireOneInput& f, const PipelineConfig& config);

}  // namespace usco
