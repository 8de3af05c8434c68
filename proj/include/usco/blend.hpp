#pragma once

#include <optional>

#include "usco/function_sequence.hpp"
#include "usco/probe.hpp"
#include "usco/simplefn.hpp"
#include "usco/space.hpp"

namespace usco {

/// Stage-n blending data at a query point: the candidate piece, its stage
/// distance d, the distance e to the union of all other stage sets, guard
/// membership d < e/3, and the coefficient 1 - 4d/(d+e).
struct BlendGeometry {
  int stage = 0;
  std::optional<std::int64_t> gamma;
  double piece_distance = kInf;  // d
  double other_distance = kInf;  // e (extended real; +inf when no other piece)
  bool in_guard = false;
  double coefficient = 0.0;      // meaningful when in_guard

  bool none() const { return !gamma.has_value(); }
};

/// Geometry of the unique guard region containing x at stage n, or "none".
/// e is an exact minimum over the other pieces: found candidates certify it
/// because any piece outside the searched radius lies farther than the
/// minimum already found. With a single piece e = +inf and the coefficient
/// is 1.
BlendGeometry blend_geometry(const SimpleFunction& f, int n, const Point& x);

/// The stage-n continuous function: anchor outside every guard region,
/// anchor + c * (y_gamma - anchor) inside the guard of gamma. Equals y_gamma
/// exactly on the stage set F^n_gamma.
PointFn continuous_stage(const SimpleFunction& f, int n);

struct SequenceOptions {
  int horizon = 64;
  std::optional<ProbePlan> check_plan;  // run the sequence checker when set
  std::optional<Space> value_space;     // defaults to Euclidean(1)
  std::optional<Verdict> hypothesis;    // usco-boundedness verdict for f
};

/// The sequence n -> continuous_stage(f, n). Converges pointwise to f with
/// eventual exactness: once x enters F^n of its piece, every later stage
/// function reproduces f(x) exactly. When a check plan is supplied the
/// sequence checker runs and its verdict is attached; a missing or
/// non-Certified hypothesis verdict is recorded as a note, construction
/// proceeds regardless.
FunctionSequence continuous_sequence(const SimpleFunction& f, const SequenceOptions& options = {});

}  // namespace usco
