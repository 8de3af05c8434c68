#pragma once

#include <memory>
#include <vector>

#include "usco/function_sequence.hpp"
#include "usco/geometry.hpp"
#include "usco/point.hpp"

namespace usco {

/// One level of the gluing input: a sequence converging pointwise to the
/// m-th uniform approximant, with a certified sup bound to the limit
/// function.
struct GluingLevel {
  FunctionSequence inner;
  double sup_bound = kInf;  // certified sup distance from the approximant to the limit
};

struct GluingScheme {
  std::vector<GluingLevel> levels;
  std::optional<PointFn> limit;
};

struct GlueStep {
  double step_norm = 0.0;   // ||g_{m+1,n}(x) - g_{m,n}(x)||
  double threshold = 0.0;   // 2^{-m+1}
  bool clamped = false;
};

struct GlueEval {
  Point value;
  std::vector<GlueStep> steps;
};

/// The diagonal gluing h_n = g_{n,n}: level chains are combined with moves
/// capped at 2^{-m+1}; a move past the cap is replaced by a step of exactly
/// the cap length toward the target. Levels are reindexed on construction so
/// the m-th selected level has sup bound below 2^{-m}.
class DiagonalGlue {
 public:
  explicit DiagonalGlue(GluingScheme scheme);

  int horizon() const;
  const std::vector<int>& selected_levels() const { return selected_; }

  Point h(int n, const Point& x) const;
  GlueEval h_traced(int n, const Point& x) const;

  FunctionSequence as_sequence() const;

 private:
  std::shared_ptr<const GluingScheme> scheme_;
  std::vector<int> selected_;  // indices into scheme_->levels, bound-disciplined
};

/// Throws std::invalid_argument when the bounds cannot be reindexed into the
/// 2^{-m} discipline.
DiagonalGlue diagonal_glue(GluingScheme scheme);

}  // namespace usco
