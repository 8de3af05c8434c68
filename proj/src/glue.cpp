#include "usco/glue.hpp"

#include <cmath>
#include <stdexcept>

namespace usco {

DiagonalGlue::DiagonalGlue(GluingScheme scheme)
    : scheme_(std::make_shared<const GluingScheme>(std::move(scheme))) {
  // Reindex: pick an increasing subsequence of levels whose bounds meet the
  // 2^{-m} discipline, instead of trusting the caller's indexing.
  std::size_t next = 0;
  for (int m = 1; next < scheme_->levels.size(); ++m) {
    const double required = std::ldexp(1.0, -m);
    while (next < scheme_->levels.size() && !(scheme_->levels[next].sup_bound < required)) ++next;
    if (next == scheme_->levels.size()) break;
    selected_.push_back(static_cast<int>(next));
    ++next;
  }
  if (selected_.empty())
    throw std::invalid_argument(
        "diagonal_glue: no level satisfies the 2^{-m} bound discipline after reindexing");
}

int DiagonalGlue::horizon() const { return static_cast<int>(selected_.size()); }

GlueEval DiagonalGlue::h_traced(int n, const Point& x) const {
  if (n < 1 || n > horizon())
    throw std::out_of_range("DiagonalGlue: stage outside constructed horizon");

  auto level_eval = [&](int m) {
    const GluingLevel& level = scheme_->levels[static_cast<std::size_t>(selected_[static_cast<std::size_t>(m - 1)])];
    int inner_n = std::min(n, level.inner.horizon);
    return level.inner.at(inner_n)(x);
  };

  GlueEval eval{level_eval(1), {}};
  for (int m = 1; m < n; ++m) {
    Point target = level_eval(m + 1);
    double gap = distance(target, eval.value);
    double threshold = std::ldexp(1.0, -m + 1);
    GlueStep step;
    step.threshold = threshold;
    if (gap <= threshold) {
      step.step_norm = gap;
      eval.value = target;
    } else {
      step.clamped = true;
      Point move = (threshold / gap) * (target - eval.value);
      step.step_norm = move.norm();
      eval.value = eval.value + move;
    }
    eval.steps.push_back(step);
  }
  return eval;
}

Point DiagonalGlue::h(int n, const Point& x) const { return h_traced(n, x).value; }

FunctionSequence DiagonalGlue::as_sequence() const {
  FunctionSequence seq;
  seq.horizon = horizon();
  DiagonalGlue self = *this;
  seq.at = [self](int n) {
    return [self, n](const Point& x) { return self.h(n, x); };
  };
  if (scheme_->limit) seq.limit = scheme_->limit;
  return seq;
}

DiagonalGlue diagonal_glue(GluingScheme scheme) { return DiagonalGlue(std::move(scheme)); }

}  // namespace usco
