#pragma once

#include <functional>
#include <optional>

#include "usco/point.hpp"
#include "usco/verdict.hpp"

namespace usco {

using PointFn = std::function<Point(const Point&)>;

/// An indexed family n -> continuous function, with optional certified
/// uniform error bounds toward a declared limit and an optional
/// usco-boundedness verdict for the family as a whole.
struct FunctionSequence {
  std::function<PointFn(int)> at;            // 1-based stage index
  int horizon = 64;                          // largest constructed index
  std::optional<PointFn> limit;
  std::function<double(int)> uniform_error;  // may be empty
  std::optional<Verdict> usco_verdict;

  PointFn stage(int n) const { return at(n); }
};

}  // namespace usco
