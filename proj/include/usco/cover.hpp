#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "usco/function_sequence.hpp"
#include "usco/geometry.hpp"
#include "usco/simplefn.hpp"
#include "usco/space.hpp"
#include "usco/verdict.hpp"

namespace usco {

/// Box with per-side end closedness, used for exact disjointification of
/// covers into partition cells.
struct HalfOpenBox {
  std::vector<double> lo, hi;
  std::vector<bool> lo_closed, hi_closed;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const;
  bool contains(const Point& p) const;
  /// Closed box shrunk by `margin` on each non-closed side.
  Box inner_box(double margin) const;
};

/// A \ B as disjoint half-open boxes (at most 2*dim pieces).
std::vector<HalfOpenBox> subtract(const HalfOpenBox& a, const HalfOpenBox& b);

/// Uniform-modulus data for a continuous function: omega bounds the value
/// oscillation over any set of the given diameter.
struct ContinuityModulus {
  std::function<double(double)> osc_bound;

  static ContinuityModulus lipschitz(double constant);

  /// Largest probe diameter with osc_bound(diameter) < eps, found by
  /// halving. Throws when no positive diameter qualifies.
  double diameter_for(double eps, double initial) const;
};

/// The disjointified cover behind a constructed simple function: ordered
/// open cover boxes V, cells W (V_a minus all earlier V), chosen values.
struct CoverRefinement {
  Box region;
  double cell_step = 0.0;
  double overlap = 0.0;
  std::vector<std::int64_t> cells_per_dim;
  std::int64_t cell_count = 0;
};

struct ContinuousToSimple {
  SimpleFunction fn;
  Verdict verdict;        // certified by local finiteness of the partition
  CoverRefinement cover;
  double sampled_error = 0.0;
};

/// Partition the region into cells small enough that g oscillates less than
/// eps on each inflated cell, take g's value at each cell center, and wrap
/// the disjointified cells as a simple function within eps of g.
ContinuousToSimple simple_from_continuous(const PointFn& g, const ContinuityModulus& modulus,
                                          double epsilon, const Box& region);

/// Approximation input for a function that is not itself continuous: either
/// an analytic simple-approximant constructor, or continuity data to
/// delegate with.
struct ContinuousApprox {
  PointFn eval;
  ContinuityModulus modulus;
  Box region;
};

struct BaireOneScheme {
  std::function<SimpleFunction(double)> simple_approximant;  // scheme (a)
  std::optional<ContinuousApprox> continuous;                // scheme (b)
};

struct SimpleApproxResult {
  SimpleFunction fn;
  std::optional<Verdict> verdict;
  double sampled_error = 0.0;
};

/// Simple function within eps of f (sampled over verify_region). When f
/// carries a Certified bound M and the value space is Euclidean, the result
/// carries a Certified bound M + eps.
SimpleApproxResult simple_from_baire_one(const PointFn& f, const BaireOneScheme& scheme,
                                         const std::optional<Verdict>& f_verdict, double epsilon,
                                         const Box& verify_region, const Space& value_space);

/// Uniform sample grid over a bounded box, points_per_dim per side.
std::vector<Point> uniform_grid(const Box& box, int points_per_dim);

}  // namespace usco
