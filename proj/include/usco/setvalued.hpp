#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "usco/analysis.hpp"
#include "usco/function_sequence.hpp"
#include "usco/geometry.hpp"
#include "usco/point.hpp"
#include "usco/probe.hpp"
#include "usco/space.hpp"
#include "usco/verdict.hpp"

namespace usco {

/// A set-valued map with nonempty compact values in box-union or point-set
/// representation, plus the graph samples it was built from (when any).
class SetValuedMap {
 public:
  using ImageFn = std::function<ClosedSet(const Point&)>;

  SetValuedMap(Box domain, ImageFn image) : domain_(std::move(domain)), image_(std::move(image)) {}

  const Box& domain() const { return domain_; }
  ClosedSet image(const Point& x) const;  // throws if the image is empty

  void set_graph_samples(std::vector<std::pair<Point, Point>> samples) {
    samples_ = std::move(samples);
  }
  const std::optional<std::vector<std::pair<Point, Point>>>& graph_samples() const {
    return samples_;
  }

 private:
  Box domain_;
  ImageFn image_;
  std::optional<std::vector<std::pair<Point, Point>>> samples_;
};

/// The map whose graph is the closure of the sampled graph at the given
/// resolution: the image at x collects every sampled value whose base point
/// is within `resolution` of x, merged into boxes with the same tolerance.
SetValuedMap graph_closure_hull(const std::vector<std::pair<Point, Point>>& graph,
                                double resolution);

/// Re-closes a hull from its stored graph samples. Closing a closed graph
/// changes nothing, so this equals the original hull at every point.
SetValuedMap graph_closure_hull(const SetValuedMap& hull, double resolution);

/// Samples f on a uniform grid over the domain box and closes the graph.
SetValuedMap graph_closure_hull(const PointFn& f, const Box& domain, double step,
                                double resolution);

/// Sequential usco test: along every plan probe, every value selection from
/// the images must stay bounded, keep clustering, and cluster inside the
/// image of the probe limit (when the limit lies in the domain).
Verdict check_usco(const SetValuedMap& map, const ProbePlan& plan, const Space& value_space);

/// Sequential test that the graph of f fits inside some usco map: values
/// along every probe stay bounded, pass the eps-net battery at every
/// schedule resolution, and (for declared subspaces) cluster only at limits
/// the membership oracle accepts.
Verdict check_usco_bounded(const PointFn& f, const ProbePlan& plan, const Space& value_space);

/// Same test for a whole function sequence: values f_{k_j}(x_j) along every
/// probe and every index schedule (constant, diagonal, half-speed).
Verdict check_sequence_usco_bounded(const FunctionSequence& seq, const ProbePlan& plan,
                                    const Space& value_space);

/// Bounded-perturbation transfer: a Certified verdict with bound M for f
/// yields a Certified verdict with bound M + K for any g with sup|f-g| <= K,
/// provided the value space is Euclidean. Throws std::invalid_argument when
/// the verdict is not Certified or the space is not Euclidean.
Verdict transfer_bounded_perturbation(const Verdict& verdict_f, double bound_gap,
                                      const Space& value_space);

}  // namespace usco
