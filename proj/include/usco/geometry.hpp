#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "usco/point.hpp"

namespace usco {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; ends may be infinite. Empty when lo > hi.
struct Interval {
  double lo = kInf;
  double hi = -kInf;

  bool empty() const { return lo > hi; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  double clamp_gap(double x) const;  // distance from x to the interval
};

/// Axis-aligned product of closed intervals over coordinates 0..dim-1.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> sides) : sides_(std::move(sides)) {}
  static Box segment(double lo, double hi) { return Box({Interval{lo, hi}}); }
  static Box around(const Point& center, double radius, int dim);

  int dim() const { return static_cast<int>(sides_.size()); }
  const std::vector<Interval>& sides() const { return sides_; }
  bool empty() const;
  bool contains(const Point& p) const;
  bool intersects(const Box& other) const;
  bool bounded() const;
  double distance_to(const Point& p) const;
  Point center() const;
  std::vector<Point> corners() const;  // 2^dim corner points (bounded boxes)

 private:
  std::vector<Interval> sides_;
};

/// Certified bracket [lo, hi] around a distance value.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// A closed subset with a distance oracle and a membership test. Exact for
/// the box-union and point-set representations; user oracles may carry a
/// declared bracket width.
class ClosedSet {
 public:
  using DistFn = std::function<double(const Point&)>;
  using MemberFn = std::function<bool(const Point&)>;

  ClosedSet() = default;  // empty set

  static ClosedSet empty();
  static ClosedSet box_union(std::vector<Box> boxes);
  static ClosedSet interval(double lo, double hi);
  static ClosedSet interval_union(std::vector<Interval> intervals);
  static ClosedSet finite_points(std::vector<Point> points);
  static ClosedSet oracle(DistFn dist, MemberFn member, double bracket_width = 0.0,
                          std::optional<Box> bounding = std::nullopt);

  bool is_empty() const;
  bool contains(const Point& p) const;
  Bracket distance_bracket(const Point& p) const;

  /// Points suitable as image-set samples: the stored points, or box corners
  /// and centers. Empty for pure oracle sets without bounding data.
  std::vector<Point> representatives() const;

  const std::vector<Box>* boxes() const;      // nullptr unless box-union rep
  const std::vector<Point>* points() const;   // nullptr unless point-set rep

 private:
  enum class Rep { Boxes, Points, Oracle };
  Rep rep_ = Rep::Boxes;
  std::vector<Box> boxes_;
  std::vector<Point> points_;
  DistFn dist_;
  MemberFn member_;
  double bracket_width_ = 0.0;
  std::optional<Box> bounding_;
};

/// Infimum distance from p to the set; +inf for the empty set. For oracle
/// representations this is the certified upper end of the bracket.
double set_distance(const ClosedSet& set, const Point& p);

}  // namespace usco
