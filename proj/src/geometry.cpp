#include "usco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usco {

double Interval::clamp_gap(double x) const {
  if (empty()) return kInf;
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

Box Box::around(const Point& center, double radius, int dim) {
  std::vector<Interval> sides(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    double c = center.coord(i);
    sides[static_cast<std::size_t>(i)] = Interval{c - radius, c + radius};
  }
  return Box(std::move(sides));
}

bool Box::empty() const {
  if (sides_.empty()) return true;
  for (const Interval& iv : sides_)
    if (iv.empty()) return true;
  return false;
}

bool Box::contains(const Point& p) const {
  if (empty()) return false;
  if (p.max_index() >= dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!sides_[static_cast<std::size_t>(i)].contains(p.coord(i))) return false;
  return true;
}

bool Box::intersects(const Box& other) const {
  if (empty() || other.empty() || dim() != other.dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const Interval& a = sides_[static_cast<std::size_t>(i)];
    const Interval& b = other.sides_[static_cast<std::size_t>(i)];
    if (a.lo > b.hi || b.lo > a.hi) return false;
  }
  return true;
}

bool Box::bounded() const {
  if (empty()) return true;
  for (const Interval& iv : sides_)
    if (std::isinf(iv.lo) || std::isinf(iv.hi)) return false;
  return true;
}

double Box::distance_to(const Point& p) const {
  if (empty()) return kInf;
  double sum = 0.0;
  double only = 0.0;
  int terms = 0;
  for (int i = 0; i < dim(); ++i) {
    double g = sides_[static_cast<std::size_t>(i)].clamp_gap(p.coord(i));
    if (g != 0.0) {
      sum += g * g;
      only = g;
      ++terms;
    }
  }
  // Coordinates of p beyond the box dimension count in full.
  for (const auto& e : p.entries()) {
    if (e.first >= dim()) {
      sum += e.second * e.second;
      only = std::abs(e.second);
      ++terms;
    }
  }
  if (terms == 0) return 0.0;
  if (terms == 1) return std::abs(only);
  return std::sqrt(sum);
}

Point Box::center() const {
  std::vector<double> c(static_cast<std::size_t>(dim()), 0.0);
  for (int i = 0; i < dim(); ++i) {
    const Interval& iv = sides_[static_cast<std::size_t>(i)];
    c[static_cast<std::size_t>(i)] = 0.5 * (iv.lo + iv.hi);
  }
  return Point::euclidean(c);
}

std::vector<Point> Box::corners() const {
  std::vector<Point> out;
  if (empty() || !bounded() || dim() > 16) return out;
  const int d = dim();
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const Interval& iv = sides_[static_cast<std::size_t>(i)];
      c[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? iv.hi : iv.lo;
    }
    out.push_back(Point::euclidean(c));
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
    return a.entries() < b.entries();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClosedSet ClosedSet::empty() { return ClosedSet(); }

ClosedSet ClosedSet::box_union(std::vector<Box> boxes) {
  ClosedSet s;
  s.rep_ = Rep::Boxes;
  for (Box& b : boxes)
    if (!b.empty()) s.boxes_.push_back(std::move(b));
  return s;
}

ClosedSet ClosedSet::interval(double lo, double hi) {
  return box_union({Box::segment(lo, hi)});
}

ClosedSet ClosedSet::interval_union(std::vector<Interval> intervals) {
  std::vector<Box> boxes;
  boxes.reserve(intervals.size());
  for (const Interval& iv : intervals)
    if (!iv.empty()) boxes.push_back(Box({iv}));
  return box_union(std::move(boxes));
}

ClosedSet ClosedSet::finite_points(std::vector<Point> points) {
  ClosedSet s;
  s.rep_ = Rep::Points;
  s.points_ = std::move(points);
  return s;
}

ClosedSet ClosedSet::oracle(DistFn dist, MemberFn member, double bracket_width,
                            std::optional<Box> bounding) {
  if (!dist || !member)
    throw std::invalid_argument("ClosedSet::oracle: distance and membership required");
  ClosedSet s;
  s.rep_ = Rep::Oracle;
  s.dist_ = std::move(dist);
  s.member_ = std::move(member);
  s.bracket_width_ = bracket_width;
  s.bounding_ = std::move(bounding);
  return s;
}

bool ClosedSet::is_empty() const {
  switch (rep_) {
    case Rep::Boxes:
      return boxes_.empty();
    case Rep::Points:
      return points_.empty();
    case Rep::Oracle:
      return false;  // closedness and nonemptiness asserted by the caller
  }
  return true;
}

bool ClosedSet::contains(const Point& p) const {
  switch (rep_) {
    case Rep::Boxes:
      for (const Box& b : boxes_)
        if (b.contains(p)) return true;
      return false;
    case Rep::Points:
      for (const Point& q : points_)
        if (q == p) return true;
      return false;
    case Rep::Oracle:
      return member_(p);
  }
  return false;
}

Bracket ClosedSet::distance_bracket(const Point& p) const {
  switch (rep_) {
    case Rep::Boxes: {
      double best = kInf;
      for (const Box& b : boxes_) best = std::min(best, b.distance_to(p));
      return Bracket{best, best};
    }
    case Rep::Points: {
      double best = kInf;
      for (const Point& q : points_) best = std::min(best, distance(p, q));
      return Bracket{best, best};
    }
    case Rep::Oracle: {
      double d = dist_(p);
      return Bracket{std::max(0.0, d - bracket_width_), d + bracket_width_};
    }
  }
  return Bracket{kInf, kInf};
}

std::vector<Point> ClosedSet::representatives() const {
  std::vector<Point> out;
  switch (rep_) {
    case Rep::Points:
      return points_;
    case Rep::Boxes:
      for (const Box& b : boxes_) {
        auto cs = b.corners();
        out.insert(out.end(), cs.begin(), cs.end());
        if (b.bounded() && !b.empty()) out.push_back(b.center());
      }
      return out;
    case Rep::Oracle:
      if (bounding_ && bounding_->bounded()) {
        Point c = bounding_->center();
        if (member_(c)) out.push_back(c);
      }
      return out;
  }
  return out;
}

const std::vector<Box>* ClosedSet::boxes() const {
  return rep_ == Rep::Boxes ? &boxes_ : nullptr;
}

const std::vector<Point>* ClosedSet::points() const {
  return rep_ == Rep::Points ? &points_ : nullptr;
}

double set_distance(const ClosedSet& set, const Point& p) {
  if (set.is_empty()) return kInf;
  return set.distance_bracket(p).hi;
}

}  // namespace usco
