#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace usco {

/// A point with finitely many nonzero coordinates, stored as sorted
/// (index, value) entries with no explicit zeros. Euclidean vectors in R^k
/// use indices 0..k-1; sequence-space points may use any nonnegative index.
class Point {
 public:
  using Entry = std::pair<std::int64_t, double>;

  Point() = default;  // origin

  static Point scalar(double x);                       // point of R^1
  static Point euclidean(const std::vector<double>& coords);
  static Point basis(std::int64_t index, double scale = 1.0);
  static Point sparse(std::vector<Entry> entries);     // sorts, drops zeros

  const std::vector<Entry>& entries() const { return entries_; }
  double coord(std::int64_t i) const;                  // 0 when absent
  std::int64_t max_index() const;                      // -1 for the origin
  std::size_t support_size() const { return entries_.size(); }
  bool is_origin() const { return entries_.empty(); }

  double norm() const;
  double tail_norm(std::int64_t beyond) const;  // norm of entries with index > beyond

  bool operator==(const Point& other) const { return entries_ == other.entries_; }
  bool operator!=(const Point& other) const { return !(*this == other); }

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double c, const Point& p);

 private:
  std::vector<Entry> entries_;
};

/// Exact l2 distance of two finitely supported vectors. When the points
/// differ in a single coordinate the result is the plain absolute
/// difference, with no square-root round-trip.
double distance(const Point& p, const Point& q);

/// anchor + c * (target - anchor), exact at c == 1 and c == 0.
Point interpolate(const Point& anchor, const Point& target, double c);

}  // namespace usco
