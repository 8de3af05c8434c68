#include "usco/point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usco {

Point Point::scalar(double x) { return basis(0, x); }

Point Point::euclidean(const std::vector<double>& coords) {
  std::vector<Entry> entries;
  entries.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0.0) entries.emplace_back(static_cast<std::int64_t>(i), coords[i]);
  }
  Point p;
  p.entries_ = std::move(entries);
  return p;
}

Point Point::basis(std::int64_t index, double scale) {
  Point p;
  if (scale != 0.0) p.entries_.emplace_back(index, scale);
  return p;
}

Point Point::sparse(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.second == 0.0) continue;
    if (!out.empty() && out.back().first == e.first)
      throw std::invalid_argument("Point::sparse: duplicate index");
    out.push_back(e);
  }
  Point p;
  p.entries_ = std::move(out);
  return p;
}

double Point::coord(std::int64_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::int64_t idx) { return e.first < idx; });
  if (it != entries_.end() && it->first == i) return it->second;
  return 0.0;
}

std::int64_t Point::max_index() const {
  return entries_.empty() ? -1 : entries_.back().first;
}

double Point::norm() const {
  if (entries_.empty()) return 0.0;
  if (entries_.size() == 1) return std::abs(entries_[0].second);
  double s = 0.0;
  for (const Entry& e : entries_) s += e.second * e.second;
  return std::sqrt(s);
}

double Point::tail_norm(std::int64_t beyond) const {
  double s = 0.0;
  int terms = 0;
  double last = 0.0;
  for (const Entry& e : entries_) {
    if (e.first > beyond) {
      s += e.second * e.second;
      last = e.second;
      ++terms;
    }
  }
  if (terms == 0) return 0.0;
  if (terms == 1) return std::abs(last);
  return std::sqrt(s);
}

namespace {

// Merge two sorted entry lists applying op(a_i, b_i) coordinatewise and
// dropping exact zeros.
template <typename Op>
std::vector<Point::Entry> merge(const std::vector<Point::Entry>& a,
                                const std::vector<Point::Entry>& b, Op op) {
  std::vector<Point::Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::int64_t ia = i < a.size() ? a[i].first : INT64_MAX;
    std::int64_t ib = j < b.size() ? b[j].first : INT64_MAX;
    std::int64_t idx = std::min(ia, ib);
    double va = ia == idx ? a[i++].second : 0.0;
    double vb = ib == idx ? b[j++].second : 0.0;
    double v = op(va, vb);
    if (v != 0.0) out.emplace_back(idx, v);
  }
  return out;
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  Point p;
  p.entries_ = merge(a.entries_, b.entries_, [](double x, double y) { return x + y; });
  return p;
}

Point operator-(const Point& a, const Point& b) {
  Point p;
  p.entries_ = merge(a.entries_, b.entries_, [](double x, double y) { return x - y; });
  return p;
}

Point operator*(double c, const Point& p) {
  Point out;
  if (c == 0.0) return out;
  out = p;
  for (auto& e : out.entries_) e.second *= c;
  return out;
}

double distance(const Point& p, const Point& q) {
  const auto& a = p.entries();
  const auto& b = q.entries();
  double sum = 0.0;
  double only = 0.0;
  int terms = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::int64_t ia = i < a.size() ? a[i].first : INT64_MAX;
    std::int64_t ib = j < b.size() ? b[j].first : INT64_MAX;
    std::int64_t idx = std::min(ia, ib);
    double va = ia == idx ? a[i++].second : 0.0;
    double vb = ib == idx ? b[j++].second : 0.0;
    double d = va - vb;
    if (d != 0.0) {
      sum += d * d;
      only = d;
      ++terms;
    }
  }
  if (terms == 0) return 0.0;
  if (terms == 1) return std::abs(only);
  return std::sqrt(sum);
}

Point interpolate(const Point& anchor, const Point& target, double c) {
  if (c == 1.0) return target;
  if (c == 0.0) return anchor;
  return anchor + c * (target - anchor);
}

}  // namespace usco
