#include "usco/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace usco {

LimitOracle::Finding FiniteSupportOracle::classify(std::span<const Point> tail,
                                                   double limit_gap) const {
  Finding f;
  if (tail.empty()) return f;
  const Point& last = tail.back();

  // Exact stabilization: the limit is the stored point itself, which is
  // finitely supported by representation.
  if (limit_gap == 0.0) {
    f.result = Result::Inside;
    f.detail = "tail stabilized on a representable point";
    return f;
  }

  // The limit z satisfies ||tail_{>K}(z)|| >= ||tail_{>K}(last)|| - limit_gap.
  // If that lower bound stays positive for every K up to the horizon, the
  // limit's support provably extends past the horizon.
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k <= horizon_; ++k) {
    double lower = last.tail_norm(k) - limit_gap;
    min_margin = std::min(min_margin, lower);
    if (lower <= 0.0) {
      f.result = Result::Unknown;
      std::ostringstream os;
      os << "tail mass not certified beyond index " << k;
      f.detail = os.str();
      f.margin = lower;
      return f;
    }
  }
  f.result = Result::Outside;
  f.margin = min_margin;
  std::ostringstream os;
  os << "limit support certified beyond index " << horizon_
     << " (min tail norm " << min_margin << ")";
  f.detail = os.str();
  return f;
}

std::string FiniteSupportOracle::describe() const {
  std::ostringstream os;
  os << "finite-support limit oracle, support horizon " << horizon_;
  return os.str();
}

Space Space::euclidean(int dimension) {
  if (dimension < 1) throw std::invalid_argument("Space::euclidean: dimension must be >= 1");
  Space s;
  s.kind_ = SpaceKind::Euclidean;
  s.dimension_ = dimension;
  std::ostringstream os;
  os << "R^" << dimension;
  s.label_ = os.str();
  return s;
}

Space Space::fin_support_seq() {
  Space s;
  s.kind_ = SpaceKind::FinSupportSeq;
  s.label_ = "finitely supported sequences (l2)";
  return s;
}

Space Space::subspace(Space parent, std::function<bool(const Point&)> member,
                      std::shared_ptr<const LimitOracle> oracle, std::string label) {
  if (!member) throw std::invalid_argument("Space::subspace: membership predicate required");
  Space s;
  s.kind_ = SpaceKind::Subspace;
  s.parent_ = std::make_shared<Space>(std::move(parent));
  s.member_ = std::move(member);
  s.oracle_ = std::move(oracle);
  s.label_ = std::move(label);
  return s;
}

bool Space::contains(const Point& p) const {
  switch (kind_) {
    case SpaceKind::Euclidean:
      return p.max_index() < dimension_;
    case SpaceKind::FinSupportSeq:
      return true;  // every representable point has finite support
    case SpaceKind::Subspace:
      return parent_->contains(p) && member_(p);
  }
  return false;
}

const LimitOracle* Space::limit_oracle() const {
  if (oracle_) return oracle_.get();
  if (parent_) return parent_->limit_oracle();
  return nullptr;
}

SpaceKind Space::base_kind() const {
  return kind_ == SpaceKind::Subspace ? parent_->base_kind() : kind_;
}

double Space::distance(const Point& p, const Point& q) const {
  if (!contains(p) || !contains(q))
    throw std::invalid_argument("Space::distance: point outside space " + label_);
  return usco::distance(p, q);
}

}  // namespace usco
