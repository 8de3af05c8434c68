#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "usco/point.hpp"

namespace usco {

enum class SpaceKind { Euclidean, FinSupportSeq, Subspace };

/// Decides whether the limit of a Cauchy tail of sample values belongs to a
/// subspace. Finite data cannot settle this in general, so the answer is
/// three-valued and carries the margin it was decided at.
class LimitOracle {
 public:
  enum class Result { Inside, Outside, Unknown };
  struct Finding {
    Result result = Result::Unknown;
    double margin = 0.0;
    std::string detail;
  };

  virtual ~LimitOracle() = default;

  /// `tail` is the late segment of a converging value subsequence, ordered by
  /// sample index; `limit_gap` is a certified upper bound on the distance
  /// from the last tail element to the limit.
  virtual Finding classify(std::span<const Point> tail, double limit_gap) const = 0;
  virtual std::string describe() const = 0;
};

/// Oracle for the subspace of finitely supported sequences. Reports Outside
/// when the limit provably has support mass beyond every index up to
/// `support_horizon`, Inside when the tail has stabilized exactly on a
/// representable point.
class FiniteSupportOracle final : public LimitOracle {
 public:
  explicit FiniteSupportOracle(std::int64_t support_horizon = 25)
      : horizon_(support_horizon) {}

  Finding classify(std::span<const Point> tail, double limit_gap) const override;
  std::string describe() const override;
  std::int64_t support_horizon() const { return horizon_; }

 private:
  std::int64_t horizon_;
};

/// One of the two concrete metric-space families, or a declared subspace of
/// one of them. The metric is l2 in all cases; families differ in which
/// points they contain.
class Space {
 public:
  static Space euclidean(int dimension);
  static Space fin_support_seq();
  static Space subspace(Space parent, std::function<bool(const Point&)> member,
                        std::shared_ptr<const LimitOracle> oracle, std::string label);

  SpaceKind kind() const { return kind_; }
  int dimension() const { return dimension_; }  // Euclidean only
  const std::string& label() const { return label_; }

  bool contains(const Point& p) const;
  const LimitOracle* limit_oracle() const;

  /// Kind of the underlying full space (resolves Subspace to its base).
  SpaceKind base_kind() const;

  /// Exact metric; throws std::invalid_argument when either point does not
  /// belong to the space (dimension or membership mismatch).
  double distance(const Point& p, const Point& q) const;

 private:
  Space() = default;

  SpaceKind kind_ = SpaceKind::Euclidean;
  int dimension_ = 0;
  std::string label_;
  std::shared_ptr<const Space> parent_;
  std::function<bool(const Point&)> member_;
  std::shared_ptr<const LimitOracle> oracle_;
};

}  // namespace usco
