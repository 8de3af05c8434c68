#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "usco/geometry.hpp"
#include "usco/point.hpp"

namespace usco {

/// One element of the partition: an F-sigma piece represented through its
/// increasing closed stages, a full-membership test, and the constant value
/// the function takes on it.
struct Piece {
  std::string label;
  Point value;
  std::function<ClosedSet(int)> stage;      // F^n, 1-based, increasing in n
  std::function<bool(const Point&)> member; // membership in the full piece
};

/// A function constant on each element of a countable partition whose pieces
/// are increasing unions of closed stages, with the stage families discrete.
/// Pieces are built lazily through an index -> Piece generator; the locator
/// returns the indices of all pieces whose stage-n set meets a bounded box.
class SimpleFunction {
 public:
  using PieceFn = std::function<Piece(std::int64_t)>;
  using LocatorFn = std::function<std::vector<std::int64_t>(const Box&, int)>;

  struct Config {
    PieceFn piece;
    LocatorFn locate;
    std::optional<std::int64_t> piece_count;  // set when the partition is finite
    std::optional<Point> anchor;              // defaults to piece(0).value
    int eval_stage_cap = 1 << 20;             // stage search bound for evaluation
    int domain_dim = 1;                       // ambient dimension of the partition
    std::string name;
  };

  explicit SimpleFunction(Config config);

  const Piece& piece(std::int64_t gamma) const;  // memoized
  std::vector<std::int64_t> active_indices(const Box& region, int n) const;
  std::optional<std::int64_t> piece_count() const;
  const Point& anchor() const;
  const std::string& name() const;
  int eval_stage_cap() const;
  int domain_dim() const;

  /// Value of the function: y_gamma for the unique piece containing x.
  /// Throws std::domain_error when no piece claims x (partition violation)
  /// and std::logic_error when two do.
  Point operator()(const Point& x) const;

  /// The piece index containing x, resolved the same way as operator().
  std::int64_t locate_point(const Point& x) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Pieces whose stage-n set meets the bounded region. Throws
/// std::invalid_argument for unbounded regions.
std::vector<Piece> active_pieces(const SimpleFunction& f, const Box& region, int n);

}  // namespace usco
