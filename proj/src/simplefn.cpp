#include "usco/simplefn.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace usco {

struct SimpleFunction::State {
  Config config;
  Point anchor;
  mutable std::mutex mutex;
  mutable std::map<std::int64_t, Piece> cache;
};

SimpleFunction::SimpleFunction(Config config) : state_(std::make_shared<State>()) {
  if (!config.piece) throw std::invalid_argument("SimpleFunction: piece generator required");
  if (!config.locate) throw std::invalid_argument("SimpleFunction: locator required");
  state_->config = std::move(config);
  state_->anchor = state_->config.anchor ? *state_->config.anchor
                                         : state_->config.piece(0).value;
}

const Piece& SimpleFunction::piece(std::int64_t gamma) const {
  std::lock_guard<std::mutex> lock(state_->mutex);
  auto it = state_->cache.find(gamma);
  if (it == state_->cache.end())
    it = state_->cache.emplace(gamma, state_->config.piece(gamma)).first;
  return it->second;
}

std::vector<std::int64_t> SimpleFunction::active_indices(const Box& region, int n) const {
  return state_->config.locate(region, n);
}

std::optional<std::int64_t> SimpleFunction::piece_count() const {
  return state_->config.piece_count;
}

const Point& SimpleFunction::anchor() const { return state_->anchor; }

const std::string& SimpleFunction::name() const { return state_->config.name; }

int SimpleFunction::eval_stage_cap() const { return state_->config.eval_stage_cap; }

int SimpleFunction::domain_dim() const { return state_->config.domain_dim; }

std::int64_t SimpleFunction::locate_point(const Point& x) const {
  // Trailing zero coordinates are absent from the sparse representation, so
  // the query dimension comes from the partition, not from the point.
  const int dim = std::max(state_->config.domain_dim,
                           static_cast<int>(std::max<std::int64_t>(x.max_index(), 0)) + 1);
  const Box at_x = Box::around(x, 0.0, dim);

  // Stage sweep: the point lies in some stage set from a finite index on, and
  // the stage-n locator over the degenerate box returns exactly the pieces
  // whose F^n contains x.
  std::optional<std::int64_t> found;
  for (int n = 1; n <= state_->config.eval_stage_cap; n = n < 64 ? n + 1 : n * 2) {
    std::vector<std::int64_t> ids = active_indices(at_x, n);
    for (std::int64_t id : ids) {
      if (!piece(id).stage(n).contains(x)) continue;
      if (found && *found != id) {
        std::ostringstream os;
        os << "partition violation: point claimed by pieces " << *found << " and " << id;
        throw std::logic_error(os.str());
      }
      found = id;
    }
    if (found) return *found;
  }

  // Full-membership fallback for points whose stage threshold exceeds the
  // sweep: ask nearby pieces at the cap stage.
  const int cap = state_->config.eval_stage_cap;
  for (double r : {0.0, 1e-12, 1e-9}) {
    std::vector<std::int64_t> ids = active_indices(Box::around(x, r, dim), cap);
    for (std::int64_t id : ids) {
      if (piece(id).member && piece(id).member(x)) return id;
    }
  }
  throw std::domain_error("SimpleFunction: point belongs to no piece");
}

Point SimpleFunction::operator()(const Point& x) const {
  return piece(locate_point(x)).value;
}

std::vector<Piece> active_pieces(const SimpleFunction& f, const Box& region, int n) {
  if (!region.bounded())
    throw std::invalid_argument("active_pieces: region must be bounded");
  std::vector<Piece> out;
  for (std::int64_t id : f.active_indices(region, n)) out.push_back(f.piece(id));
  return out;
}

}  // namespace usco
