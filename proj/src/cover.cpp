#include "usco/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "usco/setvalued.hpp"

namespace usco {

namespace {

struct End {
  double v = 0.0;
  bool closed = false;
};

bool interval_nonempty(const End& lo, const End& hi) {
  if (lo.v < hi.v) return true;
  return lo.v == hi.v && lo.closed && hi.closed;
}

End max_lo(const End& a, const End& b) {
  if (a.v > b.v) return a;
  if (b.v > a.v) return b;
  return End{a.v, a.closed && b.closed};
}

End min_hi(const End& a, const End& b) {
  if (a.v < b.v) return a;
  if (b.v < a.v) return b;
  return End{a.v, a.closed && b.closed};
}

End get_lo(const HalfOpenBox& b, int i) { return End{b.lo[static_cast<std::size_t>(i)], b.lo_closed[static_cast<std::size_t>(i)]}; }
End get_hi(const HalfOpenBox& b, int i) { return End{b.hi[static_cast<std::size_t>(i)], b.hi_closed[static_cast<std::size_t>(i)]}; }

void set_lo(HalfOpenBox& b, int i, const End& e) {
  b.lo[static_cast<std::size_t>(i)] = e.v;
  b.lo_closed[static_cast<std::size_t>(i)] = e.closed;
}
void set_hi(HalfOpenBox& b, int i, const End& e) {
  b.hi[static_cast<std::size_t>(i)] = e.v;
  b.hi_closed[static_cast<std::size_t>(i)] = e.closed;
}

bool boxes_overlap(const HalfOpenBox& a, const HalfOpenBox& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (!interval_nonempty(max_lo(get_lo(a, i), get_lo(b, i)), min_hi(get_hi(a, i), get_hi(b, i))))
      return false;
  }
  return true;
}

}  // namespace

bool HalfOpenBox::empty() const {
  if (lo.empty()) return true;
  for (int i = 0; i < dim(); ++i)
    if (!interval_nonempty(End{lo[static_cast<std::size_t>(i)], lo_closed[static_cast<std::size_t>(i)]},
                           End{hi[static_cast<std::size_t>(i)], hi_closed[static_cast<std::size_t>(i)]}))
      return true;
  return false;
}

bool HalfOpenBox::contains(const Point& p) const {
  if (empty()) return false;
  if (p.max_index() >= dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    double x = p.coord(i);
    double a = lo[static_cast<std::size_t>(i)], b = hi[static_cast<std::size_t>(i)];
    if (x < a || x > b) return false;
    if (x == a && !lo_closed[static_cast<std::size_t>(i)]) return false;
    if (x == b && !hi_closed[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

Box HalfOpenBox::inner_box(double margin) const {
  std::vector<Interval> sides(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) {
    double a = lo[static_cast<std::size_t>(i)] + (lo_closed[static_cast<std::size_t>(i)] ? 0.0 : margin);
    double b = hi[static_cast<std::size_t>(i)] - (hi_closed[static_cast<std::size_t>(i)] ? 0.0 : margin);
    sides[static_cast<std::size_t>(i)] = Interval{a, b};
  }
  return Box(std::move(sides));
}

std::vector<HalfOpenBox> subtract(const HalfOpenBox& a, const HalfOpenBox& b) {
  std::vector<HalfOpenBox> out;
  if (a.empty()) return out;
  if (b.empty() || !boxes_overlap(a, b)) {
    out.push_back(a);
    return out;
  }
  HalfOpenBox rem = a;
  for (int i = 0; i < a.dim(); ++i) {
    End blo = get_lo(b, i);
    End bhi = get_hi(b, i);

    // Part of rem strictly before b in dimension i.
    HalfOpenBox left = rem;
    set_hi(left, i, End{blo.v, !blo.closed});
    if (!left.empty()) out.push_back(left);

    // Part of rem strictly after b in dimension i.
    HalfOpenBox right = rem;
    set_lo(right, i, End{bhi.v, !bhi.closed});
    if (!right.empty()) out.push_back(right);

    set_lo(rem, i, max_lo(get_lo(rem, i), blo));
    set_hi(rem, i, min_hi(get_hi(rem, i), bhi));
    if (rem.empty()) break;
  }
  return out;  // rem is inside b and gets dropped
}

ContinuityModulus ContinuityModulus::lipschitz(double constant) {
  if (!(constant > 0.0))
    throw std::invalid_argument("ContinuityModulus::lipschitz: constant must be positive");
  return ContinuityModulus{[constant](double t) { return constant * t; }};
}

double ContinuityModulus::diameter_for(double eps, double initial) const {
  if (!(eps > 0.0)) throw std::invalid_argument("diameter_for: eps must be positive");
  double t = std::max(initial, 1e-12);
  for (int iter = 0; iter < 4000; ++iter) {
    if (osc_bound(t) < 0.95 * eps) return t;
    t *= 0.5;
    if (t < 1e-300) break;
  }
  throw std::invalid_argument(
      "ContinuityModulus: modulus cannot guarantee the diameter bound at any cover size");
}

std::vector<Point> uniform_grid(const Box& box, int points_per_dim) {
  if (box.empty() || !box.bounded())
    throw std::invalid_argument("uniform_grid: bounded nonempty box required");
  if (points_per_dim < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  const int d = box.dim();
  std::vector<Point> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const Interval& iv = box.sides()[static_cast<std::size_t>(i)];
      c[static_cast<std::size_t>(i)] =
          iv.lo + (iv.hi - iv.lo) * idx[static_cast<std::size_t>(i)] / (points_per_dim - 1);
    }
    out.push_back(Point::euclidean(c));
    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == points_per_dim) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == d) break;
  }
  return out;
}

namespace {

struct CellGrid {
  int d = 1;
  std::vector<double> lo;
  std::vector<std::int64_t> counts;
  double h = 0.0;
  double delta = 0.0;
  std::int64_t total = 0;

  std::vector<std::int64_t> unpack(std::int64_t alpha) const {
    std::vector<std::int64_t> j(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      j[static_cast<std::size_t>(i)] = alpha % counts[static_cast<std::size_t>(i)];
      alpha /= counts[static_cast<std::size_t>(i)];
    }
    return j;
  }

  std::int64_t pack(const std::vector<std::int64_t>& j) const {
    std::int64_t alpha = 0;
    for (int i = d - 1; i >= 0; --i)
      alpha = alpha * counts[static_cast<std::size_t>(i)] + j[static_cast<std::size_t>(i)];
    return alpha;
  }

  HalfOpenBox open_cover(std::int64_t alpha) const {
    auto j = unpack(alpha);
    HalfOpenBox v;
    v.lo.resize(static_cast<std::size_t>(d));
    v.hi.resize(static_cast<std::size_t>(d));
    v.lo_closed.assign(static_cast<std::size_t>(d), false);
    v.hi_closed.assign(static_cast<std::size_t>(d), false);
    for (int i = 0; i < d; ++i) {
      double a = lo[static_cast<std::size_t>(i)] + h * static_cast<double>(j[static_cast<std::size_t>(i)]);
      v.lo[static_cast<std::size_t>(i)] = a - delta;
      v.hi[static_cast<std::size_t>(i)] = a + h + delta;
    }
    return v;
  }

  Point center(std::int64_t alpha) const {
    auto j = unpack(alpha);
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      c[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)] +
                                       h * (static_cast<double>(j[static_cast<std::size_t>(i)]) + 0.5);
    return Point::euclidean(c);
  }

  // Cells whose open cover can intersect the cell of alpha, in cover order.
  std::vector<std::int64_t> earlier_neighbors(std::int64_t alpha) const {
    auto j = unpack(alpha);
    std::vector<std::int64_t> result;
    std::vector<std::int64_t> probe = j;
    std::function<void(int)> walk = [&](int i) {
      if (i == d) {
        std::int64_t beta = pack(probe);
        if (beta < alpha) result.push_back(beta);
        return;
      }
      for (std::int64_t dj = -1; dj <= 1; ++dj) {
        std::int64_t v = j[static_cast<std::size_t>(i)] + dj;
        if (v < 0 || v >= counts[static_cast<std::size_t>(i)]) continue;
        probe[static_cast<std::size_t>(i)] = v;
        walk(i + 1);
      }
      probe[static_cast<std::size_t>(i)] = j[static_cast<std::size_t>(i)];
    };
    walk(0);
    std::sort(result.begin(), result.end());
    return result;
  }
};

struct CellCache {
  std::mutex mutex;
  std::map<std::int64_t, std::vector<HalfOpenBox>> cells;
};

std::vector<HalfOpenBox> cell_partition(const CellGrid& grid,
                                        const std::shared_ptr<CellCache>& cache,
                                        std::int64_t alpha) {
  {
    std::lock_guard<std::mutex> lock(cache->mutex);
    auto it = cache->cells.find(alpha);
    if (it != cache->cells.end()) return it->second;
  }
  std::vector<HalfOpenBox> w{grid.open_cover(alpha)};
  for (std::int64_t beta : grid.earlier_neighbors(alpha)) {
    HalfOpenBox vb = grid.open_cover(beta);
    std::vector<HalfOpenBox> next;
    for (const HalfOpenBox& piece : w) {
      auto parts = subtract(piece, vb);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    w = std::move(next);
    if (w.empty()) break;
  }
  std::lock_guard<std::mutex> lock(cache->mutex);
  auto [it, inserted] = cache->cells.emplace(alpha, std::move(w));
  (void)inserted;
  return it->second;
}

double stage_margin(double delta, int n) {
  return delta * std::max(std::ldexp(1.0, -n), 0x1.0p-400);
}

}  // namespace

ContinuousToSimple simple_from_continuous(const PointFn& g, const ContinuityModulus& modulus,
                                          double epsilon, const Box& region) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("simple_from_continuous: epsilon must be positive");
  if (region.empty() || !region.bounded())
    throw std::invalid_argument("simple_from_continuous: bounded region required");
  const int d = region.dim();

  double span = 0.0;
  for (const Interval& iv : region.sides()) span = std::max(span, iv.hi - iv.lo);
  double diam = modulus.diameter_for(epsilon, std::max(1.0, span) * 2.0);
  double h = diam / (1.5 * std::sqrt(static_cast<double>(d)));
  h = std::min(h, std::max(span, 1e-9));

  CellGrid grid;
  grid.d = d;
  grid.h = h;
  grid.delta = h / 4.0;
  grid.total = 1;
  for (const Interval& iv : region.sides()) {
    grid.lo.push_back(iv.lo);
    std::int64_t count = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil((iv.hi - iv.lo) / h - 1e-12)));
    grid.counts.push_back(count);
    if (grid.total > (std::int64_t{1} << 40) / std::max<std::int64_t>(count, 1))
      throw std::invalid_argument("simple_from_continuous: cover size exceeds resource cap");
    grid.total *= count;
  }

  auto cache = std::make_shared<CellCache>();
  auto grid_shared = std::make_shared<CellGrid>(grid);
  auto g_shared = std::make_shared<PointFn>(g);

  SimpleFunction::Config config;
  config.name = "cover-refinement";
  config.domain_dim = d;
  config.piece_count = grid.total;
  config.piece = [grid_shared, cache, g_shared](std::int64_t alpha) {
    if (alpha < 0 || alpha >= grid_shared->total)
      throw std::out_of_range("cover piece index");
    auto w = cell_partition(*grid_shared, cache, alpha);
    Piece piece;
    piece.label = "cell" + std::to_string(alpha);
    piece.value = (*g_shared)(grid_shared->center(alpha));
    double delta = grid_shared->delta;
    auto w_shared = std::make_shared<std::vector<HalfOpenBox>>(std::move(w));
    piece.stage = [w_shared, delta](int n) {
      std::vector<Box> boxes;
      for (const HalfOpenBox& hb : *w_shared) boxes.push_back(hb.inner_box(stage_margin(delta, n)));
      return ClosedSet::box_union(std::move(boxes));
    };
    piece.member = [w_shared](const Point& x) {
      for (const HalfOpenBox& hb : *w_shared)
        if (hb.contains(x)) return true;
      return false;
    };
    return piece;
  };
  config.locate = [grid_shared, cache](const Box& query, int n) {
    std::vector<std::int64_t> out;
    const CellGrid& gr = *grid_shared;
    if (query.empty() || query.dim() != gr.d) return out;
    std::vector<std::int64_t> jlo(static_cast<std::size_t>(gr.d)), jhi(static_cast<std::size_t>(gr.d));
    for (int i = 0; i < gr.d; ++i) {
      const Interval& iv = query.sides()[static_cast<std::size_t>(i)];
      const double count = static_cast<double>(gr.counts[static_cast<std::size_t>(i)]);
      // Clamp in double before casting: query boxes from expanding searches
      // can be enormous.
      double a = std::floor((iv.lo - gr.lo[static_cast<std::size_t>(i)] - gr.delta) / gr.h) - 1.0;
      double b = std::floor((iv.hi - gr.lo[static_cast<std::size_t>(i)] + gr.delta) / gr.h) + 1.0;
      if (b < 0.0 || a > count - 1.0) return out;
      jlo[static_cast<std::size_t>(i)] =
          a < 0.0 ? 0 : static_cast<std::int64_t>(a);
      jhi[static_cast<std::size_t>(i)] =
          b > count - 1.0 ? gr.counts[static_cast<std::size_t>(i)] - 1
                          : static_cast<std::int64_t>(b);
    }
    std::vector<std::int64_t> j = jlo;
    while (true) {
      std::int64_t alpha = gr.pack(j);
      for (const HalfOpenBox& hb : cell_partition(gr, cache, alpha)) {
        Box stage_box = hb.inner_box(stage_margin(gr.delta, n));
        if (!stage_box.empty() && stage_box.intersects(query)) {
          out.push_back(alpha);
          break;
        }
      }
      int i = 0;
      while (i < gr.d) {
        if (++j[static_cast<std::size_t>(i)] <= jhi[static_cast<std::size_t>(i)]) break;
        j[static_cast<std::size_t>(i)] = jlo[static_cast<std::size_t>(i)];
        ++i;
      }
      if (i == gr.d) break;
    }
    return out;
  };

  SimpleFunction fn(std::move(config));

  // Verify the sampled error on a grid finer than the cells.
  int per_dim = 2;
  if (d == 1) {
    per_dim = static_cast<int>(std::min<std::int64_t>(10 * grid.counts[0] + 1, 20001));
  } else {
    per_dim = std::max(2, static_cast<int>(std::floor(std::pow(4.0e4, 1.0 / d))));
  }
  double err = 0.0;
  double bound = 0.0;
  for (const Point& x : uniform_grid(region, per_dim)) {
    Point hx = fn(x);
    err = std::max(err, distance(g(x), hx));
    bound = std::max(bound, hx.norm());
  }
  if (err >= epsilon) {
    std::ostringstream os;
    os << "simple_from_continuous: sampled error " << err << " not below " << epsilon;
    throw std::logic_error(os.str());
  }

  ContinuousToSimple result{std::move(fn), Verdict{}, CoverRefinement{}, err};
  result.cover.region = region;
  result.cover.cell_step = grid.h;
  result.cover.overlap = grid.delta;
  result.cover.cells_per_dim = grid.counts;
  result.cover.cell_count = grid.total;
  result.verdict.outcome = Outcome::Certified;
  result.verdict.certificate = BoundCertificate{bound, "locally-finite-construction"};
  result.verdict.resolution.grid_resolution = grid.h;
  result.verdict.resolution.notes.push_back(
      "values chosen from a locally finite disjointified cover with " +
      std::to_string(grid.total) + " cells");
  return result;
}

SimpleApproxResult simple_from_baire_one(const PointFn& f, const BaireOneScheme& scheme,
                                         const std::optional<Verdict>& f_verdict, double epsilon,
                                         const Box& verify_region, const Space& value_space) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("simple_from_baire_one: epsilon must be positive");

  std::optional<SimpleApproxResult> result;
  if (scheme.simple_approximant) {
    result = SimpleApproxResult{scheme.simple_approximant(epsilon), std::nullopt, 0.0};
  } else if (scheme.continuous) {
    ContinuousToSimple built =
        simple_from_continuous(scheme.continuous->eval, scheme.continuous->modulus, epsilon,
                               scheme.continuous->region);
    result = SimpleApproxResult{std::move(built.fn), std::move(built.verdict), 0.0};
  } else {
    throw std::invalid_argument(
        "simple_from_baire_one: no approximation scheme supplied for a discontinuous function");
  }

  if (!verify_region.empty() && verify_region.bounded()) {
    double err = 0.0;
    for (const Point& x : uniform_grid(verify_region, 201))
      err = std::max(err, distance(f(x), result->fn(x)));
    result->sampled_error = err;
    if (err >= epsilon) {
      std::ostringstream os;
      os << "simple_from_baire_one: sampled error " << err << " not below " << epsilon;
      throw std::logic_error(os.str());
    }
  }

  if (f_verdict && f_verdict->certified() && value_space.kind() == SpaceKind::Euclidean) {
    result->verdict = transfer_bounded_perturbation(*f_verdict, epsilon, value_space);
  }
  return std::move(*result);
}

}  // namespace usco
