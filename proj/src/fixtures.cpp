#include "usco/fixtures.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace usco {
namespace fixtures {

namespace {

constexpr std::int64_t kSupportCap = 1'000'000;

/// Index of the harmonic interval (1/(k+1), 1/k] containing x, or 0 for the
/// outer piece (-inf, 0] u (1, +inf).
std::int64_t harmonic_index(double x) {
  if (!(x > 0.0) || x > 1.0) return 0;
  // Guard the cast: 1/x must stay within the resource cap.
  if (x * static_cast<double>(kSupportCap) < 1.0)
    throw std::domain_error("fixture evaluation: interval index exceeds resource cap");
  std::int64_t k = static_cast<std::int64_t>(std::floor(1.0 / x));
  while (k > 1 && x > 1.0 / static_cast<double>(k)) --k;
  while (x <= 1.0 / static_cast<double>(k + 1)) ++k;
  if (k > kSupportCap)
    throw std::domain_error("fixture evaluation: interval index exceeds resource cap");
  return k;
}

double interval_margin(std::int64_t k, int n) {
  double len = 1.0 / static_cast<double>(k) - 1.0 / static_cast<double>(k + 1);
  double scale = std::max(std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(
                                         k - n - 1, -400))),
                          0x1.0p-400);
  return len * scale;
}

/// Stage set of harmonic piece k at stage n: empty below stage k, then a
/// closed interval creeping toward the open left endpoint.
ClosedSet harmonic_stage(std::int64_t k, int n) {
  if (n < k) return ClosedSet::empty();
  double lo = 1.0 / static_cast<double>(k + 1) + interval_margin(k, n);
  double hi = 1.0 / static_cast<double>(k);
  if (lo > hi) return ClosedSet::empty();
  return ClosedSet::interval(lo, hi);
}

ClosedSet outer_stage(int n) {
  return ClosedSet::box_union({Box::segment(-kInf, 0.0),
                               Box::segment(1.0 + 1.0 / static_cast<double>(n), kInf)});
}

bool outer_member(const Point& x) {
  double v = x.coord(0);
  return v <= 0.0 || v > 1.0;
}

/// Simple function constant on the harmonic intervals, with value(k) on the
/// k-th interval and the origin on the outer piece.
SimpleFunction harmonic_simple(std::function<Point(std::int64_t)> value, std::string name) {
  auto value_shared = std::make_shared<std::function<Point(std::int64_t)>>(std::move(value));
  SimpleFunction::Config config;
  config.name = std::move(name);
  config.anchor = Point();
  config.piece = [value_shared](std::int64_t g) {
    Piece piece;
    if (g == 0) {
      piece.label = "outer";
      piece.value = Point();
      piece.stage = [](int n) { return outer_stage(n); };
      piece.member = outer_member;
      return piece;
    }
    piece.label = "k" + std::to_string(g);
    piece.value = (*value_shared)(g);
    piece.stage = [g](int n) { return harmonic_stage(g, n); };
    piece.member = [g](const Point& x) {
      double v = x.coord(0);
      return v > 1.0 / static_cast<double>(g + 1) && v <= 1.0 / static_cast<double>(g);
    };
    return piece;
  };
  config.locate = [](const Box& region, int n) {
    std::vector<std::int64_t> out;
    if (region.dim() != 1) return out;
    const Interval q = region.sides()[0];
    {
      const ClosedSet outer = outer_stage(n);
      for (const Box& b : *outer.boxes()) {
        if (b.sides()[0].lo <= q.hi && q.lo <= b.sides()[0].hi) {
          out.push_back(0);
          break;
        }
      }
    }
    if (q.hi > 0.0 && q.lo <= 1.0) {
      // Candidate interval indices touching [max(q.lo,0), min(q.hi,1)].
      // Index bounds are compared in double before casting: 1/x overflows
      // the integer range for tiny query coordinates.
      double hi = std::min(q.hi, 1.0);
      double lo = std::max(q.lo, 0.0);
      std::int64_t k_hi = n;  // stages are empty above their own index
      if (lo > 0.0) {
        double cap = std::ceil(1.0 / lo) + 1.0;
        if (cap < static_cast<double>(k_hi)) k_hi = static_cast<std::int64_t>(cap);
      }
      std::int64_t k_lo = 1;
      if (hi < 1.0) {
        double base = std::floor(1.0 / hi) - 1.0;
        if (base > static_cast<double>(k_hi)) return out;
        if (base > 1.0) k_lo = static_cast<std::int64_t>(base);
      }
      for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const ClosedSet stage = harmonic_stage(k, n);
        const std::vector<Box>* boxes = stage.boxes();
        if (boxes == nullptr || boxes->empty()) continue;
        const Interval s = (*boxes)[0].sides()[0];
        if (s.lo <= q.hi && q.lo <= s.hi) out.push_back(k);
      }
    }
    return out;
  };
  return SimpleFunction(std::move(config));
}

ProbeSequence harmonic_probe(double start, std::string name) {
  ProbeSequence seq;
  seq.limit = Point();
  seq.name = std::move(name);
  seq.at = [start](int n) { return Point::scalar(start / static_cast<double>(n)); };
  seq.gap = [start](int n) { return std::abs(start) / static_cast<double>(n); };
  return seq;
}

}  // namespace

const FixtureFunction& Fixture::function(const std::string& fn_name) const {
  for (const FixtureFunction& f : functions)
    if (f.name == fn_name) return f;
  throw std::invalid_argument("fixture " + name + " has no function named " + fn_name);
}

Fixture fixture_bounded() {
  Fixture fx;
  fx.name = "bounded";
  fx.summary = "bounded step function on R, certified usco-bounded with bound 1";
  fx.region = Box::segment(-2.0, 2.0);
  fx.plan = ProbePlan::standard(fx.region, {Point()});

  SimpleFunction::Config config;
  config.name = "step";
  config.piece_count = 2;
  config.anchor = Point();
  config.piece = [](std::int64_t g) {
    Piece piece;
    if (g == 0) {
      piece.label = "A";
      piece.value = Point();
      piece.stage = [](int n) { return ClosedSet::interval(-static_cast<double>(n), 0.0); };
      piece.member = [](const Point& x) { return x.coord(0) <= 0.0; };
    } else if (g == 1) {
      piece.label = "B";
      piece.value = Point::scalar(1.0);
      piece.stage = [](int n) {
        return ClosedSet::interval(1.0 / static_cast<double>(n), static_cast<double>(n));
      };
      piece.member = [](const Point& x) { return x.coord(0) > 0.0; };
    } else {
      throw std::out_of_range("step fixture has two pieces");
    }
    return piece;
  };
  config.locate = [](const Box& region, int n) {
    std::vector<std::int64_t> out;
    if (region.dim() != 1) return out;
    const Interval q = region.sides()[0];
    if (q.lo <= 0.0 && q.hi >= -static_cast<double>(n)) out.push_back(0);
    if (q.hi >= 1.0 / static_cast<double>(n) && q.lo <= static_cast<double>(n)) out.push_back(1);
    return out;
  };
  SimpleFunction step(std::move(config));

  FixtureFunction f;
  f.name = "f";
  f.claim = "bounded step, certified with bound 1";
  f.eval = [](const Point& x) {
    return x.coord(0) <= 0.0 ? Point() : Point::scalar(1.0);
  };
  f.simple = step;
  f.expected = Outcome::Certified;
  fx.functions.push_back(std::move(f));
  return fx;
}

Fixture fixture_reciprocal() {
  Fixture fx;
  fx.name = "reciprocal";
  fx.summary = "1/x blows up along 1/n; the identity stays certified on a box";
  fx.region = Box::segment(-5.0, 5.0);
  fx.plan = ProbePlan::standard(fx.region, {Point()});
  fx.plan.supplied.push_back(harmonic_probe(1.0, "harmonic-to-zero"));

  FixtureFunction f;
  f.name = "f";
  f.claim = "reciprocal with f(0)=0, falsified by unbounded values";
  f.eval = [](const Point& x) {
    double v = x.coord(0);
    return v == 0.0 ? Point() : Point::scalar(1.0 / v);
  };
  f.expected = Outcome::Falsified;
  fx.functions.push_back(std::move(f));

  FixtureFunction g;
  g.name = "g";
  g.claim = "identity, certified on the working box";
  g.eval = [](const Point& x) { return x; };
  g.expected = Outcome::Certified;
  fx.functions.push_back(std::move(g));
  return fx;
}

Fixture fixture_infinite_dim() {
  Fixture fx;
  fx.name = "infdim";
  fx.summary = "basis-vector values: bounded yet without any clustering subsequence";
  fx.domain = Space::euclidean(1);
  fx.codomain = Space::fin_support_seq();
  fx.region = Box::segment(-2.0, 2.0);
  fx.plan = ProbePlan::standard(fx.region, {Point()});
  fx.plan.sequences = 4;
  fx.plan.prefix = 50;
  fx.plan.eps_schedule = {0.7};
  fx.plan.approach = ApproachRate::Harmonic;
  fx.plan.supplied.push_back(harmonic_probe(1.0, "harmonic-to-zero"));

  auto value = [](std::int64_t k) { return Point::basis(k, 1.0); };
  FixtureFunction f;
  f.name = "f";
  f.claim = "basis values on harmonic intervals, falsified by the eps-net test";
  f.eval = [value](const Point& x) {
    std::int64_t k = harmonic_index(x.coord(0));
    return k == 0 ? Point() : value(k);
  };
  f.simple = harmonic_simple(value, "infdim");
  f.expected = Outcome::Falsified;
  fx.functions.push_back(std::move(f));
  return fx;
}

Point noncomplete_value(int n) {
  std::vector<Point::Entry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) entries.emplace_back(i, std::ldexp(1.0, -i));
  return Point::sparse(std::move(entries));
}

SimpleFunction noncomplete_fn(int n) {
  if (n < 1) throw std::invalid_argument("noncomplete_fn: n must be >= 1");
  const std::int64_t nn = n;
  SimpleFunction::Config config;
  config.name = "noncomplete-f" + std::to_string(n);
  config.piece_count = nn + 1;
  config.anchor = Point();
  config.piece = [nn](std::int64_t g) {
    Piece piece;
    if (g == 0) {
      piece.label = "outer";
      piece.value = Point();
      piece.stage = [](int stage_n) { return outer_stage(stage_n); };
      piece.member = outer_member;
      return piece;
    }
    if (g < nn) {
      piece.label = "k" + std::to_string(g);
      piece.value = noncomplete_value(static_cast<int>(g));
      piece.stage = [g](int stage_n) { return harmonic_stage(g, stage_n); };
      piece.member = [g](const Point& x) {
        double v = x.coord(0);
        return v > 1.0 / static_cast<double>(g + 1) && v <= 1.0 / static_cast<double>(g);
      };
      return piece;
    }
    if (g == nn) {
      // Tail piece (0, 1/n].
      piece.label = "tail";
      piece.value = noncomplete_value(static_cast<int>(nn));
      piece.stage = [nn](int stage_n) {
        double hi = 1.0 / static_cast<double>(nn);
        double lo = hi * std::max(std::ldexp(1.0, -stage_n), 0x1.0p-400);
        return ClosedSet::interval(lo, hi);
      };
      piece.member = [nn](const Point& x) {
        double v = x.coord(0);
        return v > 0.0 && v <= 1.0 / static_cast<double>(nn);
      };
      return piece;
    }
    throw std::out_of_range("noncomplete_fn piece index");
  };
  config.locate = [nn](const Box& region, int stage_n) {
    std::vector<std::int64_t> out;
    if (region.dim() != 1) return out;
    const Interval q = region.sides()[0];
    {
      const ClosedSet outer = outer_stage(stage_n);
      for (const Box& b : *outer.boxes()) {
        if (b.sides()[0].lo <= q.hi && q.lo <= b.sides()[0].hi) {
          out.push_back(0);
          break;
        }
      }
    }
    for (std::int64_t k = 1; k < nn; ++k) {
      const ClosedSet stage = harmonic_stage(k, stage_n);
      const std::vector<Box>* boxes = stage.boxes();
      if (boxes == nullptr || boxes->empty()) continue;
      const Interval s = (*boxes)[0].sides()[0];
      if (s.lo <= q.hi && q.lo <= s.hi) out.push_back(k);
    }
    {
      double hi = 1.0 / static_cast<double>(nn);
      double lo = hi * std::max(std::ldexp(1.0, -stage_n), 0x1.0p-400);
      if (lo <= q.hi && q.lo <= hi) out.push_back(nn);
    }
    return out;
  };
  return SimpleFunction(std::move(config));
}

Fixture fixture_noncomplete() {
  Fixture fx;
  fx.name = "noncomplete";
  fx.summary = "Cauchy values with an unrepresentable limit: truncations certified, limit falsified";
  fx.domain = Space::euclidean(1);
  fx.codomain = Space::subspace(
      Space::fin_support_seq(), [](const Point&) { return true; },
      std::make_shared<FiniteSupportOracle>(25), "finitely supported sequences");
  fx.region = Box::segment(-2.0, 2.0);
  fx.plan = ProbePlan::standard(fx.region, {Point(), Point::scalar(0.5)});
  fx.plan.sequences = 8;
  fx.plan.prefix = 64;
  fx.plan.approach = ApproachRate::Harmonic;
  fx.plan.supplied.push_back(harmonic_probe(1.0, "harmonic-to-zero"));

  auto value = [](std::int64_t k) { return noncomplete_value(static_cast<int>(k)); };
  FixtureFunction f;
  f.name = "f";
  f.claim = "uniform limit with values escaping every finite support";
  f.eval = [value](const Point& x) {
    std::int64_t k = harmonic_index(x.coord(0));
    if (k > 100000)
      throw std::domain_error("noncomplete limit: value support exceeds resource cap");
    return k == 0 ? Point() : value(k);
  };
  f.simple = harmonic_simple(value, "noncomplete-limit");
  f.expected = Outcome::Falsified;
  fx.functions.push_back(std::move(f));

  for (int n = 1; n <= 20; ++n) {
    FixtureFunction fn;
    fn.name = "f" + std::to_string(n);
    fn.claim = "truncation at level " + std::to_string(n) + ", certified";
    const int level = n;
    fn.eval = [level](const Point& x) {
      std::int64_t k = harmonic_index(x.coord(0));
      if (k == 0) return Point();
      return noncomplete_value(static_cast<int>(std::min<std::int64_t>(k, level)));
    };
    fn.simple = noncomplete_fn(n);
    fn.expected = Outcome::Certified;
    fx.functions.push_back(std::move(fn));
  }
  return fx;
}

std::vector<std::string> fixture_names() {
  return {"bounded", "reciprocal", "infdim", "noncomplete"};
}

Fixture fixture_by_name(const std::string& name) {
  if (name == "bounded") return fixture_bounded();
  if (name == "reciprocal") return fixture_reciprocal();
  if (name == "infdim") return fixture_infinite_dim();
  if (name == "noncomplete") return fixture_noncomplete();
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace fixtures
}  // namespace usco
