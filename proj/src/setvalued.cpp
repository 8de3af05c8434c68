#include "usco/setvalued.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace usco {

namespace {

Resolution make_resolution(const ProbePlan& plan, const Space& value_space) {
  Resolution r;
  r.sequences = plan.sequences;
  r.prefix = plan.prefix;
  r.eps_schedule = plan.eps_schedule;
  r.grid_resolution = plan.grid_resolution;
  r.seed = plan.seed;
  r.notes.push_back("eps-net majority rule taken as no-convergent-subsequence evidence");
  r.notes.push_back("growth-rate extrapolation taken as unboundedness evidence");
  if (const LimitOracle* oracle = value_space.limit_oracle())
    r.notes.push_back(oracle->describe());
  return r;
}

/// Merge value points into closed boxes; points closer than tol (to the
/// running cluster representative) share a box.
std::vector<Box> merge_into_boxes(std::vector<Point> pts, double tol) {
  std::vector<Box> out;
  if (pts.empty()) return out;

  std::int64_t max_idx = -1;
  for (const Point& p : pts) max_idx = std::max(max_idx, p.max_index());
  const int dim = static_cast<int>(max_idx) + 1;

  if (dim <= 1) {
    std::vector<double> xs;
    xs.reserve(pts.size());
    for (const Point& p : pts) xs.push_back(p.coord(0));
    std::sort(xs.begin(), xs.end());
    double lo = xs[0], hi = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] - hi <= tol) {
        hi = xs[i];
      } else {
        out.push_back(Box::segment(lo, hi));
        lo = hi = xs[i];
      }
    }
    out.push_back(Box::segment(lo, hi));
    return out;
  }

  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<Interval> sides(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k)
      sides[static_cast<std::size_t>(k)] = Interval{pts[i].coord(k), pts[i].coord(k)};
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      Box current(sides);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        if (current.distance_to(pts[j]) <= tol) {
          for (int k = 0; k < dim; ++k) {
            auto& iv = sides[static_cast<std::size_t>(k)];
            iv.lo = std::min(iv.lo, pts[j].coord(k));
            iv.hi = std::max(iv.hi, pts[j].coord(k));
          }
          used[j] = true;
          grew = true;
          current = Box(sides);
        }
      }
    }
    out.emplace_back(sides);
  }
  return out;
}

}  // namespace

ClosedSet SetValuedMap::image(const Point& x) const {
  ClosedSet s = image_(x);
  if (s.is_empty()) throw std::domain_error("SetValuedMap: empty image");
  return s;
}

SetValuedMap graph_closure_hull(const std::vector<std::pair<Point, Point>>& graph,
                                double resolution) {
  if (graph.empty()) throw std::invalid_argument("graph_closure_hull: empty sample");
  if (resolution <= 0.0) throw std::invalid_argument("graph_closure_hull: resolution must be positive");

  auto samples = std::make_shared<std::vector<std::pair<Point, Point>>>(graph);

  std::int64_t max_idx = 0;
  for (const auto& [x, y] : graph) max_idx = std::max(max_idx, x.max_index());
  const int xdim = static_cast<int>(std::max<std::int64_t>(max_idx, 0)) + 1;
  std::vector<Interval> sides(static_cast<std::size_t>(xdim), Interval{kInf, -kInf});
  for (const auto& [x, y] : graph) {
    for (int k = 0; k < xdim; ++k) {
      auto& iv = sides[static_cast<std::size_t>(k)];
      iv.lo = std::min(iv.lo, x.coord(k));
      iv.hi = std::max(iv.hi, x.coord(k));
    }
  }
  Box domain(sides);

  const double res = resolution;
  SetValuedMap map(domain, [samples, res](const Point& x) {
    std::vector<Point> ys;
    for (const auto& [xs, y] : *samples)
      if (distance(xs, x) <= res) ys.push_back(y);
    if (ys.empty()) return ClosedSet::empty();
    return ClosedSet::box_union(merge_into_boxes(std::move(ys), res));
  });
  map.set_graph_samples(*samples);
  return map;
}

SetValuedMap graph_closure_hull(const SetValuedMap& hull, double resolution) {
  if (!hull.graph_samples())
    throw std::invalid_argument("graph_closure_hull: map carries no graph samples");
  return graph_closure_hull(*hull.graph_samples(), resolution);
}

SetValuedMap graph_closure_hull(const PointFn& f, const Box& domain, double step,
                                double resolution) {
  if (domain.dim() != 1 || !domain.bounded())
    throw std::invalid_argument("graph_closure_hull: function sampling needs a bounded interval domain");
  std::vector<std::pair<Point, Point>> graph;
  const Interval iv = domain.sides()[0];
  const int n = static_cast<int>(std::floor((iv.hi - iv.lo) / step + 0.5));
  for (int i = 0; i <= n; ++i) {
    Point x = Point::scalar(iv.lo + step * i);
    graph.emplace_back(x, f(x));
  }
  return graph_closure_hull(graph, resolution);
}

namespace {

struct ProbeRun {
  std::vector<Point> points;
  std::vector<Point> values;
  bool aborted = false;
  std::string abort_reason;
};

Verdict falsify(Resolution resolution, const ProbeRun& run, const ProbeSequence& probe,
                const std::string& reason, double eps) {
  Verdict v;
  v.outcome = Outcome::Falsified;
  Witness w;
  w.sequence = run.points;
  w.values = run.values;
  w.limit = probe.limit;
  w.reason = reason;
  w.eps = eps;
  v.witness = std::move(w);
  v.resolution = std::move(resolution);
  return v;
}

}  // namespace

Verdict check_usco(const SetValuedMap& map, const ProbePlan& plan, const Space& value_space) {
  plan.validate();
  Resolution resolution = make_resolution(plan, value_space);
  const double final_eps = plan.eps_schedule.back();
  std::vector<ProbeSequence> probes = make_probes(plan);

  bool any_aborted = false;
  bool any_undecided = false;
  double sup_norm = 0.0;

  for (const ProbeSequence& probe : probes) {
    std::optional<ClosedSet> target;
    if (map.domain().contains(probe.limit)) {
      try {
        target = map.image(probe.limit);
      } catch (const std::exception&) {
        target.reset();
      }
    }

    // Gather image representatives along the probe.
    std::vector<std::vector<Point>> reps(static_cast<std::size_t>(plan.prefix));
    std::vector<Point> points(static_cast<std::size_t>(plan.prefix));
    bool aborted = false;
    std::string abort_reason;
    for (int j = 0; j < plan.prefix; ++j) {
      Point x = probe.at(j + 1);
      points[static_cast<std::size_t>(j)] = x;
      if (!map.domain().contains(x)) {
        aborted = true;
        abort_reason = "probe left the domain region";
        break;
      }
      try {
        reps[static_cast<std::size_t>(j)] = map.image(x).representatives();
      } catch (const std::exception& e) {
        aborted = true;
        abort_reason = e.what();
        break;
      }
      if (reps[static_cast<std::size_t>(j)].empty()) {
        aborted = true;
        abort_reason = "image has no representable points";
        break;
      }
    }
    if (aborted) {
      any_aborted = true;
      resolution.notes.push_back("probe " + probe.name + " aborted: " + abort_reason);
      continue;
    }

    // Value selections: largest norm, nearest to the target image, farthest
    // from it. The sequential criterion quantifies over all selections; these
    // are the extremal ones reachable from the stored representatives.
    struct Selection {
      const char* name;
      std::function<Point(const std::vector<Point>&)> pick;
    };
    std::vector<Selection> selections;
    selections.push_back({"max-norm", [](const std::vector<Point>& r) {
                            return *std::max_element(r.begin(), r.end(),
                                                     [](const Point& a, const Point& b) {
                                                       return a.norm() < b.norm();
                                                     });
                          }});
    if (target) {
      const ClosedSet* t = &*target;
      selections.push_back({"nearest-to-limit-image", [t](const std::vector<Point>& r) {
                              return *std::min_element(r.begin(), r.end(),
                                                       [t](const Point& a, const Point& b) {
                                                         return set_distance(*t, a) <
                                                                set_distance(*t, b);
                                                       });
                            }});
      selections.push_back({"farthest-from-limit-image", [t](const std::vector<Point>& r) {
                              return *std::max_element(r.begin(), r.end(),
                                                       [t](const Point& a, const Point& b) {
                                                         return set_distance(*t, a) <
                                                                set_distance(*t, b);
                                                       });
                            }});
    }

    for (const Selection& sel : selections) {
      ProbeRun run;
      run.points = points;
      run.values.reserve(reps.size());
      for (const auto& r : reps) run.values.push_back(sel.pick(r));

      ValueAnalysis a = analyze_values(run.values, plan, value_space);
      sup_norm = std::max(sup_norm, a.max_norm);
      switch (a.status) {
        case ValueAnalysis::Status::Unbounded:
          return falsify(std::move(resolution), run, probe,
                         std::string("unbounded values (") + sel.name + "): " + a.detail, 0.0);
        case ValueAnalysis::Status::NoCluster:
          return falsify(std::move(resolution), run, probe,
                         std::string("eps-net failure (") + sel.name + "): " + a.detail,
                         a.fail_eps);
        case ValueAnalysis::Status::LimitOutside:
          return falsify(std::move(resolution), run, probe,
                         std::string("cluster limit outside space (") + sel.name + "): " +
                             a.detail,
                         0.0);
        case ValueAnalysis::Status::Undecided:
          any_undecided = true;
          break;
        case ValueAnalysis::Status::Ok:
          break;
      }

      // Landing check: some tail cluster must come within final_eps of the
      // image of the probe limit.
      if (target && a.status == ValueAnalysis::Status::Ok && !a.cluster_reps.empty()) {
        double best = kInf;
        for (const Point& c : a.cluster_reps)
          best = std::min(best, set_distance(*target, c));
        if (best > final_eps) {
          std::ostringstream os;
          os << "all value clusters at distance > " << final_eps
             << " from the image of the limit (closest " << best << ", " << sel.name << ")";
          return falsify(std::move(resolution), run, probe, os.str(), final_eps);
        }
      }
    }
  }

  Verdict v;
  v.resolution = std::move(resolution);
  if (any_aborted || any_undecided) {
    v.outcome = Outcome::Inconclusive;
  } else {
    v.outcome = Outcome::Certified;
    v.certificate = BoundCertificate{sup_norm, "sampled-sup"};
  }
  return v;
}

namespace {

Verdict check_values_along_probes(
    const std::function<std::optional<Point>(const Point&, std::string*)>& eval,
    const ProbePlan& plan, const Space& value_space, Resolution resolution) {
  const std::vector<ProbeSequence> probes = make_probes(plan);
  bool any_aborted = false;
  bool any_undecided = false;
  double sup_norm = 0.0;

  for (const ProbeSequence& probe : probes) {
    ProbeRun run;
    run.points.reserve(static_cast<std::size_t>(plan.prefix));
    run.values.reserve(static_cast<std::size_t>(plan.prefix));
    for (int j = 0; j < plan.prefix; ++j) {
      Point x = probe.at(j + 1);
      std::string err;
      std::optional<Point> y = eval(x, &err);
      if (!y) {
        run.aborted = true;
        run.abort_reason = err;
        break;
      }
      run.points.push_back(std::move(x));
      run.values.push_back(std::move(*y));
    }
    if (run.aborted) {
      any_aborted = true;
      resolution.notes.push_back("probe " + probe.name + " aborted: " + run.abort_reason);
      continue;
    }

    ValueAnalysis a = analyze_values(run.values, plan, value_space);
    sup_norm = std::max(sup_norm, a.max_norm);
    switch (a.status) {
      case ValueAnalysis::Status::Unbounded:
        return falsify(std::move(resolution), run, probe, "unbounded values: " + a.detail, 0.0);
      case ValueAnalysis::Status::NoCluster:
        return falsify(std::move(resolution), run, probe, "eps-net failure: " + a.detail,
                       a.fail_eps);
      case ValueAnalysis::Status::LimitOutside:
        return falsify(std::move(resolution), run, probe,
                       "cluster limit outside space: " + a.detail, 0.0);
      case ValueAnalysis::Status::Undecided:
        any_undecided = true;
        break;
      case ValueAnalysis::Status::Ok:
        break;
    }
  }

  Verdict v;
  v.resolution = std::move(resolution);
  if (any_aborted || any_undecided) {
    v.outcome = Outcome::Inconclusive;
  } else {
    v.outcome = Outcome::Certified;
    v.certificate = BoundCertificate{sup_norm, "sampled-sup"};
  }
  return v;
}

}  // namespace

Verdict check_usco_bounded(const PointFn& f, const ProbePlan& plan, const Space& value_space) {
  plan.validate();
  Resolution resolution = make_resolution(plan, value_space);
  auto eval = [&f](const Point& x, std::string* err) -> std::optional<Point> {
    try {
      return f(x);
    } catch (const std::exception& e) {
      if (err) *err = e.what();
      return std::nullopt;
    }
  };
  return check_values_along_probes(eval, plan, value_space, std::move(resolution));
}

Verdict check_sequence_usco_bounded(const FunctionSequence& seq, const ProbePlan& plan,
                                    const Space& value_space) {
  plan.validate();
  const int horizon = std::max(1, std::min(plan.index_horizon, seq.horizon));

  struct Schedule {
    std::string name;
    std::function<int(int)> index;
  };
  std::vector<Schedule> schedules;
  schedules.push_back({"diagonal", [horizon](int j) { return std::min(j, horizon); }});
  schedules.push_back({"constant-first", [](int) { return 1; }});
  schedules.push_back({"constant-last", [horizon](int) { return horizon; }});
  schedules.push_back({"half-speed", [horizon](int j) { return std::min((j + 1) / 2, horizon); }});

  Verdict result;
  result.outcome = Outcome::Certified;
  double sup_norm = 0.0;
  bool inconclusive = false;
  Resolution base = make_resolution(plan, value_space);
  base.notes.push_back("sequence check over index schedules: diagonal, constant-first, "
                       "constant-last, half-speed");

  for (const Schedule& sched : schedules) {
    std::vector<ProbeSequence> probes = make_probes(plan);
    for (const ProbeSequence& probe : probes) {
      ProbeRun run;
      bool aborted = false;
      std::string abort_reason;
      for (int j = 1; j <= plan.prefix; ++j) {
        Point x = probe.at(j);
        int k = sched.index(j);
        try {
          PointFn fk = seq.at(k);
          run.points.push_back(x);
          run.values.push_back(fk(x));
        } catch (const std::exception& e) {
          aborted = true;
          abort_reason = e.what();
          break;
        }
      }
      if (aborted) {
        inconclusive = true;
        base.notes.push_back("probe " + probe.name + " (" + sched.name +
                             ") aborted: " + abort_reason);
        continue;
      }
      ValueAnalysis a = analyze_values(run.values, plan, value_space);
      sup_norm = std::max(sup_norm, a.max_norm);
      if (a.status == ValueAnalysis::Status::Unbounded ||
          a.status == ValueAnalysis::Status::NoCluster ||
          a.status == ValueAnalysis::Status::LimitOutside) {
        std::string reason = a.detail + " (schedule " + sched.name + ")";
        return falsify(std::move(base), run, probe, reason, a.fail_eps);
      }
      if (a.status == ValueAnalysis::Status::Undecided) inconclusive = true;
    }
  }

  result.resolution = std::move(base);
  if (inconclusive) {
    result.outcome = Outcome::Inconclusive;
  } else {
    result.certificate = BoundCertificate{sup_norm, "sampled-sup"};
  }
  return result;
}

Verdict transfer_bounded_perturbation(const Verdict& verdict_f, double bound_gap,
                                      const Space& value_space) {
  if (!verdict_f.certified() || !verdict_f.certificate)
    throw std::invalid_argument(
        "transfer_bounded_perturbation: requires a Certified verdict with a bound certificate");
  if (value_space.kind() != SpaceKind::Euclidean)
    throw std::invalid_argument(
        "transfer_bounded_perturbation: value space must be Euclidean (closed bounded sets "
        "compact)");
  if (!(bound_gap >= 0.0) || std::isinf(bound_gap))
    throw std::invalid_argument("transfer_bounded_perturbation: perturbation bound must be a "
                                "finite nonnegative real");
  Verdict v = verdict_f;
  v.certificate = BoundCertificate{verdict_f.certificate->bound + bound_gap,
                                   "perturbation-transfer"};
  v.resolution.notes.push_back("bound transferred across a sup-norm perturbation of " +
                               std::to_string(bound_gap));
  return v;
}

}  // namespace usco
