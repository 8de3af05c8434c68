#include "usco/probe.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace usco {

ProbeSequence ProbeSequence::from_points(std::vector<Point> points, Point limit,
                                         std::string name) {
  if (points.empty())
    throw std::invalid_argument("ProbeSequence::from_points: empty sequence");
  auto shared = std::make_shared<std::vector<Point>>(std::move(points));
  auto lim = limit;
  ProbeSequence seq;
  seq.at = [shared](int n) {
    int i = std::clamp(n - 1, 0, static_cast<int>(shared->size()) - 1);
    return (*shared)[static_cast<std::size_t>(i)];
  };
  seq.gap = [shared, lim](int n) {
    // Stored sequences certify with the running max of remaining distances,
    // which is nonincreasing by construction.
    int i = std::clamp(n - 1, 0, static_cast<int>(shared->size()) - 1);
    double worst = 0.0;
    for (std::size_t k = static_cast<std::size_t>(i); k < shared->size(); ++k)
      worst = std::max(worst, distance((*shared)[k], lim));
    return worst;
  };
  seq.limit = std::move(limit);
  seq.name = std::move(name);
  return seq;
}

std::vector<double> ProbePlan::default_eps_schedule() {
  std::vector<double> eps;
  for (int k = 0; k <= 10; ++k) eps.push_back(std::ldexp(1.0, -k));
  return eps;
}

ProbePlan ProbePlan::standard(Box domain, std::vector<Point> targets) {
  ProbePlan plan;
  plan.domain = std::move(domain);
  plan.targets = std::move(targets);
  plan.eps_schedule = default_eps_schedule();
  return plan;
}

void ProbePlan::validate() const {
  if (sequences < 1 || prefix < 1)
    throw std::invalid_argument("ProbePlan: sequences and prefix must be positive");
  if (eps_schedule.empty())
    throw std::invalid_argument("ProbePlan: empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (eps_schedule[i] <= 0.0)
      throw std::invalid_argument("ProbePlan: eps values must be positive");
    if (i > 0 && eps_schedule[i] >= eps_schedule[i - 1])
      throw std::invalid_argument("ProbePlan: eps schedule must be strictly decreasing");
  }
  if (grid_resolution <= 0.0)
    throw std::invalid_argument("ProbePlan: grid resolution must be positive");
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

Point clamp_to_box(const Point& p, const Box& box) {
  if (box.empty() || box.contains(p)) return p;
  std::vector<double> c(static_cast<std::size_t>(box.dim()), 0.0);
  for (int i = 0; i < box.dim(); ++i) {
    const Interval& iv = box.sides()[static_cast<std::size_t>(i)];
    double v = p.coord(i);
    if (!std::isinf(iv.lo)) v = std::max(v, iv.lo);
    if (!std::isinf(iv.hi)) v = std::min(v, iv.hi);
    c[static_cast<std::size_t>(i)] = v;
  }
  return Point::euclidean(c);
}

Point random_in_box(const Box& box, std::mt19937_64& rng) {
  std::vector<double> c(static_cast<std::size_t>(box.dim()), 0.0);
  for (int i = 0; i < box.dim(); ++i) {
    const Interval& iv = box.sides()[static_cast<std::size_t>(i)];
    double lo = std::isinf(iv.lo) ? -1.0 : iv.lo;
    double hi = std::isinf(iv.hi) ? 1.0 : iv.hi;
    c[static_cast<std::size_t>(i)] = lo + (hi - lo) * uniform01(rng);
  }
  return Point::euclidean(c);
}

}  // namespace

std::vector<ProbeSequence> make_probes(const ProbePlan& plan) {
  plan.validate();
  std::vector<ProbeSequence> probes = plan.supplied;
  if (static_cast<int>(probes.size()) >= plan.sequences) {
    probes.resize(static_cast<std::size_t>(plan.sequences));
    return probes;
  }
  if (plan.domain.empty() || plan.domain.dim() == 0)
    throw std::invalid_argument("make_probes: plan domain box required for generated probes");

  std::mt19937_64 rng(plan.seed);
  const int want = plan.sequences - static_cast<int>(probes.size());
  for (int s = 0; s < want; ++s) {
    Point target = plan.targets.empty()
                       ? random_in_box(plan.domain, rng)
                       : plan.targets[static_cast<std::size_t>(s) % plan.targets.size()];
    Point start = random_in_box(plan.domain, rng);
    if (distance(start, target) == 0.0) start = clamp_to_box(start + Point::basis(0, 0.25), plan.domain);
    Point dir = start - target;
    double r0 = distance(start, target);
    ApproachRate rate = plan.approach;
    Box domain = plan.domain;
    ProbeSequence seq;
    seq.limit = target;
    seq.name = "approach-" + std::to_string(s + 1);
    seq.at = [target, dir, rate, domain](int n) {
      double scale = rate == ApproachRate::Geometric
                         ? std::ldexp(1.0, -(n - 1))
                         : 1.0 / static_cast<double>(n);
      return clamp_to_box(target + scale * dir, domain);
    };
    seq.gap = [r0, rate](int n) {
      return rate == ApproachRate::Geometric ? r0 * std::ldexp(1.0, -(n - 1))
                                             : r0 / static_cast<double>(n);
    };
    probes.push_back(std::move(seq));
  }
  return probes;
}

NetResult total_boundedness_probe(const std::vector<Point>& points, double epsilon) {
  if (points.empty())
    throw std::invalid_argument("total_boundedness_probe: empty sample");
  if (epsilon <= 0.0)
    throw std::invalid_argument("total_boundedness_probe: epsilon must be positive");

  NetResult result;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    bool covered = false;
    for (int c : result.net_indices) {
      if (distance(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(c)]) <=
          epsilon) {
        covered = true;
        break;
      }
    }
    if (!covered) result.net_indices.push_back(i);
  }

  const std::size_t majority = (points.size() + 1) / 2;
  if (result.net_indices.size() > majority) {
    // Greedy centers are pairwise more than epsilon apart by construction.
    result.net_found = false;
    for (std::size_t a = 0; a < result.net_indices.size(); ++a)
      for (std::size_t b = a + 1; b < result.net_indices.size(); ++b)
        result.separated_pairs.emplace_back(result.net_indices[a], result.net_indices[b]);
  } else {
    result.net_found = true;
  }
  return result;
}

}  // namespace usco
