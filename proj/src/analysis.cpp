#include "usco/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace usco {

bool growth_unbounded(const std::vector<double>& norms, double cap, double growth_ratio,
                      std::string* detail) {
  double running = 0.0;
  std::vector<double> running_max(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) {
    running = std::max(running, norms[i]);
    running_max[i] = running;
    if (norms[i] > cap) {
      if (detail) {
        std::ostringstream os;
        os << "value norm " << norms[i] << " exceeds cap " << cap;
        *detail = os.str();
      }
      return true;
    }
  }
  const std::size_t n = norms.size();
  if (n < 8) return false;
  double full = running_max[n - 1];
  double half = running_max[n / 2 - 1];
  double quarter = running_max[n / 4 - 1];
  if (quarter > 0.0 && half >= growth_ratio * quarter && full >= growth_ratio * half) {
    if (detail) {
      std::ostringstream os;
      os << "running max grew " << quarter << " -> " << half << " -> " << full
         << " across prefix doublings (ratio >= " << growth_ratio << ")";
      *detail = os.str();
    }
    return true;
  }
  return false;
}

std::vector<TailCluster> extract_tail_clusters(const std::vector<Point>& values,
                                               double final_eps) {
  std::vector<TailCluster> clusters;
  if (values.empty()) return clusters;
  const std::size_t start = values.size() / 2;
  std::vector<Point> tail(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());

  std::vector<std::size_t> centers;
  std::vector<int> assignment(tail.size(), -1);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (distance(tail[i], tail[centers[c]]) <= 2.0 * final_eps) {
        assignment[i] = static_cast<int>(c);
        break;
      }
    }
    if (assignment[i] < 0) {
      centers.push_back(i);
      assignment[i] = static_cast<int>(centers.size()) - 1;
    }
  }

  clusters.resize(centers.size());
  for (std::size_t i = 0; i < tail.size(); ++i)
    clusters[static_cast<std::size_t>(assignment[i])].members.push_back(tail[i]);

  for (TailCluster& cl : clusters) {
    const auto& m = cl.members;
    if (m.size() == 1) {
      cl.limit_gap = kInf;
      continue;
    }
    std::vector<double> steps;
    steps.reserve(m.size() - 1);
    for (std::size_t i = 0; i + 1 < m.size(); ++i) steps.push_back(distance(m[i], m[i + 1]));
    // Constant suffix: the cluster has settled on one exact value, which is
    // taken as its limit. Requires at least three trailing repeats covering
    // half the cluster.
    std::size_t constant_tail = 0;
    for (auto it = steps.rbegin(); it != steps.rend() && *it == 0.0; ++it) ++constant_tail;
    if (constant_tail == steps.size() ||
        (constant_tail >= 3 && 2 * constant_tail >= steps.size())) {
      cl.limit_gap = 0.0;
      cl.stabilized = true;
      continue;
    }
    // Geometric extrapolation: if recent nonzero steps contract by a ratio
    // q < 0.9, future steps are bounded by the geometric tail.
    double worst_ratio = 0.0;
    double last_step = 0.0;
    bool usable = true;
    double prev = 0.0;
    for (double d : steps) {
      if (d == 0.0) continue;
      if (prev > 0.0) {
        double q = d / prev;
        worst_ratio = std::max(worst_ratio, q);
      }
      prev = d;
      last_step = d;
    }
    if (worst_ratio <= 0.0 || worst_ratio >= 0.9) usable = false;
    if (usable && last_step > 0.0) {
      cl.limit_gap = last_step * worst_ratio / (1.0 - worst_ratio);
    } else {
      cl.limit_gap = kInf;
    }
  }
  return clusters;
}

ValueAnalysis analyze_values(const std::vector<Point>& values, const ProbePlan& plan,
                             const Space& value_space) {
  ValueAnalysis out;
  if (values.empty()) {
    out.detail = "no values sampled";
    return out;
  }

  std::vector<double> norms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) norms[i] = values[i].norm();
  out.max_norm = *std::max_element(norms.begin(), norms.end());

  std::string growth_detail;
  if (growth_unbounded(norms, plan.value_cap, plan.growth_ratio, &growth_detail)) {
    out.status = ValueAnalysis::Status::Unbounded;
    out.detail = growth_detail;
    return out;
  }

  for (double eps : plan.eps_schedule) {
    NetResult net = total_boundedness_probe(values, eps);
    if (!net.net_found) {
      out.status = ValueAnalysis::Status::NoCluster;
      out.fail_eps = eps;
      std::ostringstream os;
      os << net.net_indices.size() << " of " << values.size()
         << " values pairwise separated beyond eps=" << eps;
      out.detail = os.str();
      return out;
    }
  }

  const double final_eps = plan.eps_schedule.back();
  std::vector<TailCluster> clusters = extract_tail_clusters(values, final_eps);
  for (const TailCluster& cl : clusters)
    out.cluster_reps.push_back(cl.members.back());

  const LimitOracle* oracle = value_space.limit_oracle();
  if (oracle != nullptr && !clusters.empty()) {
    bool any_inside = false;
    bool all_outside = true;
    double outside_margin = kInf;
    double checked_gap = 0.0;
    std::string outside_detail;
    for (const TailCluster& cl : clusters) {
      std::span<const Point> tail_span(cl.members);
      if (tail_span.size() > 8) tail_span = tail_span.subspan(tail_span.size() - 8);
      LimitOracle::Finding f =
          cl.limit_gap == kInf
              ? LimitOracle::Finding{LimitOracle::Result::Unknown, 0.0, "limit gap not certified"}
              : oracle->classify(tail_span, cl.limit_gap);
      if (f.result == LimitOracle::Result::Inside) {
        any_inside = true;
        all_outside = false;
      } else if (f.result == LimitOracle::Result::Outside) {
        outside_margin = std::min(outside_margin, f.margin);
        outside_detail = f.detail;
        checked_gap = cl.limit_gap;
      } else {
        all_outside = false;
      }
    }
    if (all_outside) {
      out.status = ValueAnalysis::Status::LimitOutside;
      out.detail = outside_detail;
      out.cluster_gap = checked_gap;
      return out;
    }
    if (!any_inside) {
      out.status = ValueAnalysis::Status::Undecided;
      out.detail = "cluster limit membership not certified either way";
      return out;
    }
  }

  out.status = ValueAnalysis::Status::Ok;
  return out;
}

Verdict check_witness(const Witness& witness, const ProbePlan& plan, const Space& value_space) {
  Verdict v;
  v.resolution.sequences = 1;
  v.resolution.prefix = static_cast<int>(witness.values.size());
  v.resolution.eps_schedule = plan.eps_schedule;
  v.resolution.grid_resolution = plan.grid_resolution;
  v.resolution.seed = plan.seed;
  v.resolution.notes.push_back("replay of stored witness values");

  ValueAnalysis a = analyze_values(witness.values, plan, value_space);
  switch (a.status) {
    case ValueAnalysis::Status::Unbounded:
    case ValueAnalysis::Status::NoCluster:
    case ValueAnalysis::Status::LimitOutside: {
      v.outcome = Outcome::Falsified;
      Witness w = witness;
      w.reason = a.detail;
      w.eps = a.fail_eps;
      v.witness = std::move(w);
      break;
    }
    case ValueAnalysis::Status::Ok: {
      v.outcome = Outcome::Certified;
      v.certificate = BoundCertificate{a.max_norm, "sampled-sup"};
      break;
    }
    case ValueAnalysis::Status::Undecided:
      v.outcome = Outcome::Inconclusive;
      v.resolution.notes.push_back(a.detail);
      break;
  }
  return v;
}

}  // namespace usco
