#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "usco/point.hpp"

namespace usco {

enum class Outcome { Certified, Falsified, Inconclusive };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

/// Evidence for a Certified verdict: a uniform bound observed (or derived)
/// for all sampled values.
struct BoundCertificate {
  double bound = 0.0;
  std::string method;  // "sampled-sup", "perturbation-transfer", ...
};

/// Evidence for a Falsified verdict: the probe points and the values sampled
/// along them, plus the specific failure they exhibit.
struct Witness {
  std::vector<Point> sequence;
  std::vector<Point> values;
  Point limit;
  std::string reason;  // "unbounded-growth", "eps-net-failure", "limit-outside-subspace", ...
  double eps = 0.0;    // resolution the failure was detected at, when relevant
};

/// Exactly what was checked: probe counts, prefix, eps schedule, seed, and
/// any evidence conventions the run relied on.
struct Resolution {
  int sequences = 0;
  int prefix = 0;
  std::vector<double> eps_schedule;
  double grid_resolution = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<BoundCertificate> certificate;
  std::optional<Witness> witness;
  Resolution resolution;

  bool certified() const { return outcome == Outcome::Certified; }
  bool falsified() const { return outcome == Outcome::Falsified; }

  /// Falsified verdicts carry a witness; Certified ones carry a certificate.
  void check_invariants() const;
};

std::string to_json(const Point& p);
std::string to_json(const Verdict& v);
Verdict verdict_from_json(const std::string& text);

}  // namespace usco
