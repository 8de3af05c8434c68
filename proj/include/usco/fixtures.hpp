#pragma once

#include <optional>
#include <string>
#include <vector>

#include "usco/function_sequence.hpp"
#include "usco/probe.hpp"
#include "usco/simplefn.hpp"
#include "usco/space.hpp"
#include "usco/verdict.hpp"

namespace usco {
namespace fixtures {

struct FixtureFunction {
  std::string name;
  std::string claim;  // one-line description of the expected behavior
  PointFn eval;
  std::optional<SimpleFunction> simple;
  Outcome expected = Outcome::Inconclusive;
};

struct Fixture {
  std::string name;
  std::string summary;
  Space domain = Space::euclidean(1);
  Space codomain = Space::euclidean(1);
  Box region;
  ProbePlan plan;
  std::vector<FixtureFunction> functions;

  const FixtureFunction& function(const std::string& fn_name) const;  // throws on unknown
  const FixtureFunction& primary() const { return functions.front(); }
};

/// Bounded step function on R: certified usco-bounded with bound 1.
Fixture fixture_bounded();

/// f(x) = 1/x away from 0 (falsified by unbounded values along 1/n) and the
/// identity g(x) = x (certified on a compact box).
Fixture fixture_reciprocal();

/// Values are the basis vectors e_n on the harmonic intervals: bounded but
/// falsified because the sampled values admit no epsilon-net at 0.7.
Fixture fixture_infinite_dim();

/// Values are partial geometric sums y_n (a Cauchy sequence with no
/// representable limit): every truncated f_n is certified, the uniform limit
/// f is falsified by the finite-support oracle.
Fixture fixture_noncomplete();

/// The n-th truncated function of the noncomplete family.
SimpleFunction noncomplete_fn(int n);

/// Partial sum value y_n of the noncomplete family.
Point noncomplete_value(int n);

std::vector<std::string> fixture_names();
Fixture fixture_by_name(const std::string& name);  // throws on unknown

}  // namespace fixtures
}  // namespace usco
