#include <doctest.h>

#include <cmath>

#include "usco/analysis.hpp"
#include "usco/fixtures.hpp"
#include "usco/setvalued.hpp"

using namespace usco;
using fixtures::Fixture;

TEST_CASE("bounded fixture is certified with bound 1") {
  Fixture fx = fixtures::fixture_bounded();
  Verdict v = check_usco_bounded(fx.primary().eval, fx.plan, fx.codomain);
  CHECK(v.outcome == Outcome::Certified);
  CHECK(v.certificate->bound == 1.0);
  CHECK(fx.primary().eval(Point::scalar(-1.0)) == Point());
  CHECK(fx.primary().eval(Point::scalar(1.0)) == Point::scalar(1.0));
}

TEST_CASE("reciprocal fixture values and verdicts") {
  Fixture fx = fixtures::fixture_reciprocal();
  CHECK(fx.function("f").eval(Point::scalar(0.1)) == Point::scalar(10.0));
  CHECK(fx.function("f").eval(Point::scalar(0.0)) == Point());

  Verdict vf = check_usco_bounded(fx.function("f").eval, fx.plan, fx.codomain);
  CHECK(vf.outcome == Outcome::Falsified);
  REQUIRE(vf.witness.has_value());
  // The witness rides the supplied harmonic probe.
  CHECK(vf.witness->sequence.front() == Point::scalar(1.0));
  CHECK(vf.witness->values.back().norm() > 10.0);

  Verdict vg = check_usco_bounded(fx.function("g").eval, fx.plan, fx.codomain);
  CHECK(vg.outcome == Outcome::Certified);
  CHECK(vg.certificate->bound <= 5.0 + 1e-12);
}

TEST_CASE("infinite-dimensional fixture falsified by the eps-net test") {
  Fixture fx = fixtures::fixture_infinite_dim();
  CHECK(fx.primary().eval(Point::scalar(0.6)) == Point::basis(1));
  CHECK(fx.primary().eval(Point::scalar(-1.0)) == Point());

  Verdict v = check_usco_bounded(fx.primary().eval, fx.plan, fx.codomain);
  CHECK(v.outcome == Outcome::Falsified);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->eps == 0.7);
  CHECK(v.witness->values.size() == 50);
  // All sampled values are unit basis vectors, pairwise sqrt(2) apart.
  for (std::size_t i = 0; i < v.witness->values.size(); ++i)
    for (std::size_t j = i + 1; j < v.witness->values.size(); ++j)
      CHECK(distance(v.witness->values[i], v.witness->values[j]) == std::sqrt(2.0));
}

TEST_CASE("noncomplete fixture: truncations certified, limit falsified") {
  Fixture fx = fixtures::fixture_noncomplete();

  Verdict vf = check_usco_bounded(fx.function("f").eval, fx.plan, fx.codomain);
  CHECK(vf.outcome == Outcome::Falsified);
  REQUIRE(vf.witness.has_value());
  CHECK(vf.witness->reason.find("outside") != std::string::npos);

  for (int n : {1, 3, 10, 20}) {
    Verdict vn = check_usco_bounded(fx.function("f" + std::to_string(n)).eval, fx.plan,
                                    fx.codomain);
    CHECK(vn.outcome == Outcome::Certified);
  }
}

TEST_CASE("noncomplete uniform tail bound") {
  // sup over x of |f_n - f| is the geometric tail norm, below 2^-n.
  for (int n : {1, 2, 5, 10, 20}) {
    double worst = 0.0;
    Fixture fx = fixtures::fixture_noncomplete();
    const auto& fn = fx.function("f" + std::to_string(n)).eval;
    const auto& f = fx.function("f").eval;
    for (int i = 1; i <= 2000; ++i) {
      Point x = Point::scalar(static_cast<double>(i) / 2000.0);
      worst = std::max(worst, distance(fn(x), f(x)));
    }
    CHECK(worst <= std::ldexp(1.0, -n));
    // The exact tail value shows up at points deep in the tail piece.
    double tail = std::ldexp(1.0, -n) / std::sqrt(3.0);
    CHECK(worst <= tail * (1.0 + 1e-9));
  }
}

TEST_CASE("stored witnesses replay their falsification") {
  // Net-failure witness (basis vectors) and limit-outside witness (Cauchy
  // partial sums): rerunning the analysis on the stored values alone
  // reproduces Falsified.
  {
    Fixture fx = fixtures::fixture_infinite_dim();
    Verdict v = check_usco_bounded(fx.primary().eval, fx.plan, fx.codomain);
    REQUIRE(v.witness.has_value());
    Verdict replay = check_witness(*v.witness, fx.plan, fx.codomain);
    CHECK(replay.outcome == Outcome::Falsified);
  }
  {
    Fixture fx = fixtures::fixture_noncomplete();
    Verdict v = check_usco_bounded(fx.primary().eval, fx.plan, fx.codomain);
    REQUIRE(v.witness.has_value());
    Verdict replay = check_witness(*v.witness, fx.plan, fx.codomain);
    CHECK(replay.outcome == Outcome::Falsified);
    REQUIRE(replay.witness.has_value());
    CHECK(replay.witness->reason.find("support") != std::string::npos);
  }
}

TEST_CASE("every fixture function reproduces its expected verdict") {
  for (const std::string& name : fixtures::fixture_names()) {
    Fixture fx = fixtures::fixture_by_name(name);
    for (const auto& fn : fx.functions) {
      Verdict v = check_usco_bounded(fn.eval, fx.plan, fx.codomain);
      CHECK_MESSAGE(v.outcome == fn.expected, fx.name, "/", fn.name);
    }
  }
}

TEST_CASE("fixture lookup") {
  CHECK(fixtures::fixture_names().size() == 4);
  CHECK_THROWS_AS(fixtures::fixture_by_name("nope"), std::invalid_argument);
  CHECK_THROWS_AS(fixtures::fixture_bounded().function("nope"), std::invalid_argument);
}
