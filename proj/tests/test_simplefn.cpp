#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "usco/fixtures.hpp"
#include "usco/probe.hpp"
#include "usco/simplefn.hpp"

using namespace usco;
using fixtures::Fixture;

TEST_CASE("step fixture evaluation") {
  Fixture fx = fixtures::fixture_bounded();
  const SimpleFunction& step = *fx.primary().simple;
  CHECK(step(Point::scalar(-0.5)) == Point());
  CHECK(step(Point::scalar(0.5)) == Point::scalar(1.0));
  CHECK(step(Point::scalar(0.0)) == Point());
  CHECK(step(Point::scalar(-1.0)) == Point());
  CHECK(step(Point::scalar(1.0)) == Point::scalar(1.0));
}

TEST_CASE("noncomplete fixture evaluation matches the case formula") {
  // Values on (1/3, 1/2] are the level-2 partial sum.
  const SimpleFunction f = *fixtures::fixture_noncomplete().primary().simple;
  CHECK(f(Point::scalar(0.4)) == fixtures::noncomplete_value(2));
  CHECK(f(Point::scalar(0.5)) == fixtures::noncomplete_value(2));
  CHECK(f(Point::scalar(0.6)) == fixtures::noncomplete_value(1));
  CHECK(f(Point::scalar(-1.0)) == Point());
  CHECK(f(Point::scalar(2.0)) == Point());
}

TEST_CASE("truncated noncomplete functions follow their case formula") {
  SimpleFunction f3 = fixtures::noncomplete_fn(3);
  CHECK(f3(Point::scalar(0.4)) == fixtures::noncomplete_value(2));   // k=2 < 3
  CHECK(f3(Point::scalar(0.1)) == fixtures::noncomplete_value(3));   // tail piece (0, 1/3]
  CHECK(f3(Point::scalar(0.05)) == fixtures::noncomplete_value(3));
  CHECK(f3(Point::scalar(-2.0)) == Point());
}

TEST_CASE("active pieces on the step fixture") {
  Fixture fx = fixtures::fixture_bounded();
  const SimpleFunction& step = *fx.primary().simple;

  // Stage 1: [-1,0] and {1} both meet [-1, 1].
  auto pieces = active_pieces(step, Box::segment(-1.0, 1.0), 1);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].label == "A");
  CHECK(pieces[1].label == "B");

  // [5,6] misses both stage-1 sets but meets F^6_B = [1/6, 6].
  CHECK(active_pieces(step, Box::segment(5.0, 6.0), 1).empty());
  auto far = active_pieces(step, Box::segment(5.0, 6.0), 6);
  REQUIRE(far.size() == 1);
  CHECK(far[0].label == "B");

  CHECK_THROWS_AS(active_pieces(step, Box::segment(0.0, kInf), 1), std::invalid_argument);
}

TEST_CASE("active pieces on the harmonic partition") {
  const SimpleFunction f = *fixtures::fixture_noncomplete().primary().simple;
  // [0.4, 0.6] meets exactly the intervals around 1/2 once stages are deep.
  auto pieces = active_pieces(f, Box::segment(0.4, 0.6), 40);
  std::set<std::string> labels;
  for (const Piece& p : pieces) labels.insert(p.label);
  CHECK(labels == std::set<std::string>{"k1", "k2"});
}

TEST_CASE("partition totality and disjointness on a grid") {
  Fixture fx = fixtures::fixture_bounded();
  const SimpleFunction& step = *fx.primary().simple;
  const SimpleFunction infdim = *fixtures::fixture_infinite_dim().primary().simple;
  const SimpleFunction noncomplete = *fixtures::fixture_noncomplete().primary().simple;
  for (int i = 0; i <= 10000; ++i) {
    double x = -2.0 + 4.0 * i / 10000.0;
    // locate_point throws if no or several pieces claim the point.
    CHECK_NOTHROW(step.locate_point(Point::scalar(x)));
    CHECK_NOTHROW(infdim.locate_point(Point::scalar(x)));
    CHECK_NOTHROW(noncomplete.locate_point(Point::scalar(x)));
  }
}

TEST_CASE("stage families are discrete: shrinking boxes meet at most one stage set") {
  std::mt19937_64 rng(29);
  Fixture bounded = fixtures::fixture_bounded();
  const SimpleFunction infdim = *fixtures::fixture_infinite_dim().primary().simple;
  for (int trial = 0; trial < 200; ++trial) {
    double x = 4.0 * uniform01(rng) - 2.0;
    int n = 1 + static_cast<int>(uniform01(rng) * 32);
    for (const SimpleFunction* f : {&*bounded.primary().simple, &infdim}) {
      bool isolated = false;
      for (double r = 0.5; r > 1e-14; r *= 0.25) {
        if (f->active_indices(Box::segment(x - r, x + r), n).size() <= 1) {
          isolated = true;
          break;
        }
      }
      CHECK(isolated);
    }
  }
}

TEST_CASE("membership in a stage set is monotone in the stage") {
  const SimpleFunction f = *fixtures::fixture_infinite_dim().primary().simple;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    double x = 4.0 * uniform01(rng) - 2.0;
    Point p = Point::scalar(x);
    std::int64_t g = f.locate_point(p);
    const Piece& piece = f.piece(g);
    bool seen = false;
    for (int n = 1; n <= 40; ++n) {
      bool in_stage = piece.stage(n).contains(p);
      if (seen) CHECK(in_stage);  // F^n never loses points
      seen = seen || in_stage;
    }
  }
}

TEST_CASE("eval agrees with the closed-form fixture formulas at random points") {
  std::mt19937_64 rng(17);
  Fixture bounded = fixtures::fixture_bounded();
  Fixture infdim = fixtures::fixture_infinite_dim();
  Fixture noncomplete = fixtures::fixture_noncomplete();
  for (int trial = 0; trial < 1000; ++trial) {
    double x = 4.0 * uniform01(rng) - 2.0;
    Point p = Point::scalar(x);
    CHECK((*bounded.primary().simple)(p) == bounded.primary().eval(p));
    CHECK((*infdim.primary().simple)(p) == infdim.primary().eval(p));
    CHECK((*noncomplete.primary().simple)(p) == noncomplete.primary().eval(p));
  }
}

TEST_CASE("infdim values are basis vectors on the harmonic intervals") {
  Fixture fx = fixtures::fixture_infinite_dim();
  CHECK(fx.primary().eval(Point::scalar(0.6)) == Point::basis(1));
  CHECK(fx.primary().eval(Point::scalar(-1.0)) == Point());
  CHECK(fx.primary().eval(Point::scalar(1.5)) == Point());
  CHECK(fx.primary().eval(Point::scalar(0.3)) == Point::basis(3));
}
