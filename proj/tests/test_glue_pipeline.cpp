#include <doctest.h>

#include <cmath>

#include "usco/fixtures.hpp"
#include "usco/glue.hpp"
#include "usco/pipeline.hpp"
#include "usco/setvalued.hpp"

using namespace usco;

namespace {

FunctionSequence constant_inner(double value, int horizon) {
  FunctionSequence seq;
  seq.horizon = horizon;
  seq.at = [value](int) {
    return [value](const Point&) { return Point::scalar(value); };
  };
  return seq;
}

GluingScheme constant_scheme(int levels) {
  GluingScheme scheme;
  for (int m = 1; m <= levels; ++m) {
    double v = std::ldexp(1.0, -m - 1);
    scheme.levels.push_back(GluingLevel{constant_inner(v, levels), v});
  }
  scheme.limit = [](const Point&) { return Point(); };
  return scheme;
}

}  // namespace

TEST_CASE("constant scheme glues without any clamping") {
  DiagonalGlue glue = diagonal_glue(constant_scheme(16));
  CHECK(glue.horizon() == 16);
  for (int n = 1; n <= 16; ++n) {
    GlueEval eval = glue.h_traced(n, Point::scalar(0.3));
    CHECK(eval.value == Point::scalar(std::ldexp(1.0, -n - 1)));
    for (const GlueStep& step : eval.steps) {
      CHECK_FALSE(step.clamped);
      CHECK(step.step_norm <= step.threshold);
    }
  }
  // h_n tends to the zero limit.
  CHECK(glue.h(16, Point()).norm() < 1e-4);
}

TEST_CASE("clamp branch moves by exactly the threshold") {
  // Level 1 sits at 0, level 2 at 5: the m=1 move is capped at 2^0 * 2 / 2 = 1.
  GluingScheme scheme;
  scheme.levels.push_back(GluingLevel{constant_inner(0.0, 4), 0.25});
  scheme.levels.push_back(GluingLevel{constant_inner(5.0, 4), 0.2});
  // Reindexed bounds: 0.25 < 2^-1 and 0.2 < 2^-2.
  DiagonalGlue glue = diagonal_glue(std::move(scheme));
  REQUIRE(glue.horizon() == 2);
  GlueEval eval = glue.h_traced(2, Point());
  REQUIRE(eval.steps.size() == 1);
  CHECK(eval.steps[0].clamped);
  CHECK(eval.steps[0].threshold == 1.0);
  CHECK(eval.value == Point::scalar(1.0));  // 0 + 1 * (5 - 0)/|5 - 0|
}

TEST_CASE("glue steps never exceed their thresholds") {
  GluingScheme scheme;
  // Levels converging to sin with synthetic wobble, to exercise both branches.
  for (int m = 1; m <= 10; ++m) {
    double amp = std::ldexp(1.0, -m - 1);
    FunctionSequence inner;
    inner.horizon = 10;
    inner.at = [amp](int n) {
      return [amp, n](const Point& x) {
        return Point::scalar(std::sin(x.coord(0)) + amp * std::cos(n * x.coord(0)));
      };
    };
    scheme.levels.push_back(GluingLevel{std::move(inner), amp * 1.5});
  }
  DiagonalGlue glue = diagonal_glue(std::move(scheme));
  for (int n = 1; n <= glue.horizon(); ++n) {
    for (int i = 0; i <= 50; ++i) {
      GlueEval eval = glue.h_traced(n, Point::scalar(-3.0 + 6.0 * i / 50.0));
      for (const GlueStep& step : eval.steps)
        CHECK(step.step_norm <= step.threshold * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("reindexing drops levels with slack bounds") {
  GluingScheme scheme;
  scheme.levels.push_back(GluingLevel{constant_inner(0.0, 4), 10.0});   // never qualifies
  scheme.levels.push_back(GluingLevel{constant_inner(0.1, 4), 0.4});    // level 1: < 0.5
  scheme.levels.push_back(GluingLevel{constant_inner(0.05, 4), 0.3});   // skipped for level 2
  scheme.levels.push_back(GluingLevel{constant_inner(0.02, 4), 0.2});   // level 2: < 0.25
  DiagonalGlue glue = diagonal_glue(std::move(scheme));
  CHECK(glue.horizon() == 2);
  CHECK(glue.selected_levels() == std::vector<int>{1, 3});
}

TEST_CASE("bound discipline failure is an error") {
  GluingScheme scheme;
  scheme.levels.push_back(GluingLevel{constant_inner(0.0, 2), 2.0});
  scheme.levels.push_back(GluingLevel{constant_inner(0.0, 2), 1.5});
  CHECK_THROWS_AS(diagonal_glue(std::move(scheme)), std::invalid_argument);
}

TEST_CASE("pipeline on the step fixture converges with a certified sequence") {
  fixtures::Fixture fx = fixtures::fixture_bounded();
  SimpleFunction step = *fx.primary().simple;

  BaireOneInput input;
  input.eval = fx.primary().eval;
  input.scheme.simple_approximant = [step](double) { return step; };
  ProbePlan plan = fx.plan;
  plan.sequences = 8;
  plan.prefix = 100;
  input.usco_verdict = check_usco_bounded(input.eval, plan, fx.codomain);
  REQUIRE(input.usco_verdict->certified());

  PipelineConfig config;
  config.horizon = 16;
  config.region = fx.region;
  config.plan = plan;
  config.codomain = fx.codomain;
  PipelineResult result = approximate_pipeline(input, config);

  CHECK(result.sequence_verdict.outcome == Outcome::Certified);
  CHECK(result.glue.horizon() == 16);
  for (double x : {-1.5, -0.4, 0.0, 0.6, 1.2}) {
    Point p = Point::scalar(x);
    double err = distance(result.glue.h(16, p), input.eval(p));
    CHECK(err == 0.0);  // eventual exactness reached well before n = 16
  }
}

TEST_CASE("pipeline on sin converges on the grid") {
  BaireOneInput input;
  input.eval = [](const Point& x) { return Point::scalar(std::sin(x.coord(0))); };
  input.scheme.continuous = ContinuousApprox{input.eval, ContinuityModulus::lipschitz(1.0),
                                             Box::segment(0.0, 10.0)};
  Verdict hyp;
  hyp.outcome = Outcome::Certified;
  hyp.certificate = BoundCertificate{1.0, "sampled-sup"};
  input.usco_verdict = hyp;

  PipelineConfig config;
  config.horizon = 8;
  config.region = Box::segment(0.0, 10.0);
  config.plan = ProbePlan::standard(config.region, {Point::scalar(5.0)});
  config.plan.sequences = 4;
  config.plan.prefix = 60;
  config.run_sequence_check = false;
  PipelineResult result = approximate_pipeline(input, config);

  double worst_late = 0.0;
  for (int i = 0; i <= 100; ++i) {
    Point x = Point::scalar(10.0 * i / 100.0);
    worst_late = std::max(worst_late, distance(result.glue.h(8, x), input.eval(x)));
  }
  CHECK(worst_late < 0.02);  // 2^{-8-1} plus gluing slack
}

TEST_CASE("pipeline refuses non-certified input") {
  fixtures::Fixture fx = fixtures::fixture_reciprocal();
  BaireOneInput input;
  input.eval = fx.primary().eval;
  input.usco_verdict = check_usco_bounded(input.eval, fx.plan, fx.codomain);
  REQUIRE(input.usco_verdict->falsified());

  PipelineConfig config;
  config.region = fx.region;
  config.plan = fx.plan;
  CHECK_THROWS_AS(approximate_pipeline(input, config), std::invalid_argument);
}

TEST_CASE("pipeline refuses a non-Euclidean value space") {
  fixtures::Fixture fx = fixtures::fixture_noncomplete();
  BaireOneInput input;
  input.eval = fx.primary().eval;
  Verdict hyp;
  hyp.outcome = Outcome::Certified;
  hyp.certificate = BoundCertificate{1.0, "sampled-sup"};
  input.usco_verdict = hyp;

  PipelineConfig config;
  config.region = fx.region;
  config.plan = fx.plan;
  config.codomain = fx.codomain;  // subspace of the sequence space
  CHECK_THROWS_AS(approximate_pipeline(input, config), std::invalid_argument);
}

TEST_CASE("diagonal gluing of the noncomplete family converges while escaping every support") {
  // The pointwise-convergence half of the uniform-limit argument needs no
  // completeness: h_n still tends to f. Any finite prefix of the glued
  // family is bounded; the failure of the limit shows as value support
  // growing without bound along the diagonal.
  fixtures::Fixture fx = fixtures::fixture_noncomplete();
  GluingScheme scheme;
  const int horizon = 24;
  for (int m = 1; m <= horizon; ++m) {
    SequenceOptions opts;
    opts.horizon = horizon;
    scheme.levels.push_back(GluingLevel{continuous_sequence(fixtures::noncomplete_fn(m), opts),
                                        std::ldexp(1.0, -m) / std::sqrt(3.0)});
  }
  scheme.limit = fx.primary().eval;
  DiagonalGlue glue = diagonal_glue(std::move(scheme));

  for (double x : {0.7, 0.4, 0.15}) {
    Point p = Point::scalar(x);
    double err = distance(glue.h(horizon, p), fx.primary().eval(p));
    CHECK(err < std::ldexp(1.0, -10));
  }

  // Diagonal escape: h_n deep in the tail piece takes the level-n value,
  // whose support index reaches n. Every constructed value still lies in the
  // convex value set.
  for (int n : {8, 16, 24}) {
    Point x = Point::scalar(1.0 / (4.0 * n));
    Point v = glue.h(n, x);
    CHECK(v.max_index() >= n - 1);
    CHECK(fx.codomain.contains(v));
  }

  // The uniform limit itself is falsified by the membership oracle.
  Verdict v = check_usco_bounded(fx.primary().eval, fx.plan, fx.codomain);
  CHECK(v.outcome == Outcome::Falsified);
}
