#include "usco/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "usco/setvalued.hpp"

namespace usco {

PipelineResult approximate_pipeline(const BaireOneInput& f, const PipelineConfig& config) {
  if (config.codomain.kind() != SpaceKind::Euclidean)
    throw std::invalid_argument(
        "approximate_pipeline: value space must be a convex subset of a Euclidean space");
  if (!f.usco_verdict || !f.usco_verdict->certified())
    throw std::invalid_argument(
        "approximate_pipeline: the function must carry a Certified usco-boundedness verdict");
  if (config.horizon < 1) throw std::invalid_argument("approximate_pipeline: horizon must be >= 1");

  GluingScheme scheme;
  std::vector<double> bounds;
  for (int m = 1; m <= config.horizon; ++m) {
    const double eps_m = std::ldexp(1.0, -m - 1);  // strictly below 2^{-m}
    SimpleApproxResult approx = simple_from_baire_one(f.eval, f.scheme, f.usco_verdict, eps_m,
                                                      config.region, config.codomain);
    SequenceOptions opts;
    opts.horizon = config.horizon;
    opts.hypothesis = approx.verdict;
    GluingLevel level{continuous_sequence(approx.fn, opts), eps_m};
    scheme.levels.push_back(std::move(level));
    bounds.push_back(eps_m);
  }
  scheme.limit = f.eval;

  DiagonalGlue glue = diagonal_glue(std::move(scheme));
  FunctionSequence h = glue.as_sequence();

  Verdict sequence_verdict;
  if (config.run_sequence_check) {
    sequence_verdict = check_sequence_usco_bounded(h, config.plan, config.codomain);
  } else {
    sequence_verdict.outcome = Outcome::Inconclusive;
    sequence_verdict.resolution.notes.push_back("sequence check skipped by configuration");
  }
  h.usco_verdict = sequence_verdict;

  return PipelineResult{std::move(glue), std::move(h), std::move(bounds),
                        std::move(sequence_verdict)};
}

}  // namespace usco
