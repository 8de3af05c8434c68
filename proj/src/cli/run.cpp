#include "cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "usco/blend.hpp"
#include "usco/fixtures.hpp"
#include "usco/glue.hpp"
#include "usco/setvalued.hpp"
#include "usco/simplefn_io.hpp"

namespace usco {
namespace cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += "\"";
  return quoted;
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Certified: return 0;
    case Outcome::Falsified: return 1;
    case Outcome::Inconclusive: return 2;
  }
  return 2;
}

ProbePlan plan_with_overrides(ProbePlan plan, const RunConfig& config) {
  if (config.probes > 0) plan.sequences = std::max(config.probes, static_cast<int>(plan.supplied.size()));
  if (config.prefix > 0) plan.prefix = config.prefix;
  if (!config.eps_schedule.empty()) plan.eps_schedule = config.eps_schedule;
  if (config.seed != 0) plan.seed = config.seed;
  return plan;
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

json verdict_json(const Verdict& v) { return json::parse(to_json(v)); }

struct ConstructInput {
  std::optional<SimpleFunction> fn;  // absent when the input has no simple structure
  PointFn eval;
  Box region;
  ProbePlan plan;
  Space codomain;
  std::string label;
};

std::optional<ConstructInput> load_construct_input(const RunConfig& config, std::string* error) {
  if (!config.input_path.empty()) {
    std::ifstream is(config.input_path);
    if (!is) {
      *error = "cannot open " + config.input_path;
      return std::nullopt;
    }
    SimpleFunction fn = read_simplefn(is);
    // Working region: the bounded extent of the stored top stages.
    double lo = kInf, hi = -kInf;
    if (fn.piece_count()) {
      for (std::int64_t g = 0; g < *fn.piece_count(); ++g) {
        const ClosedSet top = fn.piece(g).stage(1 << 20);
        const std::vector<Box>* boxes = top.boxes();
        if (boxes == nullptr) continue;
        for (const Box& b : *boxes) {
          const Interval iv = b.sides()[0];
          if (std::isfinite(iv.lo)) lo = std::min(lo, iv.lo);
          if (std::isfinite(iv.hi)) hi = std::max(hi, iv.hi);
        }
      }
    }
    if (!(lo < hi)) {
      lo = -1.0;
      hi = 1.0;
    }
    Box region = Box::segment(lo, hi);
    ProbePlan plan = ProbePlan::standard(region, {region.center()});
    PointFn eval = [fn](const Point& x) { return fn(x); };
    return ConstructInput{std::optional<SimpleFunction>(fn), eval, region,
                          plan_with_overrides(plan, config), Space::euclidean(1),
                          fs::path(config.input_path).stem().string()};
  }

  fixtures::Fixture fx = fixtures::fixture_by_name(config.fixture);
  const fixtures::FixtureFunction& fn =
      config.member.empty() ? fx.primary() : fx.function(config.member);
  return ConstructInput{fn.simple, fn.eval, fx.region, plan_with_overrides(fx.plan, config),
                        fx.codomain, fx.name + "_" + fn.name};
}

int cmd_check(const RunConfig& config) {
  fixtures::Fixture fx = fixtures::fixture_by_name(config.fixture);
  const fixtures::FixtureFunction& fn =
      config.member.empty() ? fx.primary() : fx.function(config.member);
  ProbePlan plan = plan_with_overrides(fx.plan, config);
  Verdict v = check_usco_bounded(fn.eval, plan, fx.codomain);
  fs::path out = fs::path(config.out_dir) / ("check_" + fx.name + "_" + fn.name + ".json");
  write_text(out, to_json(v) + "\n");
  std::cout << fx.name << "/" << fn.name << ": " << to_string(v.outcome) << " -> " << out.string()
            << "\n";
  return exit_code(v.outcome);
}

int cmd_construct(const RunConfig& config) {
  std::string error;
  std::optional<ConstructInput> input = load_construct_input(config, &error);
  if (!input) {
    std::cerr << "construct: " << error << "\n";
    return 3;
  }

  // Hypothesis check first: the construction needs a usco-bounded input.
  Verdict hypothesis = check_usco_bounded(input->eval, input->plan, input->codomain);
  fs::path summary_path = fs::path(config.out_dir) / ("construct_" + input->label + ".json");
  if (hypothesis.falsified()) {
    json j;
    j["status"] = "refused";
    j["reason"] = "input function is not usco-bounded";
    j["hypothesis"] = verdict_json(hypothesis);
    write_text(summary_path, j.dump(2) + "\n");
    std::cout << "construct refused: input falsified -> " << summary_path.string() << "\n";
    return 1;
  }
  if (!input->fn) {
    std::cerr << "construct: input carries no simple-function structure\n";
    return 3;
  }
  const SimpleFunction& simple = *input->fn;

  SequenceOptions opts;
  opts.horizon = config.horizon;
  opts.check_plan = input->plan;
  opts.value_space = input->codomain;
  opts.hypothesis = hypothesis;
  FunctionSequence seq = continuous_sequence(simple, opts);

  // Stage table over the grid. Grid points outside the stored partition
  // (possible for deserialized inputs with frozen stages) are skipped and
  // counted.
  std::ostringstream csv;
  csv << "n,x,error,gamma,inG,coefficient\n";
  const Interval iv = input->region.sides()[0];
  const int steps = static_cast<int>(std::floor((iv.hi - iv.lo) / config.grid + 0.5));
  std::vector<double> max_error(static_cast<std::size_t>(config.horizon) + 1, 0.0);
  int uncovered = 0;
  for (int n = 1; n <= config.horizon; ++n) {
    for (int i = 0; i <= steps; ++i) {
      Point x = Point::scalar(iv.lo + config.grid * i);
      double err = 0.0;
      BlendGeometry geo;
      try {
        geo = blend_geometry(simple, n, x);
        Point fn_x = geo.none() ? simple.anchor()
                                : interpolate(simple.anchor(), simple.piece(*geo.gamma).value,
                                              geo.coefficient);
        err = distance(fn_x, input->eval(x));
      } catch (const std::exception&) {
        ++uncovered;
        continue;
      }
      max_error[static_cast<std::size_t>(n)] = std::max(max_error[static_cast<std::size_t>(n)], err);
      csv << n << "," << fmt(x.coord(0)) << "," << fmt(err) << ","
          << csv_field(geo.none() ? "" : simple.piece(*geo.gamma).label) << ","
          << (geo.in_guard ? 1 : 0) << "," << fmt(geo.in_guard ? geo.coefficient : 0.0) << "\n";
    }
  }
  fs::path csv_path = fs::path(config.out_dir) / ("construct_" + input->label + ".csv");
  write_text(csv_path, csv.str());

  json j;
  j["status"] = "ok";
  j["hypothesis"] = verdict_json(hypothesis);
  j["sequence_verdict"] = seq.usco_verdict ? verdict_json(*seq.usco_verdict) : json(nullptr);
  json errs = json::array();
  for (int n = 1; n <= config.horizon; ++n) errs.push_back(max_error[static_cast<std::size_t>(n)]);
  j["max_error_by_stage"] = errs;
  j["uncovered_grid_points"] = uncovered;
  write_text(summary_path, j.dump(2) + "\n");

  std::cout << "construct: wrote " << csv_path.string() << " and " << summary_path.string()
            << "\n";
  return 0;
}

struct ConvergeSetup {
  GluingScheme scheme;
  PointFn limit;
  std::vector<double> grid_points;
  std::optional<Verdict> limit_verdict;
};

std::optional<ConvergeSetup> converge_setup(const RunConfig& config, std::string* error) {
  ConvergeSetup setup;
  if (config.scheme == "constant") {
    for (int m = 1; m <= config.horizon; ++m) {
      FunctionSequence inner;
      inner.horizon = config.horizon;
      const double value = std::ldexp(1.0, -m - 1);
      inner.at = [value](int) {
        return [value](const Point&) { return Point::scalar(value); };
      };
      setup.scheme.levels.push_back(GluingLevel{std::move(inner), value});
    }
    setup.limit = [](const Point&) { return Point(); };
    const int half = static_cast<int>(std::floor(1.0 / config.grid));
    for (int i = -half; i <= half; ++i) setup.grid_points.push_back(i * config.grid);
    return setup;
  }
  if (config.fixture == "noncomplete") {
    fixtures::Fixture fx = fixtures::fixture_noncomplete();
    const int levels = std::min(config.horizon, 40);
    for (int m = 1; m <= levels; ++m) {
      SequenceOptions opts;
      opts.horizon = config.horizon;
      FunctionSequence inner = continuous_sequence(fixtures::noncomplete_fn(m), opts);
      // Exact tail bound: the truncation differs from the limit only past
      // level m, by at most the geometric tail norm.
      double bound = std::ldexp(1.0, -m) / std::sqrt(3.0);
      setup.scheme.levels.push_back(GluingLevel{std::move(inner), bound});
    }
    setup.limit = fx.primary().eval;
    setup.limit_verdict =
        check_usco_bounded(fx.primary().eval, plan_with_overrides(fx.plan, config), fx.codomain);
    const int count = static_cast<int>(std::floor(1.0 / config.grid));
    for (int i = 1; i <= count; ++i) setup.grid_points.push_back(i * config.grid);
    return setup;
  }
  if (config.fixture == "bounded") {
    // Full pipeline on the step fixture: the simple approximant at every
    // level is the function itself, with a zero sup gap recorded as the
    // strict level bound.
    fixtures::Fixture fx = fixtures::fixture_bounded();
    SimpleFunction step = *fx.primary().simple;
    for (int m = 1; m <= config.horizon; ++m) {
      SequenceOptions opts;
      opts.horizon = config.horizon;
      setup.scheme.levels.push_back(
          GluingLevel{continuous_sequence(step, opts), std::ldexp(1.0, -m - 1)});
    }
    setup.limit = fx.primary().eval;
    setup.limit_verdict =
        check_usco_bounded(fx.primary().eval, plan_with_overrides(fx.plan, config), fx.codomain);
    const Interval iv = fx.region.sides()[0];
    const int count = static_cast<int>(std::floor((iv.hi - iv.lo) / config.grid + 0.5));
    for (int i = 0; i <= count; ++i) setup.grid_points.push_back(iv.lo + i * config.grid);
    return setup;
  }
  *error = "converge needs --scheme constant or --fixture noncomplete|bounded";
  return std::nullopt;
}

int cmd_converge(const RunConfig& config) {
  std::string error;
  std::optional<ConvergeSetup> setup = converge_setup(config, &error);
  if (!setup) {
    std::cerr << "converge: " << error << "\n";
    return 3;
  }

  DiagonalGlue glue = diagonal_glue(std::move(setup->scheme));
  const int horizon = std::min(config.horizon, glue.horizon());

  std::ostringstream csv;
  csv << "n,x,error\n";
  std::size_t compliant = 0, checked = 0;
  std::ostringstream report;
  report << "m,bound,points_checked,points_compliant\n";
  std::vector<std::vector<double>> errors(setup->grid_points.size());
  for (std::size_t xi = 0; xi < setup->grid_points.size(); ++xi) {
    Point x = Point::scalar(setup->grid_points[xi]);
    Point fx = setup->limit(x);
    errors[xi].resize(static_cast<std::size_t>(horizon) + 1, 0.0);
    for (int n = 1; n <= horizon; ++n) {
      double err = distance(glue.h(n, x), fx);
      errors[xi][static_cast<std::size_t>(n)] = err;
      csv << n << "," << fmt(setup->grid_points[xi]) << "," << fmt(err) << "\n";
    }
  }
  for (int m = 1; m <= 6; ++m) {
    const double bound = std::ldexp(1.0, -m + 4);
    std::size_t m_checked = 0, m_ok = 0;
    for (const auto& errs : errors) {
      ++m_checked;
      // Eventual bound within the horizon: some suffix stays below it, which
      // holds exactly when the horizon value does.
      if (errs[static_cast<std::size_t>(horizon)] < bound) ++m_ok;
    }
    checked += m_checked;
    compliant += m_ok;
    report << m << "," << fmt(bound) << "," << m_checked << "," << m_ok << "\n";
  }

  fs::path csv_path = fs::path(config.out_dir) / "converge_table.csv";
  fs::path report_path = fs::path(config.out_dir) / "converge_bounds.csv";
  write_text(csv_path, csv.str());
  write_text(report_path, report.str());

  json j;
  j["status"] = "ok";
  j["horizon"] = horizon;
  j["bound_compliance"] = checked == 0 ? 1.0 : static_cast<double>(compliant) / checked;
  j["limit_verdict"] =
      setup->limit_verdict ? verdict_json(*setup->limit_verdict) : json(nullptr);
  fs::path summary = fs::path(config.out_dir) / "converge_summary.json";
  write_text(summary, j.dump(2) + "\n");
  std::cout << "converge: compliance " << (checked == 0 ? 1.0 : double(compliant) / checked)
            << ", wrote " << csv_path.string() << "\n";
  if (setup->limit_verdict && setup->limit_verdict->falsified())
    std::cout << "limit-level verdict: Falsified\n";
  return 0;
}

int cmd_demo(const RunConfig& config) {
  std::vector<std::string> names;
  if (config.all || config.fixture.empty()) {
    names = fixtures::fixture_names();
  } else {
    names.push_back(config.fixture);
  }
  bool all_match = true;
  std::printf("%-12s %-6s %-13s %-13s %s\n", "fixture", "fn", "expected", "actual", "match");
  for (const std::string& name : names) {
    fixtures::Fixture fx = fixtures::fixture_by_name(name);
    for (const fixtures::FixtureFunction& fn : fx.functions) {
      Verdict v = check_usco_bounded(fn.eval, plan_with_overrides(fx.plan, config), fx.codomain);
      bool match = v.outcome == fn.expected;
      all_match = all_match && match;
      std::printf("%-12s %-6s %-13s %-13s %s\n", fx.name.c_str(), fn.name.c_str(),
                  to_string(fn.expected).c_str(), to_string(v.outcome).c_str(),
                  match ? "yes" : "NO");
    }
  }
  return all_match ? 0 : 1;
}

}  // namespace

int run_command(const RunConfig& config) {
  try {
    if (config.command == "check") return cmd_check(config);
    if (config.command == "construct") return cmd_construct(config);
    if (config.command == "converge") return cmd_converge(config);
    if (config.command == "demo") return cmd_demo(config);
    std::cerr << "unknown command: " << config.command << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << config.command << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << config.command << ": " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cli
}  // namespace usco
