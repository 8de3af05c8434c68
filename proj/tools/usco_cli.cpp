#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"usco: certify or falsify usco-boundedness and build pointwise-converging "
               "continuous approximations"};
  app.require_subcommand(1);

  usco::cli::RunConfig config;

  auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--fixture", config.fixture, "fixture name (bounded|reciprocal|infdim|noncomplete)");
    sub->add_option("--horizon", config.horizon, "stage horizon")->check(CLI::PositiveNumber);
    sub->add_option("--grid", config.grid, "grid step for tables")->check(CLI::PositiveNumber);
    sub->add_option("--probes", config.probes, "probe sequence count override");
    sub->add_option("--prefix", config.prefix, "probe prefix length override");
    sub->add_option("--eps-schedule", config.eps_schedule,
                    "strictly decreasing eps schedule override");
    sub->add_option("--seed", config.seed, "probe seed override");
    sub->add_option("--out", config.out_dir, "output directory");
  };

  CLI::App* construct = app.add_subcommand("construct", "build the continuous stage sequence");
  add_common(construct);
  construct->add_option("--input", config.input_path, "serialized simple function (.simple)");
  construct->add_option("--member", config.member, "fixture function name");

  CLI::App* check = app.add_subcommand("check", "run the usco-boundedness checker");
  add_common(check);
  check->add_option("--member", config.member, "fixture function name");

  CLI::App* converge = app.add_subcommand("converge", "diagonal gluing convergence study");
  add_common(converge);
  converge->add_option("--scheme", config.scheme, "synthetic scheme (constant)");

  CLI::App* demo = app.add_subcommand("demo", "expected-vs-actual verdict matrix");
  add_common(demo);
  demo->add_flag("--all", config.all, "run every fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  config.command = app.get_subcommands().front()->get_name();
  return usco::cli::run_command(config);
}
