#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/run.hpp"
#include "usco/fixtures.hpp"
#include "usco/simplefn_io.hpp"

using namespace usco;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("usco_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("point text round-trip") {
  Point p = Point::sparse({{1, 0.5}, {7, -2.25}});
  CHECK(point_from_text(point_to_text(p)) == p);
  CHECK(point_from_text("()") == Point());
  CHECK(point_to_text(Point()) == "()");
}

TEST_CASE("simple function text round-trip on the step fixture") {
  SimpleFunction step = *fixtures::fixture_bounded().primary().simple;
  std::stringstream buffer;
  write_simplefn(buffer, step, 2, 64);

  SimpleFunction back = read_simplefn(buffer);
  REQUIRE(back.piece_count());
  CHECK(*back.piece_count() == 2);
  CHECK(back.anchor() == step.anchor());
  // Stages freeze at the stored horizon, so stay on the grid they cover:
  // positive points below 1/64 are outside the deserialized partition.
  for (int i = 0; i <= 200; ++i) {
    double x = -2.0 + 4.0 * i / 200.0;
    if (x > 0.0 && x < 1.0 / 64.0) continue;
    CHECK(back(Point::scalar(x)) == step(Point::scalar(x)));
  }
  CHECK_THROWS_AS(back(Point::scalar(1.0 / 128.0)), std::domain_error);
}

TEST_CASE("serialization truncates countable partitions at the piece limit") {
  SimpleFunction infdim = *fixtures::fixture_infinite_dim().primary().simple;
  std::stringstream buffer;
  write_simplefn(buffer, infdim, 12, 16);
  SimpleFunction back = read_simplefn(buffer);
  CHECK(*back.piece_count() == 12);
  // Values agree on the stored pieces.
  CHECK(back(Point::scalar(0.6)) == Point::basis(1));
  CHECK(back(Point::scalar(0.3)) == Point::basis(3));
}

TEST_CASE("malformed streams are rejected") {
  std::stringstream a("nonsense 3");
  CHECK_THROWS_AS(read_simplefn(a), std::invalid_argument);
  std::stringstream b("simplefn 2\n");
  CHECK_THROWS_AS(read_simplefn(b), std::invalid_argument);
}

TEST_CASE("demo matrix matches on a single fixture") {
  cli::RunConfig config;
  config.command = "demo";
  config.fixture = "reciprocal";
  CHECK(cli::run_command(config) == 0);
}

TEST_CASE("check exit codes follow the verdicts") {
  fs::path dir = temp_dir("check");
  cli::RunConfig config;
  config.command = "check";
  config.out_dir = dir.string();

  config.fixture = "bounded";
  CHECK(cli::run_command(config) == 0);
  config.fixture = "infdim";
  CHECK(cli::run_command(config) == 1);
  config.fixture = "noncomplete";
  config.member = "f";
  CHECK(cli::run_command(config) == 1);
  config.member = "f3";
  CHECK(cli::run_command(config) == 0);
  config.fixture = "nonexistent";
  config.member.clear();
  CHECK(cli::run_command(config) == 3);
}

TEST_CASE("construct writes byte-identical files for identical configs") {
  fs::path dir_a = temp_dir("construct_a");
  fs::path dir_b = temp_dir("construct_b");
  cli::RunConfig config;
  config.command = "construct";
  config.fixture = "bounded";
  config.horizon = 8;
  config.grid = 0.05;
  config.probes = 6;
  config.prefix = 80;

  config.out_dir = dir_a.string();
  REQUIRE(cli::run_command(config) == 0);
  config.out_dir = dir_b.string();
  REQUIRE(cli::run_command(config) == 0);

  CHECK(slurp(dir_a / "construct_bounded_f.csv") == slurp(dir_b / "construct_bounded_f.csv"));
  CHECK(slurp(dir_a / "construct_bounded_f.json") == slurp(dir_b / "construct_bounded_f.json"));
  CHECK(slurp(dir_a / "construct_bounded_f.csv").substr(0, 31) ==
        "n,x,error,gamma,inG,coefficient");
}

TEST_CASE("construct refuses the reciprocal fixture") {
  fs::path dir = temp_dir("construct_refuse");
  cli::RunConfig config;
  config.command = "construct";
  config.fixture = "reciprocal";
  config.out_dir = dir.string();
  CHECK(cli::run_command(config) == 1);
  std::string summary = slurp(dir / "construct_reciprocal_f.json");
  CHECK(summary.find("refused") != std::string::npos);
  CHECK(summary.find("Falsified") != std::string::npos);
}

TEST_CASE("construct accepts a serialized input file") {
  fs::path dir = temp_dir("construct_input");
  fs::path input = dir / "step.simple";
  {
    std::ofstream os(input);
    write_simplefn(os, *fixtures::fixture_bounded().primary().simple, 2, 16);
  }
  cli::RunConfig config;
  config.command = "construct";
  config.input_path = input.string();
  config.horizon = 8;
  config.grid = 0.1;
  config.probes = 4;
  config.prefix = 60;
  config.out_dir = dir.string();
  CHECK(cli::run_command(config) == 0);
  CHECK(fs::exists(dir / "construct_step.csv"));
  CHECK(fs::exists(dir / "construct_step.json"));
}

TEST_CASE("converge on the synthetic constant scheme reports full compliance") {
  fs::path dir = temp_dir("converge_const");
  cli::RunConfig config;
  config.command = "converge";
  config.scheme = "constant";
  config.horizon = 16;
  config.grid = 0.25;
  config.out_dir = dir.string();
  CHECK(cli::run_command(config) == 0);
  std::string summary = slurp(dir / "converge_summary.json");
  CHECK(summary.find("\"bound_compliance\": 1.0") != std::string::npos);
}

TEST_CASE("converge on the noncomplete family reports the falsified limit") {
  fs::path dir = temp_dir("converge_nc");
  cli::RunConfig config;
  config.command = "converge";
  config.fixture = "noncomplete";
  config.horizon = 12;
  config.grid = 0.05;
  config.out_dir = dir.string();
  CHECK(cli::run_command(config) == 0);
  std::string summary = slurp(dir / "converge_summary.json");
  CHECK(summary.find("Falsified") != std::string::npos);
  CHECK(fs::exists(dir / "converge_table.csv"));
  CHECK(fs::exists(dir / "converge_bounds.csv"));
}

TEST_CASE("converge through the full pipeline is fully compliant at horizon 64") {
  fs::path dir = temp_dir("converge_bounded");
  cli::RunConfig config;
  config.command = "converge";
  config.fixture = "bounded";
  config.horizon = 64;
  config.grid = 0.05;
  config.out_dir = dir.string();
  CHECK(cli::run_command(config) == 0);
  std::string summary = slurp(dir / "converge_summary.json");
  CHECK(summary.find("\"bound_compliance\": 1.0") != std::string::npos);
}

TEST_CASE("demo over every fixture matches all expectations") {
  cli::RunConfig config;
  config.command = "demo";
  config.all = true;
  CHECK(cli::run_command(config) == 0);
}

TEST_CASE("bad converge config returns 3") {
  cli::RunConfig config;
  config.command = "converge";
  config.fixture = "reciprocal";
  CHECK(cli::run_command(config) == 3);
}
