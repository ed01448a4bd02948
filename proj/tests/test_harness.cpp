#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "geophase/error.hpp"
#include "geophase/harness/config.hpp"
#include "geophase/harness/report.hpp"
#include "geophase/harness/scenario.hpp"
#include "geophase/harness/verify.hpp"

using namespace geophase;
using namespace geophase::harness;
namespace fs = std::filesystem;

namespace {

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::numeric;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / x.size();
    my += std::log(y[i]) / y.size();
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST_CASE("bundled scenarios match the config directory") {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(GEOPHASE_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    CHECK(builtin_scenario(entry.path().stem().string()) == read_json(entry.path()));
  }
  CHECK(files == builtin_scenarios().size());
  CHECK_THROWS_AS(builtin_scenario("nope"), Error);
}

TEST_CASE("config round trip") {
  for (const auto& [name, doc] : builtin_scenarios()) {
    const ScenarioConfig a = parse_config(doc);
    const ScenarioConfig b = parse_config(config_to_json(a));
    CHECK_MESSAGE(a == b, name);
    CHECK(config_to_json(b) == config_to_json(a));
  }
}

TEST_CASE("malformed config lists every offending key") {
  json doc = builtin_scenario("gauge_ladder_ramp");
  doc["modle"] = 1;
  doc["profile"]["rate"] = "fast";
  doc["run"]["stepz"] = 10;
  doc["thermo"].erase("beta");
  const std::string msg = message_of([&] { parse_config(doc); });
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::validation);
  CHECK(msg.find("config.modle") != std::string::npos);
  CHECK(msg.find("profile.rate") != std::string::npos);
  CHECK(msg.find("run.stepz") != std::string::npos);
  CHECK(msg.find("thermo.beta") != std::string::npos);
}

TEST_CASE("config value checks") {
  json doc = builtin_scenario("gauge_ladder_ramp");
  doc["model"]["gauge_rates"] = {1.0, 2.0};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::validation);

  json sweep = builtin_scenario("rate_sweep");
  sweep["sweep"]["values"] = json::array();
  CHECK(code_of([&] { parse_config(sweep); }) == ErrorCode::validation);
  sweep["sweep"]["values"] = {0.1, 0.2};
  sweep["sweep"]["parameter"] = "profile.nothing";
  CHECK(code_of([&] { parse_config(sweep); }) == ErrorCode::validation);

  CHECK(code_of([] { load_config("/nonexistent/geophase.json"); }) == ErrorCode::io);
}

TEST_CASE("with_parameter") {
  const json doc = builtin_scenario("gauge_ladder_ramp");
  CHECK(with_parameter(doc, "thermo.beta", 3.0)["thermo"]["beta"] == 3.0);
  CHECK_THROWS_AS(with_parameter(doc, "thermo.gamma", 3.0), Error);
  CHECK_THROWS_AS(with_parameter(doc, "nothing.beta", 3.0), Error);
}

TEST_CASE("spincone_loop reproduces the holonomy") {
  const ScenarioResult r = run_scenario(parse_config(builtin_scenario("spincone_loop")));
  REQUIRE(r.report.ok());
  REQUIRE(r.report.phase.has_value());
  CHECK(std::fabs(wrap_angle(r.report.phase->geometric_angle_numeric + std::numbers::pi)) < 1e-3);
  CHECK(r.report.trajectory->norm_drift < 1e-9);
}

TEST_CASE("gauge_ladder_ramp trace identity") {
  const ScenarioResult r = run_scenario(parse_config(builtin_scenario("gauge_ladder_ramp")));
  REQUIRE(r.report.ok());
  REQUIRE(r.report.gravity->trace_residual_relative.has_value());
  CHECK(*r.report.gravity->trace_residual_relative < 1e-12);
  CHECK(r.report.exit_code() == 0);
}

TEST_CASE("beta = 1 marks the omega pole without failing the run") {
  json doc = builtin_scenario("gauge_ladder_ramp");
  doc["thermo"]["beta"] = 1.0;
  const ScenarioResult r = run_scenario(parse_config(doc));
  CHECK(r.report.ok());
  CHECK(r.report.gravity->omega_error == ErrorCode::singularity);
  CHECK_FALSE(r.report.gravity->omega.has_value());
}

TEST_CASE("rate sweep residuals do not increase") {
  const auto rows = run_sweep(builtin_scenario("rate_sweep"), 3);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].ok());
    if (i > 0) CHECK(rows[i].phase->residual <= rows[i - 1].phase->residual);
  }
  CHECK(rows.front().phase->residual < 1e-3);
}

TEST_CASE("beta sweep cosmological constant scales as beta^2") {
  const json doc = builtin_scenario("beta_sweep");
  const auto rows = run_sweep(doc, 2);
  std::vector<double> betas, lambdas;
  for (const auto& row : rows) {
    REQUIRE(row.gravity.has_value());
    betas.push_back(*row.sweep_value);
    lambdas.push_back(-row.gravity->cosmological_constant);
  }
  CHECK(std::fabs(slope(betas, lambdas) - 2.0) < 1e-6);
}

TEST_CASE("sweeps are identical for any thread count") {
  const json doc = builtin_scenario("beta_sweep");
  CHECK(reports_to_csv(run_sweep(doc, 1)) == reports_to_csv(run_sweep(doc, 4)));
}

TEST_CASE("report formatting") {
  CHECK(format_double(0.1) == "1.0000000000000001e-01");
  CHECK(format_double(-2.0) == "-2.0000000000000000e+00");
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");

  const ScenarioConfig cfg = parse_config(builtin_scenario("gauge_ladder_sine"));
  const RunReport a = run_scenario(cfg).report;
  const RunReport b = run_scenario(cfg).report;
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  const std::string csv = reports_to_csv({a});
  CHECK(csv.rfind("name,", 0) == 0);
  CHECK(report_csv_header().size() == report_csv_row(a).size());
}

TEST_CASE("write errors name the path") {
  const fs::path blocker = fs::temp_directory_path() / "geophase_blocker_file";
  { std::ofstream(blocker) << "x"; }
  const fs::path target = blocker / "sub" / "out.json";
  CHECK(code_of([&] { write_text_file(target, "{}"); }) == ErrorCode::io);
  CHECK(message_of([&] { write_text_file(target, "{}"); }).find(blocker.string()) !=
        std::string::npos);
  fs::remove(blocker);
}

TEST_CASE("outputs are written") {
  const ScenarioConfig cfg = parse_config(builtin_scenario("gauge_ladder_sine"));
  const ScenarioResult r = run_scenario(cfg);
  const fs::path dir = fs::temp_directory_path() / "geophase_outputs_test";
  fs::remove_all(dir);
  const auto written = write_outputs(r, cfg, dir, {"json", "csv"});
  CHECK(written.size() == 2);
  for (const auto& p : written) CHECK(fs::exists(p));
  const std::string plot = plot_data_csv(r, cfg);
  CHECK(plot.rfind("series,x,y\r\n", 0) == 0);
  CHECK(plot.find("\r\nfidelity,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("perturbed kappa fails the constants criterion") {
  PhysicalConstants k = PhysicalConstants::planck_units();
  CHECK(check_constants(k).passed);
  k.kappa *= 1.0 + 1e-6;
  CHECK_FALSE(check_constants(k).passed);
}

TEST_CASE("decimal_remainder") {
  CHECK(decimal_remainder("2305843009213693953", 97) == 45);
  CHECK(decimal_remainder("10", 3) == 1);
}
