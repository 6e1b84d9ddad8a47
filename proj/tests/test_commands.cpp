#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcp/commands.hpp"

using namespace bcp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string log;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "bcp_command_tests" / name;
  fs::remove_all(p);
  return p;
}

Run run(const std::string& cmd, const std::string& config, const fs::path& out, int workers = 1) {
  RunOptions opt;
  opt.out_dir = out;
  opt.workers = workers;
  std::ostringstream log, err;
  const int code = run_command(cmd, Json::parse(config), opt, log, err);
  return {code, log.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("solve with zero data writes a zero solution") {
  const fs::path out = scratch("zero");
  const Run r = run("solve", R"({"problem":{"temporal_modes":2,"spatial_modes":[3]}})", out);
  CHECK(r.code == kExitOk);
  const auto rows = read_csv(out / "solution.csv");
  REQUIRE(rows.size() == 1 + 5 * 3);
  CHECK(rows[0] == std::vector<std::string>{"m", "n1", "re", "im"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) == 0.0);
    CHECK(std::stod(rows[i][3]) == 0.0);
  }
  const Json rep = read_json(out / "report.json");
  CHECK(rep["report"]["verdict"] == "converged");
  CHECK(read_csv(out / "residuals.csv")[0] ==
        std::vector<std::string>{"iteration", "residual", "ratio"});
  CHECK_FALSE(fs::exists(out / "lift.csv"));
}

TEST_CASE("solve exit codes") {
  const fs::path out = scratch("codes");
  CHECK(run("solve", R"({"problem":{"forcing":[{"amplitude":1e-3,"m":1,"n":[1]}]}})", out).code ==
        kExitOk);
  CHECK(read_json(out / "report.json")["report"]["iterations"].get<int>() > 1);

  const Run bad = run("solve", R"({"problem":{"params":{"a":"x"}},"foo":1})", out);
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("problem.params.a") != std::string::npos);
  CHECK(bad.err.find("foo: unknown field") != std::string::npos);
  CHECK(run("solve", R"({})", out).code == kExitConfig);

  const Run incompatible = run(
      "solve",
      R"({"problem":{"domain":{"bc":"neumann"},"forcing":[{"amplitude":1e-3,"m":0,"n":[0]}]}})",
      out);
  CHECK(incompatible.code == kExitIncompatible);

  const Run diverged =
      run("solve", R"({"problem":{"temporal_modes":4,"spatial_modes":[4],
                        "forcing":[{"amplitude":50,"m":1,"n":[1]}]}})",
          out);
  CHECK(diverged.code == kExitDiverged);
  CHECK(read_json(out / "report.json")["report"]["verdict"] == "diverged");
  CHECK(run("nonsense", "{}", out).code == kExitConfig);
}

TEST_CASE("compatible Neumann data solve with a zero-mean steady part") {
  const fs::path out = scratch("neumann");
  const double h0 = 1e-3;
  const double f0 = -2.0 * h0 / 3.141592653589793;
  Json j = Json::parse(R"({"problem":{"domain":{"bc":"neumann"},"temporal_modes":2,
      "spatial_modes":[6],"forcing":[{"amplitude":0,"m":0,"n":[0]}],
      "boundary":{"h":{"left":[{"amplitude":1e-3,"m":0}],"right":[{"amplitude":1e-3,"m":0}]}}}})");
  j["problem"]["forcing"][0]["amplitude"] = f0;
  RunOptions opt;
  opt.out_dir = out;
  std::ostringstream log, err;
  REQUIRE(run_command("solve", j, opt, log, err) == kExitOk);
  const Json rep = read_json(out / "report.json");
  CHECK(std::abs(rep["steady_mean"].get<double>()) < 1e-15);
  CHECK(fs::exists(out / "lift.csv"));
  CHECK(read_csv(out / "lift.csv")[0] == std::vector<std::string>{"m", "power", "re", "im"});
}

TEST_CASE("mms recovers in-band fields and flags uncovered ones") {
  const fs::path out = scratch("mms");
  const std::string base = R"({"manufactured":[{"amplitude":1e-4,"m":1,"n":[1]},
                                                {"amplitude":5e-5,"m":2,"phase":0.3,"n":[3]}],
      "fixed_point":{"tolerance":1e-14,"max_iterations":200},)";
  const Run r = run("mms",
                    base + R"("problem":{},"resolutions":[{"temporal_modes":1,"spatial_modes":[2]},
                      {"temporal_modes":4,"spatial_modes":[4]},{"temporal_modes":8,"spatial_modes":[8]}]})",
                    out, 2);
  REQUIRE(r.code == kExitOk);
  const auto rows = read_csv(out / "mms_errors.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"M", "N1", "covers_band", "verdict", "iterations",
                                            "ps_error", "l2_error"});
  CHECK(rows[1][2] == "0");
  // the truncated resolution misses the second mode, a large relative share
  CHECK(std::stod(rows[1][5]) > 0.1);
  for (int i : {2, 3}) {
    CHECK(rows[i][2] == "1");
    CHECK(std::stod(rows[i][5]) < 1e-10);
    CHECK(std::stod(rows[i][6]) < 1e-10);
  }

  const Run zero = run("mms",
                       R"({"problem":{},"manufactured":[],
                           "resolutions":[{"temporal_modes":2,"spatial_modes":[2]}]})",
                       out);
  CHECK(zero.code == kExitOk);
  CHECK(std::stod(read_csv(out / "mms_errors.csv")[1][5]) == 0.0);

  const Run uncovered =
      run("mms",
          R"({"problem":{},"manufactured":[{"amplitude":1e-4,"m":1,"n":[9]}],
              "resolutions":[{"temporal_modes":2,"spatial_modes":[4]}]})",
          out);
  CHECK(uncovered.code == kExitConfig);
  CHECK(uncovered.err.find("manufactured[0]") != std::string::npos);
  CHECK(run("mms", R"({"problem":{},"manufactured":[],"resolutions":[]})", out).code ==
        kExitConfig);
}

TEST_CASE("resonance sweep scales inversely with dissipation") {
  const fs::path out = scratch("resonance");
  const Run r = run("resonance-sweep",
                    R"({"problem":{"temporal_modes":2,"spatial_modes":[3]},
                        "tuned_mode":{"m":1,"n":[2]},"deltas":[1e-1,1e-2,1e-3,1e-4],
                        "frequency_sweep":{"delta":0.2,"omega_factors":[0.8,1.0,1.2]}})",
                    out, 3);
  REQUIRE(r.code == kExitOk);
  const Json summary = read_json(out / "resonance_summary.json");
  // omega tuned so that m omega = c sqrt(lambda_2) = 2
  CHECK(summary["resonant_omega"].get<double>() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(summary["slope"].get<double>() + 1.0) < 0.1);
  CHECK(summary["frequency_sweep"]["bounded"] == true);
  const auto rows = read_csv(out / "resonance_sweep.csv");
  REQUIRE(rows.size() == 5);
  // at resonance the response to unit forcing is 1/|sigma(1, lambda)|
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d = std::stod(rows[i][0]);
    const double mu = 2.0, lambda = 4.0;
    const double heat = std::hypot(d * lambda, mu);
    const double kuz = d * mu * lambda;
    CHECK(std::stod(rows[i][2]) == doctest::Approx(1.0 / (heat * kuz)).epsilon(1e-12));
  }
  CHECK(read_csv(out / "frequency_sweep.csv").size() == 4);

  CHECK(run("resonance-sweep", R"({"problem":{},"tuned_mode":{"m":1,"n":[1]},"deltas":[]})", out)
            .code == kExitOk);
  CHECK(slurp(out / "resonance_sweep.csv") == "delta,min_abs_symbol,response_amplitude\n");
  CHECK(run("resonance-sweep",
            R"({"problem":{"domain":{"bc":"neumann"}},"tuned_mode":{"m":1,"n":[0]},"deltas":[1]})",
            out)
            .code == kExitConfig);
}

TEST_CASE("oracle compare and its failure codes") {
  const fs::path out = scratch("oracle");
  const Run zero = run("oracle-compare",
                       R"({"problem":{"temporal_modes":2,"spatial_modes":[3]},
                           "oracle":{"steps_per_period":32}})",
                       out);
  REQUIRE(zero.code == kExitOk);
  CHECK(read_json(out / "oracle_compare.json")["comparison"]["absolute_l2"] == 0.0);
  CHECK(fs::exists(out / "trajectory_oracle.csv"));
  CHECK(fs::exists(out / "trajectory_harmonic.csv"));

  const Run small = run("oracle-compare",
                        R"({"problem":{"temporal_modes":6,"spatial_modes":[6],
                            "forcing":[{"amplitude":1e-3,"m":1,"n":[1]}]},
                            "oracle":{"steps_per_period":512}})",
                        out);
  REQUIRE(small.code == kExitOk);
  CHECK(read_json(out / "oracle_compare.json")["comparison"]["relative_l2"].get<double>() < 1e-4);

  const Run tight = run("oracle-compare",
                        R"({"problem":{"temporal_modes":2,"spatial_modes":[3],
                            "forcing":[{"amplitude":1e-3,"m":1,"n":[1]}]},
                            "oracle":{"steps_per_period":16,"max_periods":1}})",
                        out);
  CHECK(tight.code == kExitNoAttractor);
  CHECK(read_json(out / "oracle_compare.json")["attractor"]["found"] == false);

  const Run huge = run("oracle-compare",
                       R"({"problem":{"temporal_modes":4,"spatial_modes":[4],
                           "forcing":[{"amplitude":500,"m":1,"n":[1]}]}})",
                       out);
  CHECK((huge.code == kExitDiverged || huge.code == kExitNoAttractor));

  const Run inhom = run("oracle-compare",
                        R"({"problem":{"boundary":{"g":{"left":[{"amplitude":1,"m":1}]}}}})", out);
  CHECK(inhom.code == kExitConfig);
}

TEST_CASE("epsilon scan brackets the threshold") {
  const fs::path out = scratch("scan");
  const std::string cfg = R"({"problem":{"temporal_modes":4,"spatial_modes":[4],
      "forcing":[{"amplitude":1,"m":1,"n":[1]}]},
      "amplitudes":[1e-3,1e-1,1,10,100],"bisection_steps":3})";
  REQUIRE(run("epsilon-scan", cfg, out, 3).code == kExitOk);
  const Json j = read_json(out / "epsilon_scan.json");
  const double lo = j["scan"]["largest_converged"].get<double>();
  const double hi = j["scan"]["smallest_diverged"].get<double>();
  CHECK(lo < hi);
  CHECK(j["scan"]["entries"].size() == 8);
  CHECK(read_csv(out / "epsilon_scan.csv").size() == 9);
  CHECK(run("epsilon-scan", R"({"problem":{},"amplitudes":[1,0.5]})", out).code == kExitConfig);
}

TEST_CASE("outputs are independent of the worker count") {
  const std::string cfg = R"({"problem":{"temporal_modes":3,"spatial_modes":[3],
      "forcing":[{"amplitude":1,"m":1,"n":[1]}]},"amplitudes":[1e-2,1,10,100],"bisection_steps":2})";
  const fs::path a = scratch("det1"), b = scratch("det4");
  REQUIRE(run("epsilon-scan", cfg, a, 1).code == kExitOk);
  REQUIRE(run("epsilon-scan", cfg, b, 4).code == kExitOk);
  CHECK(slurp(a / "epsilon_scan.json") == slurp(b / "epsilon_scan.json"));
  CHECK(slurp(a / "epsilon_scan.csv") == slurp(b / "epsilon_scan.csv"));

  const std::string oc = R"({"problem":{"temporal_modes":2,"spatial_modes":[3],
      "forcing":[{"amplitude":1e-3,"m":1,"n":[1]}]},
      "oracle":{"steps_per_period":32,"initial_amplitude":1e-3,"seed":5}})";
  REQUIRE(run("oracle-compare", oc, a).code == kExitOk);
  REQUIRE(run("oracle-compare", oc, b).code == kExitOk);
  CHECK(slurp(a / "trajectory_oracle.csv") == slurp(b / "trajectory_oracle.csv"));
}

TEST_CASE("invertibility report") {
  const fs::path out = scratch("inv");
  REQUIRE(run("invertibility", R"({"problem":{"temporal_modes":2,"spatial_modes":[2]}})", out)
              .code == kExitOk);
  const Json j = read_json(out / "invertibility.json");
  // defaults: |sigma(1, 1)| = |(-1 - i)(i)| = sqrt 2 is the minimum
  CHECK(j["min_abs_symbol"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(read_csv(out / "symbol_table.csv").size() == 1 + 2 * 2);
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 10, 100}, {5, 0.5, 0.05}) == doctest::Approx(-1.0));
  CHECK(std::isnan(loglog_slope({1}, {1})));
}
