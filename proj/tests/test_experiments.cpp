#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "viag/config.hpp"
#include "viag/experiments.hpp"
#include "viag/run.hpp"
#include "viag/table.hpp"

using namespace viag;
using namespace viag::experiments;
namespace fs = std::filesystem;

namespace {

ScenarioConfig fast_config() {
  ScenarioConfig cfg = ScenarioConfig::defaults();
  cfg.detuning_points = 41;
  cfg.theta_points = 101;
  cfg.x_points = 81;
  cfg.length_points = 17;
  cfg.photon_max = 6;
  return cfg;
}

std::size_t column_index(const ScenarioResult& r, const std::string& name) {
  for (std::size_t c = 0; c < r.columns.size(); ++c) {
    if (r.columns[c] == name) return c;
  }
  REQUIRE(false);
  return 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("chi spectrum panels: dip at resonance, zero dispersion") {
  const ScenarioConfig cfg = fast_config();
  const int photons[] = {0, 5};
  const auto results = run_fig_chi_spectrum(cfg, photons);
  REQUIRE(results.size() == 4);
  CHECK(results[0].name == "fig2_a_0");
  CHECK(results[1].name == "fig2_b_0");
  CHECK(results[2].name == "fig2_a_5");

  const ScenarioResult& im0 = results[0];
  const std::size_t center = im0.rows() / 2;
  CHECK(im0.at(center, 0) == 0.0);
  // strict local minimum at resonance
  CHECK(im0.at(center, 1) < im0.at(center - 1, 1));
  CHECK(im0.at(center, 1) < im0.at(center + 1, 1));
  // n_c = 5 dips deeper
  const ScenarioResult& im5 = results[2];
  CHECK(im5.at(center, 1) < im0.at(center, 1));
  // dispersion column vanishes at resonance
  const ScenarioResult& re0 = results[1];
  CHECK(std::abs(re0.at(center, 1)) < 1e-18);
  // chi / N0 column is consistent
  const double n0 = cfg.medium.chi_prefactor(cfg.epsilon0);
  CHECK(im0.at(center, 2) ==
        doctest::Approx(im0.at(center, 1) / n0).epsilon(1e-14));
}

TEST_CASE("transmission panels: periodicity and photon-number ordering") {
  const ScenarioConfig cfg = fast_config();
  const int photons[] = {0, 5};
  const auto results = run_fig_transmission(cfg, photons);
  REQUIRE(results.size() == 4);
  const ScenarioResult& a0 = results[0];  // fig3_a_0, Delta_p = 0
  const ScenarioResult& a5 = results[2];

  const std::size_t amp = column_index(a0, "amplitude");
  const std::size_t phase = column_index(a0, "phase");
  const std::size_t rows = a0.rows();
  // x grid spans two periods: [0, 2 Lambda] -> periodicity
  const std::size_t half = (rows - 1) / 2;
  for (std::size_t i = 0; i + half < rows; i += 5) {
    CHECK(a0.at(i, amp) == doctest::Approx(a0.at(i + half, amp)).epsilon(1e-9));
  }
  // maximum at x = Lambda/2 (quarter of the two-period grid)
  const std::size_t quarter = (rows - 1) / 4;
  double max_amp = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i <= half; ++i) {
    if (a0.at(i, amp) > max_amp) {
      max_amp = a0.at(i, amp);
      argmax = i;
    }
  }
  CHECK(argmax == quarter);
  // more photons, more transparency at the antinode
  CHECK(a5.at(quarter, amp) > a0.at(quarter, amp));
  // phase column is identically zero at resonance
  for (std::size_t i = 0; i < rows; i += 7) {
    CHECK(a0.at(i, phase) == 0.0);
  }
  // detuned panel picks up phase modulation
  const ScenarioResult& b0 = results[1];
  CHECK(std::abs(b0.at(quarter, phase)) > 1e-3);
}

TEST_CASE("diffraction profile is even with Bragg-order peaks") {
  ScenarioConfig cfg = fast_config();
  cfg.theta_points = 201;
  const int photons[] = {0};
  const auto results = run_fig_diffraction(cfg, photons, 2);
  const ScenarioResult& r = results[0];
  const std::size_t rows = r.rows();
  for (std::size_t i = 0; i < rows; ++i) {
    CHECK(std::abs(r.at(i, 1) - r.at(rows - 1 - i, 1)) < 1e-10);
  }
  // center is the zeroth-order peak
  const std::size_t center = rows / 2;
  double best = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (r.at(i, 1) > best) {
      best = r.at(i, 1);
      argmax = i;
    }
  }
  CHECK(argmax == center);
}

TEST_CASE("heatmap smoke run") {
  ScenarioConfig cfg = fast_config();
  cfg.detuning_points = 5;
  cfg.theta_points = 41;
  const ScenarioResult r = run_fig_heatmap(cfg, 2);
  CHECK(r.rows() == 5 * 41);
  CHECK(r.columns.size() == 3);
}

TEST_CASE("photon sweep is deterministic and bitwise repeatable") {
  ScenarioConfig cfg = fast_config();
  const ScenarioResult a = run_fig_photon_sweep(cfg, 2);
  const ScenarioResult b = run_fig_photon_sweep(cfg, 1);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    CHECK(a.values[i] == b.values[i]);
  }
  CHECK(a.rows() == static_cast<std::size_t>(cfg.photon_max + 1));
}

TEST_CASE("first-order single point and sweeps") {
  ScenarioConfig cfg = fast_config();
  const ScenarioResult single = run_first_order(cfg, 1);
  CHECK(single.rows() == 1);
  CHECK(single.at(0, 3) > 0.0);

  cfg.sweep = SweepAxis{"n_c", 0, 4, 5};
  const ScenarioResult swept = run_first_order(cfg, 2);
  CHECK(swept.rows() == 5);
  CHECK(swept.columns[0] == "n_c");
  // matches the figure sweep values
  const ScenarioResult fig6 = run_fig_photon_sweep(cfg, 2);
  for (std::size_t i = 0; i < swept.rows(); ++i) {
    CHECK(swept.at(i, 1) == fig6.at(i, 1));
  }

  cfg.sweep = SweepAxis{"bogus", 0, 1, 2};
  CHECK_THROWS_AS(run_first_order(cfg, 1), std::invalid_argument);
}

TEST_CASE("table formatting is stable") {
  ScenarioResult r;
  r.name = "demo";
  r.columns = {"x", "y"};
  r.values = {0.0, 1.5, 8.52e-7, -0.25};
  r.metadata = {{"scenario", "demo"}, {"alpha", "3.2"}};
  CHECK(io::format_table(r) ==
        "# scenario = demo\n# alpha = 3.2\nx,y\n0,1.5\n8.52e-07,-0.25\n");
}

TEST_CASE("dispatch writes tables and is byte-identical across reruns") {
  const fs::path out1 = fs::temp_directory_path() / "viag_test_run1";
  const fs::path out2 = fs::temp_directory_path() / "viag_test_run2";
  fs::remove_all(out1);
  fs::remove_all(out2);

  cli::RunManifest m;
  m.subcommand = "figure";
  m.figure = "fig6";
  m.plot = true;
  m.deterministic = true;
  m.overrides = {"nc_max=5", "quad_initial_panels=64"};
  m.out_dir = out1.string();
  m.jobs = 2;
  CHECK(cli::dispatch(m) == 0);
  m.out_dir = out2.string();
  m.jobs = 1;
  CHECK(cli::dispatch(m) == 0);

  REQUIRE(fs::exists(out1 / "fig6_sweep_all.csv"));
  REQUIRE(fs::exists(out1 / "fig6_sweep.svg"));
  CHECK(slurp(out1 / "fig6_sweep_all.csv") == slurp(out2 / "fig6_sweep_all.csv"));
  CHECK(slurp(out1 / "fig6_sweep.svg") == slurp(out2 / "fig6_sweep.svg"));
  const std::string svg = slurp(out1 / "fig6_sweep.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("dispatch failure removes partial outputs and reports the error") {
  const fs::path out = fs::temp_directory_path() / "viag_test_fail";
  fs::remove_all(out);
  cli::RunManifest m;
  m.subcommand = "figure";
  m.figure = "fig4";
  m.out_dir = out.string();
  // unreachable tolerance at a tiny panel cap: quadrature must fail
  m.overrides = {"quad_tolerance=1e-300", "quad_max_panels=512",
                 "theta_points=5"};
  CHECK(cli::dispatch(m) != 0);
  std::size_t files = 0;
  if (fs::exists(out)) {
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(out)) {
      ++files;
    }
  }
  CHECK(files == 0);
  fs::remove_all(out);
}

TEST_CASE("dispatch rejects unknown subcommands and figures") {
  cli::RunManifest m;
  m.subcommand = "frobnicate";
  m.out_dir = (fs::temp_directory_path() / "viag_test_unknown").string();
  CHECK(cli::dispatch(m) != 0);
  m.subcommand = "figure";
  m.figure = "fig99";
  CHECK(cli::dispatch(m) != 0);
  fs::remove_all(m.out_dir);
}

TEST_CASE("validate subcommand writes the report and exits zero") {
  const fs::path out = fs::temp_directory_path() / "viag_test_validate";
  fs::remove_all(out);
  cli::RunManifest m;
  m.subcommand = "validate";
  m.out_dir = out.string();
  CHECK(cli::dispatch(m) == 0);
  CHECK(fs::exists(out / "validation.csv"));
  const std::string text = slurp(out / "validation.csv");
  CHECK(text.find("# passed = 1") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("scenario result integrity checks") {
  ScenarioResult r;
  r.name = "bad";
  r.columns = {"a", "b"};
  r.values = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(r.check(), std::runtime_error);
  r.values = {1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(r.check(), std::runtime_error);
}
