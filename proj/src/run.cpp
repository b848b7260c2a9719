#include "viag/run.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "viag/config.hpp"
#include "viag/errors.hpp"
#include "viag/format.hpp"
#include "viag/oracle.hpp"
#include "viag/parallel.hpp"
#include "viag/plot.hpp"
#include "viag/table.hpp"

namespace viag::cli {

namespace fs = std::filesystem;
using experiments::ScenarioConfig;
using experiments::ScenarioResult;

namespace {

struct SeriesRef {
  std::size_t result_index;
  std::size_t x_col;
  std::size_t y_col;
  std::string label;
};

struct PlotSpec {
  std::string file_stem;
  io::PlotOptions options;
  std::vector<SeriesRef> series;
  bool heatmap = false;
  std::size_t heatmap_result = 0;
};

struct Outputs {
  std::vector<ScenarioResult> results;
  std::vector<PlotSpec> plots;
};

std::string photon_label(const ScenarioResult& result) {
  for (const auto& [key, value] : result.metadata) {
    if (key == "n_c") return "n_c = " + value;
  }
  return result.name;
}

void add_series_plot(Outputs& out, const std::string& stem,
                     std::size_t first_result, std::size_t count,
                     std::size_t x_col, std::size_t y_col,
                     const std::string& x_label, const std::string& y_label) {
  PlotSpec spec;
  spec.file_stem = stem;
  spec.options.title = stem;
  spec.options.x_label = x_label;
  spec.options.y_label = y_label;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t index = first_result + i;
    spec.series.push_back(
        {index, x_col, y_col, photon_label(out.results[index])});
  }
  out.plots.push_back(std::move(spec));
}

void append_fig(Outputs& out, const std::string& name,
                const ScenarioConfig& cfg, unsigned jobs) {
  using namespace experiments;
  const std::size_t base = out.results.size();
  if (name == "fig2") {
    auto results = run_fig_chi_spectrum(cfg, kFig2Photons, jobs);
    for (auto& r : results) out.results.push_back(std::move(r));
    // results alternate a/b per photon number
    PlotSpec a;
    a.file_stem = "fig2_a";
    a.options = {"fig2_a", "Delta_p / Gamma_ca", "Im chi", false};
    PlotSpec b;
    b.file_stem = "fig2_b";
    b.options = {"fig2_b", "Delta_p / Gamma_ca", "Re chi", false};
    for (std::size_t i = base; i < out.results.size(); ++i) {
      const std::string& n = out.results[i].name;
      if (n.find("fig2_a") == 0) {
        a.series.push_back({i, 0, 1, photon_label(out.results[i])});
      } else {
        b.series.push_back({i, 0, 1, photon_label(out.results[i])});
      }
    }
    out.plots.push_back(std::move(a));
    out.plots.push_back(std::move(b));
  } else if (name == "fig3") {
    auto results = run_fig_transmission(cfg, kFig3Photons, jobs);
    for (auto& r : results) out.results.push_back(std::move(r));
    PlotSpec a;
    a.file_stem = "fig3_a";
    a.options = {"fig3_a", "x / Lambda", "|T|", false};
    PlotSpec b;
    b.file_stem = "fig3_b";
    b.options = {"fig3_b", "x / Lambda", "Phi (rad)", false};
    for (std::size_t i = base; i < out.results.size(); ++i) {
      const std::string& n = out.results[i].name;
      if (n.find("fig3_a") == 0) {
        a.series.push_back({i, 0, 1, photon_label(out.results[i])});
      } else {
        b.series.push_back({i, 0, 2, photon_label(out.results[i])});
      }
    }
    out.plots.push_back(std::move(a));
    out.plots.push_back(std::move(b));
  } else if (name == "fig4") {
    auto results = run_fig_diffraction(cfg, kFig4Photons, jobs);
    const std::size_t count = results.size();
    for (auto& r : results) out.results.push_back(std::move(r));
    add_series_plot(out, "fig4_profile", base, count, 0, 1, "sin(theta)",
                    "intensity");
  } else if (name == "fig5") {
    out.results.push_back(run_fig_heatmap(cfg, jobs));
    PlotSpec spec;
    spec.file_stem = "fig5_heatmap";
    spec.options = {"fig5_heatmap", "sin(theta)", "Delta_p / Gamma_ca", false};
    spec.heatmap = true;
    spec.heatmap_result = base;
    out.plots.push_back(std::move(spec));
  } else if (name == "fig6") {
    out.results.push_back(run_fig_photon_sweep(cfg, jobs));
    add_series_plot(out, "fig6_sweep", base, 1, 0, 1, "n_c",
                    "first-order intensity");
  } else if (name == "fig7") {
    auto results = run_fig_detuning_sweep(cfg, kFig7Photons, jobs);
    const std::size_t count = results.size();
    for (auto& r : results) out.results.push_back(std::move(r));
    add_series_plot(out, "fig7_detuning", base, count, 0, 1,
                    "Delta_p / Gamma_ca", "first-order intensity");
  } else if (name == "fig8") {
    auto results = run_fig_length_sweep(cfg, kFig8Photons, jobs);
    const std::size_t count = results.size();
    for (auto& r : results) out.results.push_back(std::move(r));
    add_series_plot(out, "fig8_length", base, count, 0, 1, "l (um)",
                    "first-order intensity");
  } else {
    throw std::invalid_argument(
        "unknown figure '" + name +
        "' (expected fig2, fig3, fig4, fig5, fig6, fig7, fig8 or all)");
  }
}

Outputs build_outputs(const RunManifest& m, const ScenarioConfig& cfg,
                      unsigned jobs) {
  using namespace experiments;
  Outputs out;
  if (m.subcommand == "chi") {
    out.results.push_back(run_chi_table(cfg, jobs));
    PlotSpec spec;
    spec.file_stem = out.results[0].name;
    spec.options = {out.results[0].name, "Delta_p / Gamma_ca", "chi", false};
    spec.series.push_back({0, 0, 1, "Im chi"});
    spec.series.push_back({0, 0, 2, "Re chi"});
    out.plots.push_back(std::move(spec));
  } else if (m.subcommand == "transmission") {
    out.results.push_back(run_transmission_table(cfg));
    PlotSpec spec;
    spec.file_stem = out.results[0].name;
    spec.options = {out.results[0].name, "x / Lambda", "T", false};
    spec.series.push_back({0, 0, 1, "|T|"});
    spec.series.push_back({0, 0, 2, "Phi (rad)"});
    out.plots.push_back(std::move(spec));
  } else if (m.subcommand == "diffraction") {
    out.results.push_back(run_diffraction_table(cfg, jobs));
    add_series_plot(out, out.results[0].name, 0, 1, 0, 1, "sin(theta)",
                    "intensity");
  } else if (m.subcommand == "first-order") {
    out.results.push_back(run_first_order(cfg, jobs));
    if (cfg.sweep) {
      add_series_plot(out, out.results[0].name, 0, 1, 0, 1,
                      cfg.sweep->parameter, "first-order intensity");
    }
  } else if (m.subcommand == "figure") {
    if (m.figure == "all") {
      for (const char* name :
           {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}) {
        append_fig(out, name, cfg, jobs);
      }
    } else {
      append_fig(out, m.figure, cfg, jobs);
    }
  } else {
    throw std::invalid_argument("unknown subcommand '" + m.subcommand + "'");
  }
  return out;
}

void render_plot(const Outputs& out, const PlotSpec& spec, bool log_y,
                 const fs::path& path) {
  if (spec.heatmap) {
    const ScenarioResult& r = out.results[spec.heatmap_result];
    // rows are detuning-major triples (dp, sin_theta, intensity)
    std::vector<double> dp;
    std::vector<double> theta;
    for (std::size_t row = 0; row < r.rows(); ++row) {
      const double d = r.at(row, 0);
      if (dp.empty() || d != dp.back()) dp.push_back(d);
    }
    const std::size_t theta_count = r.rows() / dp.size();
    theta.reserve(theta_count);
    for (std::size_t c = 0; c < theta_count; ++c) theta.push_back(r.at(c, 1));
    std::vector<double> values(r.rows());
    for (std::size_t i = 0; i < dp.size(); ++i) {
      for (std::size_t j = 0; j < theta_count; ++j) {
        values[j * dp.size() + i] = r.at(i * theta_count + j, 2);
      }
    }
    std::ofstream file(path, std::ios::binary);
    file << io::heatmap_svg(theta, dp, values, spec.options);
    if (!file) throw std::runtime_error("plot write failed: " + path.string());
    return;
  }
  std::vector<io::PlotSeries> series;
  for (const SeriesRef& ref : spec.series) {
    const ScenarioResult& r = out.results[ref.result_index];
    io::PlotSeries s;
    s.label = ref.label;
    s.x.reserve(r.rows());
    s.y.reserve(r.rows());
    for (std::size_t row = 0; row < r.rows(); ++row) {
      s.x.push_back(r.at(row, ref.x_col));
      s.y.push_back(r.at(row, ref.y_col));
    }
    series.push_back(std::move(s));
  }
  io::PlotOptions options = spec.options;
  options.log_y = log_y;
  std::ofstream file(path, std::ios::binary);
  file << io::line_plot_svg(series, options);
  if (!file) throw std::runtime_error("plot write failed: " + path.string());
}

int run_validate(const RunManifest& m, const ScenarioConfig& cfg,
                 std::vector<fs::path>& written) {
  const auto grid = oracle::default_validation_grid(cfg.medium, cfg.cavity);
  oracle::ValidationOptions options;
  options.epsilon0 = cfg.epsilon0;
  const auto report =
      oracle::validate_chi(grid, cfg.medium, cfg.cavity, cfg.probe, options);
  const fs::path path = fs::path(m.out_dir) / "validation.csv";
  io::write_table(io::validation_table(report), path);
  written.push_back(path);
  std::cout << "validation: " << report.points.size() << " points, max linear dev "
            << format_double(report.max_dev_linear) << " (tol "
            << format_double(report.options.tol_linear)
            << "), max lindblad dev "
            << format_double(report.max_dev_lindblad) << " (tol "
            << format_double(report.options.tol_lindblad) << "), "
            << report.degenerate_count << " degenerate, "
            << report.flagged_count << " flagged\n";
  if (!report.passed()) {
    std::cerr << "viag-error subcommand=validate message=\"" <<
        report.flagged_count << " grid points exceed tolerance (report kept)\"\n";
    return 1;
  }
  return 0;
}

}  // namespace

std::string usage() {
  return "usage: viag <subcommand> [options]\n"
         "  subcommands: chi | transmission | diffraction | first-order |\n"
         "               figure <fig2..fig8|all> | validate\n"
         "  options: --config <path> --out <dir> --set key=value (repeatable)\n"
         "           --plot --log-y --deterministic --jobs N\n";
}

int dispatch(const RunManifest& manifest) {
  std::vector<fs::path> written;
  try {
    std::string text;
    if (!manifest.config_path.empty()) {
      std::ifstream file(manifest.config_path);
      if (!file) {
        throw std::runtime_error("cannot read config file '" +
                                 manifest.config_path + "'");
      }
      std::ostringstream buffer;
      buffer << file.rdbuf();
      text = buffer.str();
    }
    const ScenarioConfig cfg = [&]() {
      try {
        return io::parse_config(text, manifest.overrides);
      } catch (const ConfigError& err) {
        std::ostringstream os;
        if (err.line == 0) {
          // overrides are reported with the 1-based --set index as column
          os << "--set override " << err.column << ": " << err.what();
        } else {
          const std::string source =
              manifest.config_path.empty() ? "<config>" : manifest.config_path;
          os << source << ":" << err.line << ":" << err.column << ": "
             << err.what();
        }
        throw std::runtime_error(os.str());
      }
    }();

    const unsigned jobs =
        manifest.jobs == 0 ? default_jobs() : manifest.jobs;
    fs::create_directories(manifest.out_dir);

    if (manifest.subcommand == "validate") {
      return run_validate(manifest, cfg, written);
    }

    const Outputs out = build_outputs(manifest, cfg, jobs);
    for (const ScenarioResult& result : out.results) {
      const fs::path path = fs::path(manifest.out_dir) / (result.name + ".csv");
      io::write_table(result, path);
      written.push_back(path);
    }
    if (manifest.plot) {
      for (const PlotSpec& spec : out.plots) {
        const fs::path path =
            fs::path(manifest.out_dir) / (spec.file_stem + ".svg");
        render_plot(out, spec, manifest.log_y, path);
        written.push_back(path);
      }
    }
    return 0;
  } catch (const std::invalid_argument& err) {
    for (const fs::path& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    std::cerr << usage();
    std::cerr << "viag-error subcommand=" << manifest.subcommand
              << " message=\"" << err.what() << "\"\n";
    return 2;
  } catch (const std::exception& err) {
    for (const fs::path& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    std::cerr << "viag-error subcommand=" << manifest.subcommand
              << " message=\"" << err.what() << "\"\n";
    return 1;
  }
}

}  // namespace viag::cli
