#include "viag/table.hpp"

#include <fstream>
#include <stdexcept>

#include "viag/format.hpp"
#include "viag/version.hpp"

namespace viag::io {

std::string format_table(const experiments::ScenarioResult& result) {
  result.check();
  std::string out;
  out.reserve(result.values.size() * 16 + 256);
  for (const auto& [key, value] : result.metadata) {
    out += "# ";
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  const std::size_t cols = result.columns.size();
  for (std::size_t c = 0; c < cols; ++c) {
    if (c != 0) out += ',';
    out += result.columns[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < result.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c != 0) out += ',';
      out += format_double(result.at(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_table(const experiments::ScenarioResult& result,
                 const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("write_table: cannot open " + path.string());
  }
  file << format_table(result);
  if (!file) {
    throw std::runtime_error("write_table: write failed for " + path.string());
  }
}

experiments::ScenarioResult validation_table(
    const oracle::ValidationReport& report) {
  experiments::ScenarioResult table;
  table.name = "validation";
  table.columns = {"n_c",
                   "delta_p",
                   "x",
                   "re_chi_closed",
                   "im_chi_closed",
                   "re_chi_linear",
                   "im_chi_linear",
                   "re_chi_lindblad",
                   "im_chi_lindblad",
                   "dev_linear",
                   "dev_lindblad",
                   "lindblad_degenerate",
                   "flagged"};
  for (const oracle::ValidationPoint& p : report.points) {
    const bool degenerate = !p.chi_lindblad.has_value();
    const std::complex<double> lind =
        degenerate ? std::complex<double>(0.0, 0.0) : *p.chi_lindblad;
    table.values.insert(
        table.values.end(),
        {static_cast<double>(p.grid.photon_number), p.grid.detuning_p,
         p.grid.position, p.chi_closed.real(), p.chi_closed.imag(),
         p.chi_linear.real(), p.chi_linear.imag(), lind.real(), lind.imag(),
         p.dev_linear, p.dev_lindblad.value_or(0.0),
         degenerate ? 1.0 : 0.0, p.flagged ? 1.0 : 0.0});
  }
  table.metadata.emplace_back("viag_version", kVersion);
  table.metadata.emplace_back("scenario", "validation");
  table.metadata.emplace_back("points", std::to_string(report.points.size()));
  table.metadata.emplace_back("max_dev_linear",
                              format_double(report.max_dev_linear));
  table.metadata.emplace_back("max_dev_lindblad",
                              format_double(report.max_dev_lindblad));
  table.metadata.emplace_back("tol_linear",
                              format_double(report.options.tol_linear));
  table.metadata.emplace_back("tol_lindblad",
                              format_double(report.options.tol_lindblad));
  table.metadata.emplace_back("probe_scale",
                              format_double(report.options.probe_scale));
  table.metadata.emplace_back("flagged_points",
                              std::to_string(report.flagged_count));
  table.metadata.emplace_back("degenerate_points",
                              std::to_string(report.degenerate_count));
  table.metadata.emplace_back("passed", report.passed() ? "1" : "0");
  table.check();
  return table;
}

}  // namespace viag::io
