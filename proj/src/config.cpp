#include "viag/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "viag/errors.hpp"
#include "viag/format.hpp"

namespace viag::io {

namespace {

enum class Unit { None, Nano, Micro, Hertz, Gca };

struct RawEntry {
  bool is_identifier = false;
  std::string identifier;
  double number = 0.0;
  Unit unit = Unit::None;
  bool two_pi = false;
  std::size_t line = 0;
  std::size_t column = 0;
};

const char* const kKnownKeys[] = {
    "lambda_p",      "mu_ca",          "epsilon0",        "density",
    "beta",          "coupling_g",     "Gamma_ca",        "Gamma_cb",
    "gamma_c",       "gamma_ba",       "kappa",           "n_c",
    "Lambda",        "ell",            "M",               "Delta_p",
    "Delta_c",       "quad_tolerance", "quad_initial_panels",
    "quad_max_panels", "detuning_points", "detuning_span", "theta_points",
    "theta_span",    "x_points",       "ell_min",         "ell_max",
    "ell_points",    "nc_max",         "sweep",           "sweep_min",
    "sweep_max",     "sweep_points"};

bool is_known_key(const std::string& key) {
  for (const char* known : kKnownKeys) {
    if (key == known) return true;
  }
  return false;
}

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& text, std::size_t offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i >= text.size()) break;
    const std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    tokens.push_back({text.substr(start, i - start), offset + start + 1});
  }
  return tokens;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// Parses one `key = value...` line into the entry map.
void parse_line(const std::string& raw, std::size_t line_no,
                std::map<std::string, RawEntry>& entries,
                bool reject_duplicates) {
  std::string text = raw;
  if (const std::size_t hash = text.find('#'); hash != std::string::npos) {
    text.erase(hash);
  }
  if (trim(text).empty()) return;

  const std::size_t eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected 'key = value'", line_no, 1);
  }
  const std::string key = trim(text.substr(0, eq));
  if (key.empty()) {
    throw ConfigError("missing key before '='", line_no, 1);
  }
  if (!is_known_key(key)) {
    throw ConfigError("unknown key '" + key + "'", line_no, 1);
  }
  if (reject_duplicates && entries.count(key) != 0) {
    throw ConfigError("duplicate key '" + key + "'", line_no, 1);
  }

  const std::vector<Token> tokens = tokenize(text.substr(eq + 1), eq + 1);
  if (tokens.empty()) {
    throw ConfigError("missing value for '" + key + "'", line_no, eq + 2);
  }

  RawEntry entry;
  entry.line = line_no;
  entry.column = tokens[0].column;

  std::size_t next = 1;
  const std::string& value = tokens[0].text;
  double number = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), number);
  if (ec == std::errc() && ptr == value.data() + value.size()) {
    entry.number = number;
  } else if (key == "sweep") {
    entry.is_identifier = true;
    entry.identifier = value;
  } else {
    throw ConfigError("unparsable number '" + value + "' for '" + key + "'",
                      line_no, tokens[0].column);
  }

  for (; next < tokens.size(); ++next) {
    const std::string& tok = tokens[next].text;
    if (tok == "2pi_times") {
      if (entry.two_pi) {
        throw ConfigError("repeated 2pi_times", line_no, tokens[next].column);
      }
      entry.two_pi = true;
    } else if (tok == "nm" || tok == "um" || tok == "Hz" || tok == "Gca") {
      if (entry.unit != Unit::None) {
        throw ConfigError("repeated unit suffix", line_no,
                          tokens[next].column);
      }
      entry.unit = tok == "nm"   ? Unit::Nano
                   : tok == "um" ? Unit::Micro
                   : tok == "Hz" ? Unit::Hertz
                                 : Unit::Gca;
    } else {
      throw ConfigError("unexpected token '" + tok + "'", line_no,
                        tokens[next].column);
    }
  }
  if (entry.is_identifier && (entry.unit != Unit::None || entry.two_pi)) {
    throw ConfigError("'sweep' takes a bare parameter name", line_no,
                      entry.column);
  }
  entries[key] = entry;
}

class Resolver {
 public:
  explicit Resolver(std::map<std::string, RawEntry> entries)
      : entries_(std::move(entries)) {}

  const RawEntry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  double length(const std::string& key, double fallback) const {
    const RawEntry* e = find(key);
    if (!e) return fallback;
    double v = e->number;
    switch (e->unit) {
      case Unit::None:
        break;
      case Unit::Nano:
        v *= 1e-9;
        break;
      case Unit::Micro:
        v *= 1e-6;
        break;
      default:
        throw ConfigError("unit mismatch: '" + key + "' is a length", e->line,
                          e->column);
    }
    if (e->two_pi) {
      throw ConfigError("2pi_times is not valid for length '" + key + "'",
                        e->line, e->column);
    }
    return v;
  }

  /// Rates accept bare rad/s, Hz (with optional 2pi_times) and Gca.
  double rate(const std::string& key, double fallback, double gamma_ca,
              bool allow_gca = true) const {
    const RawEntry* e = find(key);
    if (!e) return fallback;
    double v = e->number;
    switch (e->unit) {
      case Unit::None:
      case Unit::Hertz:
        if (e->two_pi) v *= constants::two_pi;
        break;
      case Unit::Gca:
        if (!allow_gca) {
          throw ConfigError("'" + key + "' cannot be given in units of itself",
                            e->line, e->column);
        }
        if (e->two_pi) {
          throw ConfigError("2pi_times is not valid together with Gca",
                            e->line, e->column);
        }
        v *= gamma_ca;
        break;
      default:
        throw ConfigError("unit mismatch: '" + key + "' is a rate", e->line,
                          e->column);
    }
    return v;
  }

  double plain(const std::string& key, double fallback) const {
    const RawEntry* e = find(key);
    if (!e) return fallback;
    if (e->unit != Unit::None || e->two_pi) {
      throw ConfigError("'" + key + "' takes a bare number", e->line,
                        e->column);
    }
    return e->number;
  }

  long integer(const std::string& key, long fallback) const {
    const RawEntry* e = find(key);
    if (!e) return fallback;
    if (e->unit != Unit::None || e->two_pi) {
      throw ConfigError("'" + key + "' takes a bare integer", e->line,
                        e->column);
    }
    const double v = e->number;
    if (!(std::nearbyint(v) == v) || std::abs(v) > 2147483647.0) {
      throw ConfigError("'" + key + "' must be an integer", e->line,
                        e->column);
    }
    return static_cast<long>(v);
  }

  void check(bool ok, const std::string& key, const std::string& what) const {
    if (ok) return;
    const RawEntry* e = find(key);
    throw ConfigError("'" + key + "' " + what, e ? e->line : 0,
                      e ? e->column : 0);
  }

 private:
  std::map<std::string, RawEntry> entries_;
};

}  // namespace

experiments::ScenarioConfig parse_config(
    const std::string& text, std::span<const std::string> overrides) {
  std::map<std::string, RawEntry> entries;
  {
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, RawEntry> file_entries;
    while (std::getline(stream, line)) {
      ++line_no;
      parse_line(line, line_no, file_entries, /*reject_duplicates=*/true);
    }
    entries = std::move(file_entries);
  }
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    // overrides are reported as line 0, column = 1 + override index
    std::map<std::string, RawEntry> one;
    parse_line(overrides[i], 0, one, /*reject_duplicates=*/false);
    for (auto& [key, entry] : one) {
      entry.column = i + 1;
      entries[key] = entry;
    }
  }

  const Resolver r(std::move(entries));
  const auto defaults = experiments::ScenarioConfig::defaults();

  const double lambda_p = r.length("lambda_p", defaults.probe.wavelength);
  r.check(lambda_p > 0.0, "lambda_p", "must be positive");

  const double gamma_ca =
      r.rate("Gamma_ca", defaults.medium.gamma_ca_decay, 0.0,
             /*allow_gca=*/false);
  r.check(gamma_ca > 0.0, "Gamma_ca", "must be positive");

  const double kappa = r.rate("kappa", defaults.cavity.kappa, gamma_ca);
  r.check(kappa > 0.0, "kappa", "must be positive");

  const double gamma_cb = r.rate("Gamma_cb", 0.0, gamma_ca);
  r.check(gamma_cb >= 0.0, "Gamma_cb", "must be nonnegative");
  const double gamma_c = r.rate("gamma_c", 0.0, gamma_ca);
  r.check(gamma_c >= 0.0, "gamma_c", "must be nonnegative");
  const double gamma_ba = r.rate("gamma_ba", kappa, gamma_ca);
  r.check(gamma_ba >= 0.0, "gamma_ba", "must be nonnegative");

  const double mu_ca = r.plain("mu_ca", defaults.medium.dipole_moment);
  r.check(mu_ca > 0.0, "mu_ca", "must be positive");
  const double density = r.plain("density", defaults.medium.density);
  r.check(density > 0.0, "density", "must be positive");
  const double epsilon0 = r.plain("epsilon0", defaults.epsilon0);
  r.check(epsilon0 > 0.0, "epsilon0", "must be positive");

  double coupling = 0.0;
  if (r.find("coupling_g") != nullptr) {
    if (const RawEntry* b = r.find("beta")) {
      throw ConfigError("give either 'beta' or 'coupling_g', not both",
                        b->line, b->column);
    }
    coupling = r.rate("coupling_g", 0.0, gamma_ca);
    r.check(coupling > 0.0, "coupling_g", "must be positive");
  } else {
    const double beta = r.plain("beta", 3.2);
    r.check(beta > 0.0, "beta", "must be positive");
    coupling = derive_coupling(beta, gamma_ca, kappa);
  }

  const long n_c = r.integer("n_c", defaults.cavity.photon_number);
  r.check(n_c >= 0, "n_c", "must be >= 0");
  const double period = r.length("Lambda", 4.0 * lambda_p);
  r.check(period > 0.0, "Lambda", "must be positive");
  const double ell = r.length("ell", defaults.geometry.length);
  r.check(ell > 0.0, "ell", "must be positive");
  const long periods = r.integer("M", defaults.geometry.num_periods);
  r.check(periods >= 1, "M", "must be >= 1");

  const double delta_p = r.rate("Delta_p", 0.0, gamma_ca);
  const double delta_c = r.rate("Delta_c", 0.0, gamma_ca);

  experiments::ScenarioConfig cfg(
      AtomicMedium(mu_ca, density, gamma_ca, gamma_cb, gamma_ba, gamma_c),
      CavityConfig(coupling, kappa, static_cast<int>(n_c), period),
      ProbeConfig(lambda_p, delta_p, delta_c),
      GratingGeometry(ell, period, static_cast<int>(periods)));
  cfg.epsilon0 = epsilon0;

  cfg.quadrature.tolerance =
      r.plain("quad_tolerance", defaults.quadrature.tolerance);
  r.check(cfg.quadrature.tolerance > 0.0, "quad_tolerance",
          "must be positive");
  const long initial =
      r.integer("quad_initial_panels",
                static_cast<long>(defaults.quadrature.initial_panels));
  r.check(initial >= 16 && initial % 2 == 0, "quad_initial_panels",
          "must be even and >= 16");
  cfg.quadrature.initial_panels = static_cast<std::size_t>(initial);
  const long max_panels = r.integer(
      "quad_max_panels", static_cast<long>(defaults.quadrature.max_panels));
  r.check(max_panels >= 2 * initial, "quad_max_panels",
          "must be >= 2 * quad_initial_panels");
  cfg.quadrature.max_panels = static_cast<std::size_t>(max_panels);

  cfg.detuning_points = static_cast<int>(
      r.integer("detuning_points", defaults.detuning_points));
  r.check(cfg.detuning_points >= 2, "detuning_points", "must be >= 2");
  cfg.detuning_span =
      r.rate("detuning_span", 3.0 * gamma_ca, gamma_ca);
  r.check(cfg.detuning_span > 0.0, "detuning_span", "must be positive");
  cfg.theta_points =
      static_cast<int>(r.integer("theta_points", defaults.theta_points));
  r.check(cfg.theta_points >= 2, "theta_points", "must be >= 2");
  cfg.theta_span = r.plain("theta_span", defaults.theta_span);
  r.check(cfg.theta_span > 0.0 && cfg.theta_span <= 1.0, "theta_span",
          "must lie in (0, 1]");
  cfg.x_points = static_cast<int>(r.integer("x_points", defaults.x_points));
  r.check(cfg.x_points >= 2, "x_points", "must be >= 2");
  cfg.length_min = r.length("ell_min", defaults.length_min);
  r.check(cfg.length_min > 0.0, "ell_min", "must be positive");
  cfg.length_max = r.length("ell_max", defaults.length_max);
  r.check(cfg.length_max >= cfg.length_min, "ell_max", "must be >= ell_min");
  cfg.length_points =
      static_cast<int>(r.integer("ell_points", defaults.length_points));
  r.check(cfg.length_points >= 2, "ell_points", "must be >= 2");
  cfg.photon_max = static_cast<int>(r.integer("nc_max", defaults.photon_max));
  r.check(cfg.photon_max >= 0, "nc_max", "must be >= 0");

  if (const RawEntry* sweep = r.find("sweep")) {
    if (!sweep->is_identifier) {
      throw ConfigError("'sweep' takes a parameter name (delta_p, ell, n_c)",
                        sweep->line, sweep->column);
    }
    experiments::SweepAxis axis;
    axis.parameter = sweep->identifier;
    const RawEntry* lo = r.find("sweep_min");
    const RawEntry* hi = r.find("sweep_max");
    if (lo == nullptr || hi == nullptr) {
      throw ConfigError("'sweep' requires sweep_min and sweep_max",
                        sweep->line, sweep->column);
    }
    if (axis.parameter == "delta_p") {
      axis.lo = r.rate("sweep_min", 0.0, gamma_ca);
      axis.hi = r.rate("sweep_max", 0.0, gamma_ca);
    } else if (axis.parameter == "ell") {
      axis.lo = r.length("sweep_min", 0.0);
      axis.hi = r.length("sweep_max", 0.0);
    } else {
      axis.lo = r.plain("sweep_min", 0.0);
      axis.hi = r.plain("sweep_max", 0.0);
    }
    axis.points = static_cast<int>(r.integer("sweep_points", 101));
    try {
      experiments::validate(axis);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what(), sweep->line, sweep->column);
    }
    cfg.sweep = axis;
  }

  return cfg;
}

std::string serialize_config(const experiments::ScenarioConfig& cfg) {
  std::ostringstream os;
  auto put = [&os](const char* key, double value) {
    os << key << " = " << format_double(value) << "\n";
  };
  auto put_int = [&os](const char* key, long value) {
    os << key << " = " << value << "\n";
  };
  put("lambda_p", cfg.probe.wavelength);
  put("mu_ca", cfg.medium.dipole_moment);
  put("epsilon0", cfg.epsilon0);
  put("density", cfg.medium.density);
  put("coupling_g", cfg.cavity.coupling_g);
  put("Gamma_ca", cfg.medium.gamma_ca_decay);
  put("Gamma_cb", cfg.medium.gamma_cb_decay);
  put("gamma_c", cfg.medium.dephase_c);
  put("gamma_ba", cfg.medium.dephase_b);
  put("kappa", cfg.cavity.kappa);
  put_int("n_c", cfg.cavity.photon_number);
  put("Lambda", cfg.cavity.spatial_period);
  put("ell", cfg.geometry.length);
  put_int("M", cfg.geometry.num_periods);
  put("Delta_p", cfg.probe.detuning_p);
  put("Delta_c", cfg.probe.detuning_c);
  put("quad_tolerance", cfg.quadrature.tolerance);
  put_int("quad_initial_panels",
          static_cast<long>(cfg.quadrature.initial_panels));
  put_int("quad_max_panels", static_cast<long>(cfg.quadrature.max_panels));
  put_int("detuning_points", cfg.detuning_points);
  put("detuning_span", cfg.detuning_span);
  put_int("theta_points", cfg.theta_points);
  put("theta_span", cfg.theta_span);
  put_int("x_points", cfg.x_points);
  put("ell_min", cfg.length_min);
  put("ell_max", cfg.length_max);
  put_int("ell_points", cfg.length_points);
  put_int("nc_max", cfg.photon_max);
  if (cfg.sweep) {
    os << "sweep = " << cfg.sweep->parameter << "\n";
    put("sweep_min", cfg.sweep->lo);
    put("sweep_max", cfg.sweep->hi);
    put_int("sweep_points", cfg.sweep->points);
  }
  return os.str();
}

}  // namespace viag::io
