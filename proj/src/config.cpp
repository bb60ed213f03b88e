#include "netshare/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace netshare {

namespace {

constexpr double kM2PerKm2 = 1e6;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v, int line) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double d = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(d)) {
    throw ConfigError(key, line, "expected a finite number, got '" + v + "'");
  }
  return d;
}

long long to_integer(const std::string& key, const std::string& v, int line) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(key, line, "expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, line, "expected true or false, got '" + v + "'");
}

std::string fmt(double d) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

// Per-km^2 text whose parse reproduces lambda bit for bit.
std::string fmt_density(double lambda) {
  double v = lambda * kM2PerKm2;
  for (int step = 0; step < 8; ++step) {
    for (double cand : {v, std::nextafter(v, 0.0), std::nextafter(v, HUGE_VAL)}) {
      if (cand / kM2PerKm2 == lambda) return fmt(cand);
    }
    v = std::nextafter(v, v / kM2PerKm2 > lambda ? 0.0 : HUGE_VAL);
  }
  return fmt(lambda * kM2PerKm2);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

struct KeySpec {
  bool required;
  Setter set;
};

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = [] {
    std::map<std::string, KeySpec> t;
    auto num = [&](const char* key, bool required, std::function<void(RunConfig&, double)> f) {
      t[key] = {required, [key, f](RunConfig& c, const std::string& v, int line) {
                  f(c, to_double(key, v, line));
                }};
    };
    num("scenario.carrier_freq_hz", true, [](RunConfig& c, double d) { c.scenario.carrier_freq_fc = d; });
    num("pathloss.alpha_los", true, [](RunConfig& c, double d) { c.scenario.path_loss.alpha_los = d; });
    num("pathloss.alpha_nlos", true, [](RunConfig& c, double d) { c.scenario.path_loss.alpha_nlos = d; });
    num("pathloss.k", false, [](RunConfig& c, double d) {
      c.scenario.path_loss.k = d;
      c.k_from_carrier = false;
    });
    num("linkstate.d_meters", true, [](RunConfig& c, double d) { c.scenario.link_state.ball_radius_d = d; });
    num("linkstate.q_los_inner", true, [](RunConfig& c, double d) { c.scenario.link_state.q_los_inner = d; });
    num("linkstate.q_los_outer", true, [](RunConfig& c, double d) { c.scenario.link_state.q_los_outer = d; });
    for (int j = 1; j <= 2; ++j) {
      const std::string p = "operator" + std::to_string(j) + ".";
      auto op = [j](RunConfig& c) -> OperatorParams& { return c.scenario.op(j); };
      t[p + "density_per_km2"] = {true, [op, k = p + "density_per_km2"](RunConfig& c, const std::string& v, int l) {
                                    op(c).density_lambda = to_double(k, v, l) / kM2PerKm2;
                                  }};
      t[p + "bandwidth_hz"] = {true, [op, k = p + "bandwidth_hz"](RunConfig& c, const std::string& v, int l) {
                                 op(c).bandwidth_w = to_double(k, v, l);
                               }};
      t[p + "power_w"] = {true, [op, k = p + "power_w"](RunConfig& c, const std::string& v, int l) {
                            op(c).power_p = to_double(k, v, l);
                          }};
      t[p + "noise_figure_db"] = {true, [op, k = p + "noise_figure_db"](RunConfig& c, const std::string& v, int l) {
                                    op(c).noise_figure_nf = to_double(k, v, l);
                                  }};
    }
    t["rate.sharing_noise_bandwidth"] = {false, [](RunConfig& c, const std::string& v, int l) {
                                           try {
                                             c.rate.sharing_noise_bandwidth = noise_bandwidth_from_string(v);
                                           } catch (const ValidationError& e) {
                                             throw ConfigError(e.field(), l, "expected per_operator or combined");
                                           }
                                         }};
    num("quadrature.rel_tol", false, [](RunConfig& c, double d) { c.quadrature.rel_tol = d; });
    num("quadrature.abs_tol", false, [](RunConfig& c, double d) { c.quadrature.abs_tol = d; });
    t["quadrature.max_subdivisions"] = {false, [](RunConfig& c, const std::string& v, int l) {
                                          c.quadrature.max_subdivisions =
                                              static_cast<int>(to_integer("quadrature.max_subdivisions", v, l));
                                        }};
    num("quadrature.outer_truncation_quantile", false,
        [](RunConfig& c, double d) { c.quadrature.outer_truncation_quantile = d; });
    t["sim.realizations"] = {false, [](RunConfig& c, const std::string& v, int l) {
                               const auto n = to_integer("sim.realizations", v, l);
                               if (n < 1) throw ConfigError("sim.realizations", l, "must be >= 1");
                               c.sim.num_realizations = static_cast<std::size_t>(n);
                             }};
    t["sim.seed"] = {false, [](RunConfig& c, const std::string& v, int l) {
                       std::uint64_t s = 0;
                       const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
                       if (ec != std::errc() || p != v.data() + v.size()) {
                         throw ConfigError("sim.seed", l, "expected an unsigned 64-bit integer");
                       }
                       c.sim.rng_seed = s;
                     }};
    num("sim.window_radius_m", false, [](RunConfig& c, double d) { c.sim.window_radius = d; });
    num("optimize.lambda_min_per_km2", false, [](RunConfig& c, double d) { c.search.lambda_min = d / kM2PerKm2; });
    num("optimize.lambda_max_per_km2", false, [](RunConfig& c, double d) { c.search.lambda_max = d / kM2PerKm2; });
    t["optimize.grid_points"] = {false, [](RunConfig& c, const std::string& v, int l) {
                                   c.search.grid_points = static_cast<int>(to_integer("optimize.grid_points", v, l));
                                 }};
    t["optimize.refine_iters"] = {false, [](RunConfig& c, const std::string& v, int l) {
                                    c.search.refine_iters = static_cast<int>(to_integer("optimize.refine_iters", v, l));
                                  }};
    t["optimize.objective"] = {false, [](RunConfig& c, const std::string& v, int l) {
                                 try {
                                   c.search.objective = objective_from_string(v);
                                 } catch (const ValidationError&) {
                                   throw ConfigError("optimize.objective", l, "expected nonsharing or sharing");
                                 }
                               }};
    t["optimize.independent"] = {false, [](RunConfig& c, const std::string& v, int l) {
                                   c.search.independent = to_bool("optimize.independent", v, l);
                                 }};
    return t;
  }();
  return table;
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& what)
    : ValidationError(field,
                      (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + field +
                          ": " + what,
                      PreformattedTag{}),
      line_(line) {}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  c.search.lambda_min = 0.1 / kM2PerKm2;
  c.search.lambda_max = 1000.0 / kM2PerKm2;
  c.search.refine_iters = 24;
  std::map<std::string, int> seen;
  const auto& table = key_table();
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(trim(line), line_no, "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, line_no, "unknown key");
    if (!seen.emplace(key, line_no).second) throw ConfigError(key, line_no, "duplicate key");
    if (value.empty()) throw ConfigError(key, line_no, "missing value");
    it->second.set(c, value, line_no);
  }
  for (const auto& [key, spec] : table) {
    if (spec.required && !seen.count(key)) throw ConfigError(key, 0, "required key is missing");
  }
  if (c.k_from_carrier) {
    try {
      c.scenario.path_loss.k = pathloss_constant(c.scenario.carrier_freq_fc);
    } catch (const DomainError&) {
      throw ConfigError("scenario.carrier_freq_hz", seen.at("scenario.carrier_freq_hz"), "must be positive");
    }
  }
  try {
    c.scenario.validate();
    c.quadrature.validate();
    c.sim.validate();
    c.search.validate();
  } catch (const ValidationError& e) {
    // Point at the offending line when the field maps to a single key.
    const auto at = seen.find(e.field());
    const std::string what = std::string(e.what()).substr(e.field().size() + 2);
    throw ConfigError(e.field(), at == seen.end() ? 0 : at->second, what);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream o;
  const auto& s = c.scenario;
  o << "scenario.carrier_freq_hz = " << fmt(s.carrier_freq_fc) << '\n';
  o << "pathloss.alpha_los = " << fmt(s.path_loss.alpha_los) << '\n';
  o << "pathloss.alpha_nlos = " << fmt(s.path_loss.alpha_nlos) << '\n';
  if (!c.k_from_carrier) o << "pathloss.k = " << fmt(s.path_loss.k) << '\n';
  o << "linkstate.d_meters = " << fmt(s.link_state.ball_radius_d) << '\n';
  o << "linkstate.q_los_inner = " << fmt(s.link_state.q_los_inner) << '\n';
  o << "linkstate.q_los_outer = " << fmt(s.link_state.q_los_outer) << '\n';
  for (int j = 1; j <= 2; ++j) {
    const auto& op = s.op(j);
    const std::string p = "operator" + std::to_string(j) + ".";
    o << p << "density_per_km2 = " << fmt_density(op.density_lambda) << '\n';
    o << p << "bandwidth_hz = " << fmt(op.bandwidth_w) << '\n';
    o << p << "power_w = " << fmt(op.power_p) << '\n';
    o << p << "noise_figure_db = " << fmt(op.noise_figure_nf) << '\n';
  }
  o << "rate.sharing_noise_bandwidth = " << to_string(c.rate.sharing_noise_bandwidth) << '\n';
  o << "quadrature.rel_tol = " << fmt(c.quadrature.rel_tol) << '\n';
  o << "quadrature.abs_tol = " << fmt(c.quadrature.abs_tol) << '\n';
  o << "quadrature.max_subdivisions = " << c.quadrature.max_subdivisions << '\n';
  o << "quadrature.outer_truncation_quantile = " << fmt(c.quadrature.outer_truncation_quantile) << '\n';
  o << "sim.realizations = " << c.sim.num_realizations << '\n';
  o << "sim.seed = " << c.sim.rng_seed << '\n';
  o << "sim.window_radius_m = " << fmt(c.sim.window_radius) << '\n';
  o << "optimize.lambda_min_per_km2 = " << fmt_density(c.search.lambda_min) << '\n';
  o << "optimize.lambda_max_per_km2 = " << fmt_density(c.search.lambda_max) << '\n';
  o << "optimize.grid_points = " << c.search.grid_points << '\n';
  o << "optimize.refine_iters = " << c.search.refine_iters << '\n';
  o << "optimize.objective = " << to_string(c.search.objective) << '\n';
  o << "optimize.independent = " << (c.search.independent ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace netshare
