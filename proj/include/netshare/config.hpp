#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "netshare/errors.hpp"
#include "netshare/montecarlo.hpp"
#include "netshare/optimize.hpp"
#include "netshare/rate.hpp"
#include "netshare/scenario.hpp"

namespace netshare {

/// Config problem tied to a source line (0 when the problem is a missing key
/// or a cross-field invariant).
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string field, int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run needs, resolved from a key-value config file.
/// Densities are per km^2 in the file and per m^2 here.
struct RunConfig {
  Scenario scenario;
  bool k_from_carrier = true;  // pathloss.k absent: derived from the carrier
  QuadratureConfig quadrature;
  RateOptions rate;
  SimConfig sim;
  DensitySearch search;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown, duplicate or
/// malformed keys raise ConfigError naming the line and key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text of a resolved config; parse_config(render_config(c))
/// reproduces c exactly.
std::string render_config(const RunConfig& c);

}  // namespace netshare
