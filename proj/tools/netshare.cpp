// netshare: aggregate downlink rate of two-operator cellular networks with and
// without spectrum/infrastructure sharing.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netshare/config.hpp"
#include "netshare/errors.hpp"
#include "netshare/report.hpp"
#include "netshare/workflows.hpp"

namespace {

using namespace netshare;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string config_path;
  std::string out;
  std::string manifest;
  std::optional<unsigned> threads;
  std::optional<std::size_t> realizations;
  std::optional<std::uint64_t> seed;
  std::string objective;
  std::string lambda_range;
  std::vector<double> w_ratios{0.2, 1, 2, 3, 4, 5};
  std::vector<double> p_ratios{0.2, 1, 5};
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path + "'");
}

void parse_lambda_range(const std::string& text, DensitySearch& search) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("--lambda-range", 0, "expected MIN:MAX in BS per km^2");
  }
  try {
    search.lambda_min = std::stod(text.substr(0, colon)) / 1e6;
    search.lambda_max = std::stod(text.substr(colon + 1)) / 1e6;
  } catch (const std::exception&) {
    throw ConfigError("--lambda-range", 0, "expected MIN:MAX in BS per km^2");
  }
  search.validate();
}

// Emits CSV to --out (or stdout after the human-readable text).
void emit(const Options& o, const std::string& human, const std::string& csv) {
  std::cout << human;
  if (o.out.empty()) {
    std::cout << '\n' << csv;
  } else {
    write_file(o.out, csv);
  }
}

void emit_manifest(const Options& o, const RunManifest& m) {
  const std::string path = !o.manifest.empty() ? o.manifest
                           : !o.out.empty()    ? o.out + ".manifest.json"
                                               : std::string();
  if (path.empty()) {
    std::cerr << m.to_json();
  } else {
    write_file(path, m.to_json());
  }
}

void execute(const std::string& command, RunConfig cfg, const Options& o, RunManifest manifest) {
  std::ostringstream human;
  std::string csv;
  if (command == "analyze") {
    const auto r = run_analyze(cfg);
    print_rate_report(human, r);
    csv = rate_report_csv(r);
  } else if (command == "simulate") {
    const auto rows = run_simulate(cfg);
    human << "Monte Carlo: " << cfg.sim.num_realizations << " realizations, seed " << cfg.sim.rng_seed
          << '\n';
    print_comparison(human, rows);
    csv = comparison_csv(rows);
  } else if (command == "optimize") {
    const auto r = run_optimize(cfg);
    human << "objective: " << to_string(cfg.search.objective) << '\n';
    human << "lambda* [BS/km^2]: " << format_double(r.lambda_star * 1e6);
    if (cfg.search.independent) human << " / " << format_double(r.lambda2_star * 1e6);
    human << "\nrate* [bit/s]: " << format_double(r.rate_star) << '\n';
    if (r.boundary) human << "warning: maximum on a search bound; extend the lambda range\n";
    if (r.plateau) human << "note: rate profile is flat over the search range\n";
    human << "neighbour check (+-" << cfg.search.neighbour_step * 100 << "%): "
          << (r.neighbour_check ? "pass" : "fail") << '\n';
    auto profile = r.profile;
    for (auto& p : profile) p.lambda *= 1e6;
    csv = profile_csv(profile);
  } else if (command == "table") {
    const auto cells = run_table(cfg, manifest.w_ratios, manifest.p_ratios);
    print_table(human, cells, manifest.w_ratios, manifest.p_ratios);
    for (const auto& c : cells) {
      if (!c.error.empty()) {
        human << "cell W2/W1=" << format_double(c.w_ratio) << " P2/P1=" << format_double(c.p_ratio)
              << " failed: " << c.error << '\n';
      }
    }
    csv = table_csv(cells);
  } else {
    throw ConfigError("command", 0, "unknown command '" + command + "'");
  }
  emit(o, human.str(), csv);
  manifest.timestamp = utc_timestamp();
  emit_manifest(o, manifest);
}

unsigned resolve_threads(const Options& o) {
  if (o.threads) return *o.threads;
  if (const char* env = std::getenv("NETSHARE_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw ConfigError("NETSHARE_THREADS", 0, "expected a non-negative integer");
    }
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Two-operator cellular rate analysis with spectrum and infrastructure sharing"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "CSV output path (default: stdout)");
  app.add_option("--manifest", o.manifest, "Run manifest path (default: <out>.manifest.json)");
  app.add_option("--threads", o.threads, "Worker threads, 0 = auto (env NETSHARE_THREADS)");

  auto* analyze = app.add_subcommand("analyze", "Analytic non-sharing and sharing rates");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates next to the analytic rates");
  auto* optimize = app.add_subcommand("optimize", "Rate-maximizing BS density");
  auto* table = app.add_subcommand("table", "Density-optimized rate grid over bandwidth and power ratios");
  auto* replay = app.add_subcommand("replay", "Re-run a recorded manifest");
  for (auto* sc : {analyze, simulate, optimize, table}) {
    sc->add_option("config", o.config_path, "Scenario config file")->required();
    sc->fallthrough();
  }
  simulate->add_option("--realizations", o.realizations, "Number of network realizations");
  simulate->add_option("--seed", o.seed, "RNG seed");
  optimize->add_option("--objective", o.objective, "nonsharing | sharing");
  optimize->add_option("--lambda-range", o.lambda_range, "MIN:MAX in BS per km^2");
  table->add_option("--w-ratios", o.w_ratios, "W2/W1 values")->delimiter(',');
  table->add_option("--p-ratios", o.p_ratios, "P2/P1 values")->delimiter(',');
  std::string manifest_in;
  replay->add_option("manifest", manifest_in, "Manifest JSON written by an earlier run")->required();
  replay->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunManifest manifest;
    RunConfig cfg;
    std::string command;
    if (replay->parsed()) {
      std::ifstream f(manifest_in);
      if (!f) throw IoError("cannot read manifest '" + manifest_in + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      manifest = RunManifest::from_json(ss.str());
      command = manifest.command;
      cfg = parse_config(manifest.config);
      cfg.sim.threads = resolve_threads(o);
    } else {
      command = app.get_subcommands().front()->get_name();
      cfg = load_config(o.config_path);
      if (o.realizations) cfg.sim.num_realizations = *o.realizations;
      if (o.seed) cfg.sim.rng_seed = *o.seed;
      if (!o.objective.empty()) cfg.search.objective = objective_from_string(o.objective);
      if (!o.lambda_range.empty()) parse_lambda_range(o.lambda_range, cfg.search);
      cfg.sim.validate();
      cfg.sim.threads = resolve_threads(o);
      manifest.command = command;
      if (command == "table") {
        manifest.w_ratios = o.w_ratios;
        manifest.p_ratios = o.p_ratios;
      }
      manifest.config = render_config(cfg);
    }
    manifest.threads = cfg.sim.threads;
    execute(command, cfg, o, manifest);
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error in " << e.component() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
