#pragma once

#include <string>
#include <vector>

#include "netshare/rate.hpp"
#include "netshare/scenario.hpp"

namespace netshare {

enum class Objective { NonSharing, Sharing };

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

struct DensitySearch {
  double lambda_min = 1e-6;  // per m^2
  double lambda_max = 1e-2;
  int grid_points = 16;
  int refine_iters = 30;
  Objective objective = Objective::NonSharing;
  /// Sweep lambda_1 and lambda_2 separately (coordinate ascent) instead of a
  /// shared density.
  bool independent = false;
  /// Relative spread of the profile below which it is reported as flat.
  double plateau_rel_tol = 1e-6;
  /// Relative step of the local-maximum neighbour check.
  double neighbour_step = 0.02;

  void validate() const;
};

struct ProfilePoint {
  double lambda;
  double rate;

  bool operator==(const ProfilePoint&) const = default;
};

struct DensityOptimum {
  double lambda_star = 0.0;
  double lambda2_star = 0.0;  // equals lambda_star unless the search is independent
  double rate_star = 0.0;     // aggregate rate in bit/s
  std::vector<ProfilePoint> profile;
  bool boundary = false;       // grid maximum sits on a search bound
  bool plateau = false;        // profile flat within plateau_rel_tol
  bool neighbour_check = false;  // rate(lambda* (1 +- step)) <= rate*
};

/// Aggregate rate (bit/s) of the chosen setup with both operators at `lambda`.
double objective_rate(const Scenario& tmpl, double lambda1, double lambda2, Objective objective,
                      const QuadratureConfig& qc, const RateOptions& opt);

/// Log-spaced grid over [lambda_min, lambda_max] followed by golden-section
/// refinement (in log lambda) around the best grid cell.
DensityOptimum optimal_density(const Scenario& tmpl, const DensitySearch& search,
                               const QuadratureConfig& qc, const RateOptions& opt = {});

}  // namespace netshare
