#include "doctest.h"
#include "netshare/errors.hpp"
#include "netshare/optimize.hpp"
#include "support.hpp"

using namespace netshare;

namespace {

DensitySearch coarse(Objective o = Objective::NonSharing) {
  DensitySearch d;
  d.lambda_min = 1e-6;
  d.lambda_max = 1e-3;
  d.grid_points = 8;
  d.refine_iters = 12;
  d.objective = o;
  return d;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("two-ball model has an interior optimum") {
  const QuadratureConfig qc;
  for (auto o : {Objective::NonSharing, Objective::Sharing}) {
    const auto r = optimal_density(nstest::sec4(), coarse(o), qc);
    CHECK_FALSE(r.boundary);
    CHECK_FALSE(r.plateau);
    CHECK(r.neighbour_check);
    CHECK(r.lambda_star > 1e-6);
    CHECK(r.lambda_star < 1e-3);
    CHECK(r.lambda2_star == r.lambda_star);
    REQUIRE(r.profile.size() == 8);
    CHECK(r.profile.front().lambda == 1e-6);
    CHECK(r.profile.back().lambda == 1e-3);
    // Rises then falls.
    CHECK(r.profile.front().rate < r.rate_star);
    CHECK(r.profile.back().rate < r.rate_star);
    double best_grid = 0.0;
    for (const auto& p : r.profile) best_grid = std::max(best_grid, p.rate);
    CHECK(r.rate_star >= best_grid);
    CHECK(r.rate_star == objective_rate(nstest::sec4(), r.lambda_star, r.lambda_star, o, qc, {}));
  }
}

TEST_CASE("deterministic") {
  const QuadratureConfig qc;
  const auto a = optimal_density(nstest::sec4(), coarse(), qc);
  const auto b = optimal_density(nstest::sec4(), coarse(), qc);
  CHECK(a.lambda_star == b.lambda_star);
  CHECK(a.rate_star == b.rate_star);
  CHECK(a.profile == b.profile);
}

TEST_CASE("single-slope interference-limited model is flat in density") {
  auto s = nstest::sec4();
  s.link_state = {0.0, 0.0, 109.8517};
  RateOptions quiet;
  quiet.noise_override_w = 1e-30;
  const auto r = optimal_density(s, coarse(), QuadratureConfig{}, quiet);
  CHECK(r.plateau);
  CHECK_FALSE(r.boundary);
}

TEST_CASE("zero-width range returns the single point") {
  auto d = coarse();
  d.lambda_max = d.lambda_min = 3e-5;
  const auto r = optimal_density(nstest::sec4(), d, QuadratureConfig{});
  CHECK(r.lambda_star == 3e-5);
  REQUIRE(r.profile.size() == 1);
  CHECK(r.profile[0].rate == r.rate_star);
}

TEST_CASE("maximum on the search bound is flagged") {
  auto d = coarse();
  d.lambda_min = 1e-7;
  d.lambda_max = 2e-6;  // well below the optimum: the rate still rises at the top
  const auto r = optimal_density(nstest::sec4(), d, QuadratureConfig{});
  CHECK(r.boundary);
}

TEST_CASE("independent sweep searches both densities") {
  auto s = nstest::sec4();
  s.op2.power_p = 5.0;
  auto d = coarse();
  d.independent = true;
  d.refine_iters = 6;
  const QuadratureConfig qc;
  const auto r = optimal_density(s, d, qc);
  CHECK(r.rate_star == objective_rate(s, r.lambda_star, r.lambda2_star, d.objective, qc, {}));
  const auto shared = optimal_density(s, coarse(), qc);
  CHECK(r.rate_star >= shared.rate_star * (1.0 - 1e-3));
}

TEST_CASE("objective names and validation") {
  CHECK(objective_from_string(to_string(Objective::Sharing)) == Objective::Sharing);
  CHECK(objective_from_string("nonsharing") == Objective::NonSharing);
  CHECK_THROWS_AS(objective_from_string("both"), ValidationError);
  auto d = coarse();
  d.grid_points = 7;
  CHECK_THROWS_AS(d.validate(), ValidationError);
  d = coarse();
  d.lambda_min = 2e-3;
  CHECK_THROWS_AS(d.validate(), ValidationError);
  d = coarse();
  d.lambda_min = 0.0;
  CHECK_THROWS_AS(d.validate(), ValidationError);
}

}  // TEST_SUITE
