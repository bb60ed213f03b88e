#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "netshare/scenario.hpp"

namespace nstest {

// Two-ball propagation used throughout the examples; carrier at 2.1 GHz.
inline netshare::Scenario sec4(double lambda = 1e-4, double power = 20.0) {
  netshare::Scenario s;
  s.carrier_freq_fc = 2.1e9;
  s.path_loss = {netshare::pathloss_constant(2.1e9), 2.5, 3.5};
  s.link_state = {0.7195, 0.0002, 109.8517};
  s.op1 = {lambda, 10e6, power, 10.0};
  s.op2 = s.op1;
  return s;
}

// Single slope: every link NLOS.
inline netshare::Scenario all_nlos() {
  netshare::Scenario s = sec4();
  s.link_state = {0.0, 0.0, 109.8517};
  s.op1 = {20e-6, 10e6, 20.0, 10.0};
  s.op2 = {50e-6, 20e6, 5.0, 7.0};
  return s;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline std::string config_path(const std::string& name) {
  return std::string(NETSHARE_CONFIG_DIR) + "/" + name;
}

}  // namespace nstest
