#pragma once

#include <string>
#include <vector>

#include "fjc/states.hpp"

namespace fjc {

struct ExpectationRecord {
  double t = 0.0;
  double n_x = 0.0;
  double n_y = 0.0;
  double sigma_z = 0.0;
  double norm = 0.0;
  double N_total = 0.0;
};

struct Trajectory {
  std::string method;
  std::vector<double> times;
  std::vector<ExpectationRecord> records;
  std::vector<CoupledState> states;  // empty unless snapshots were requested
};

}  // namespace fjc
