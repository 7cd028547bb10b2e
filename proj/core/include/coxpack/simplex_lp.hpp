#pragma once

#include <Eigen/Dense>

namespace coxpack {

// Solves   max epsilon  s.t.  A y >= epsilon * 1,  |y_k| <= box,  epsilon <= cap
// by a dense tableau simplex with Bland's rule. The origin (y = 0, eps = 0) is
// always feasible, so the optimum is >= 0; strict positivity of the margin is
// what callers test. Problem sizes here are tiny (tens of rows/columns).
struct MarginResult {
  double margin = 0.0;
  Eigen::VectorXd y;
};

MarginResult max_margin(const Eigen::MatrixXd& a, double box = 1e3,
                        double cap = 1.0);

}  // namespace coxpack
