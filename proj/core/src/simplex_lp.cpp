#include "coxpack/simplex_lp.hpp"

#include <vector>

namespace coxpack {

namespace {
constexpr double kPivotTol = 1e-11;
}

// Tableau simplex, maximization, all variables >= 0, rows A x <= b with
// b >= 0 so the slack basis is feasible. Bland's rule, which matters here:
// most right-hand sides are zero and degenerate pivots are the common case.
MarginResult max_margin(const Eigen::MatrixXd& a, double box, double cap) {
  const int m = int(a.rows());
  const int d = int(a.cols());
  const int nv = 2 * d + 1;        // eps, u, v
  const int mr = m + 2 * d + 1;    // margin rows, box rows, cap row

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mr + 1, nv + mr + 1);
  for (int i = 0; i < m; ++i) {
    t(i, 0) = 1.0;
    for (int k = 0; k < d; ++k) {
      t(i, 1 + k) = -a(i, k);
      t(i, 1 + d + k) = a(i, k);
    }
  }
  for (int k = 0; k < 2 * d; ++k) {
    t(m + k, 1 + k) = 1.0;
    t(m + k, nv + mr) = box;
  }
  t(m + 2 * d, 0) = 1.0;
  t(m + 2 * d, nv + mr) = cap;
  for (int i = 0; i < mr; ++i) t(i, nv + i) = 1.0;
  t(mr, 0) = -1.0;  // cost row holds -c; optimal when all entries >= 0

  std::vector<int> basis(mr);
  for (int i = 0; i < mr; ++i) basis[i] = nv + i;

  for (long iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < nv + mr; ++j)
      if (t(mr, j) < -kPivotTol) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < mr; ++i) {
      if (t(i, enter) <= kPivotTol) continue;
      double ratio = t(i, nv + mr) / t(i, enter);
      if (leave < 0 || ratio < best - kPivotTol ||
          (ratio < best + kPivotTol && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded; cannot happen with the cap/box rows
    double piv = t(leave, enter);
    t.row(leave) /= piv;
    for (int i = 0; i <= mr; ++i) {
      if (i == leave) continue;
      double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < mr; ++i)
    if (basis[i] < nv) x(basis[i]) = t(i, nv + mr);

  MarginResult r;
  r.margin = x(0);
  r.y = x.segment(1, d) - x.segment(1 + d, d);
  return r;
}

}  // namespace coxpack
