#include "coxpack/balls.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "coxpack/errors.hpp"

namespace coxpack {

namespace {

constexpr int kViolationCap = 100;
constexpr int kBlock = 1024;

Eigen::VectorXd timelike_axis(const BilinearForm& b, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.m);
  Signature sig = signature(b, tol);
  if (!is_lorentzian(sig)) throw NotLorentzian("signature is not (n-1, 0, 1)");
  Eigen::VectorXd t = es.eigenvectors().col(0);
  for (int i = 0; i < t.size(); ++i) {
    if (std::abs(t(i)) > 1e-12) {
      if (t(i) < 0) t = -t;
      break;
    }
  }
  return t;
}

PairRelation::Kind classify_value(double v, double tangency_band) {
  if (std::abs(v + 1.0) <= tangency_band) return PairRelation::Tangent;
  if (v < -1.0) return PairRelation::Disjoint;
  if (v <= 0.0) return PairRelation::Overlap;
  if (v < 1.0 - tangency_band) return PairRelation::HeavyOverlap;
  return PairRelation::Contained;
}

// Space-like members as unit columns, keeping each element's own time
// orientation. Returns the original indices of the kept columns.
std::vector<int> unit_columns(const std::vector<OrbitElement>& elements,
                              const BilinearForm& b, const Tolerances& tol,
                              Eigen::MatrixXd& units) {
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    double nn = b.norm_of(elements[i].vector);
    if (nn > tol.lightlike) kept.push_back(i);
  }
  units.resize(b.dim(), static_cast<int>(kept.size()));
  for (int c = 0; c < static_cast<int>(kept.size()); ++c) {
    const Eigen::VectorXd& v = elements[kept[c]].vector;
    units.col(c) = v / std::sqrt(b.norm_of(v));
  }
  return kept;
}

}  // namespace

const char* to_string(PairRelation::Kind k) {
  switch (k) {
    case PairRelation::Disjoint:
      return "disjoint";
    case PairRelation::Tangent:
      return "tangent";
    case PairRelation::Overlap:
      return "overlap";
    case PairRelation::HeavyOverlap:
      return "heavy-overlap";
    case PairRelation::Contained:
      return "contained";
  }
  return "?";
}

LorentzFrame packing_frame(const RootBasis& basis, const Tolerances& tol) {
  Eigen::VectorXd t = timelike_axis(basis.form, tol);
  Eigen::VectorXd chamber = Eigen::VectorXd::Zero(basis.rho());
  for (const WeightVector& w : weights(basis, tol)) chamber += w.vector;
  if (basis.form(t, chamber) > 0) t = -t;
  return lorentz_frame(basis.form, t, tol);
}

LorentzFrame frame_from_form(const BilinearForm& b, const Tolerances& tol) {
  return lorentz_frame(b, timelike_axis(b, tol), tol);
}

Eigen::VectorXd normalize(const Eigen::VectorXd& x, const BilinearForm& b,
                          const LorentzFrame& frame, const Tolerances& tol) {
  double nn = b.norm_of(x);
  if (nn <= tol.zero) throw NotSpaceLike("ball_of_vector: vector is not space-like");
  Eigen::VectorXd unit = x / std::sqrt(nn);
  if (frame.last_coordinate(unit) < 0) unit = -unit;
  return unit;
}

Ball ball_of_vector(const Eigen::VectorXd& x, const LorentzFrame& frame,
                    const Tolerances& tol) {
  const int rho = static_cast<int>(frame.transform.rows());
  if (rho < 3) throw UnsupportedDimension("plane packings only");
  const int d = rho - 2;

  Eigen::VectorXd unit = normalize(x, frame.form, frame, tol);
  Eigen::VectorXd y = frame.to_minkowski(unit);
  Eigen::VectorXd w = y.head(rho - 1);
  double b = y(rho - 1);

  Ball ball;
  ball.dim = d;
  ball.source = unit;

  double k = w(d) - b;
  if (std::abs(k) <= tol.zero) {
    ball.curvature = 0.0;
    double nn = w.head(d).norm();
    ball.normal = -w.head(d) / nn;
    ball.offset = -b / nn;
    ball.center = Eigen::VectorXd::Zero(d);
    return ball;
  }

  double wn = w.norm();
  Eigen::VectorXd cap_center = w / wn;
  double cos_t = b / wn;
  double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));

  Eigen::VectorXd pole = Eigen::VectorXd::Zero(rho - 1);
  pole(d) = 1.0;
  Eigen::VectorXd tangent = pole - pole.dot(cap_center) * cap_center;
  if (tangent.norm() < 1e-9) {
    tangent = Eigen::VectorXd::Zero(rho - 1);
    tangent(0) = 1.0;
  } else {
    tangent /= tangent.norm();
  }

  Eigen::VectorXd u_plus = cos_t * cap_center + sin_t * tangent;
  Eigen::VectorXd u_minus = cos_t * cap_center - sin_t * tangent;
  auto stereo = [d](const Eigen::VectorXd& u) {
    return Eigen::VectorXd(u.head(d) / (1.0 - u(d)));
  };
  Eigen::VectorXd p_plus = stereo(u_plus);
  Eigen::VectorXd p_minus = stereo(u_minus);

  ball.center = 0.5 * (p_plus + p_minus);
  double radius = 0.5 * (p_plus - p_minus).norm();
  ball.curvature = (k < 0 ? 1.0 : -1.0) / radius;
  ball.normal = Eigen::VectorXd::Zero(d);
  ball.offset = 0.0;
  return ball;
}

PairRelation pair_relation(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const BilinearForm& b, const Tolerances& tol) {
  LorentzFrame frame = frame_from_form(b, tol);
  Eigen::VectorXd xu = normalize(x, b, frame, tol);
  Eigen::VectorXd yu = normalize(y, b, frame, tol);
  PairRelation rel;
  rel.value = b(xu, yu);
  rel.kind = classify_value(rel.value, tol.tangency);
  return rel;
}

PackingReport verify_packing(const std::vector<OrbitElement>& elements,
                             const BilinearForm& b, const Tolerances& tol,
                             int threads) {
  LorentzFrame frame = frame_from_form(b, tol);
  Eigen::MatrixXd units;
  std::vector<int> kept = unit_columns(elements, b, tol, units);
  const int k = static_cast<int>(kept.size());

  PackingReport report;
  report.ball_count = k;

  long long neg = 0, pos = 0;
  for (int c = 0; c < k; ++c) {
    if (frame.last_coordinate(units.col(c)) < 0)
      ++neg;
    else
      ++pos;
  }
  report.future_directed = std::min(neg, pos);

  Eigen::MatrixXd paired = b.m * units;

  struct BlockJob {
    int s1, n1, s2, n2;
  };
  std::vector<BlockJob> jobs;
  for (int s1 = 0; s1 < k; s1 += kBlock)
    for (int s2 = s1; s2 < k; s2 += kBlock)
      jobs.push_back({s1, std::min(kBlock, k - s1), s2,
                      std::min(kBlock, k - s2)});

  struct BlockResult {
    long long histogram[5] = {0, 0, 0, 0, 0};
    std::vector<std::pair<int, int>> violations;
  };
  std::vector<BlockResult> results(jobs.size());

  auto run_job = [&](size_t jidx) {
    const BlockJob& job = jobs[jidx];
    BlockResult& res = results[jidx];
    Eigen::MatrixXd prod = units.middleCols(job.s1, job.n1).transpose() *
                           paired.middleCols(job.s2, job.n2);
    for (int a = 0; a < job.n1; ++a) {
      int jstart = (job.s1 == job.s2) ? a + 1 : 0;
      for (int c = jstart; c < job.n2; ++c) {
        PairRelation::Kind kind = classify_value(prod(a, c), tol.tangency);
        ++res.histogram[kind];
        if (kind != PairRelation::Disjoint && kind != PairRelation::Tangent &&
            static_cast<int>(res.violations.size()) < kViolationCap)
          res.violations.emplace_back(kept[job.s1 + a], kept[job.s2 + c]);
      }
    }
  };

  threads = std::max(1, threads);
  if (threads == 1 || jobs.size() < 2) {
    for (size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        for (size_t j = next.fetch_add(1); j < jobs.size();
             j = next.fetch_add(1))
          run_job(j);
      });
    for (auto& th : pool) th.join();
  }

  for (const BlockResult& res : results) {
    for (int i = 0; i < 5; ++i) report.histogram[i] += res.histogram[i];
    for (const auto& v : res.violations)
      if (static_cast<int>(report.violations.size()) < kViolationCap)
        report.violations.push_back(v);
  }
  report.is_packing = report.histogram[PairRelation::Overlap] == 0 &&
                      report.histogram[PairRelation::HeavyOverlap] == 0 &&
                      report.histogram[PairRelation::Contained] == 0 &&
                      report.future_directed <= 1;
  return report;
}

std::vector<std::pair<int, int>> tangency_graph(
    const std::vector<OrbitElement>& elements, const BilinearForm& b,
    const Tolerances& tol) {
  Eigen::MatrixXd units;
  std::vector<int> kept = unit_columns(elements, b, tol, units);
  const int k = static_cast<int>(kept.size());
  Eigen::MatrixXd paired = b.m * units;

  std::vector<std::pair<int, int>> edges;
  for (int s1 = 0; s1 < k; s1 += kBlock) {
    int n1 = std::min(kBlock, k - s1);
    for (int s2 = s1; s2 < k; s2 += kBlock) {
      int n2 = std::min(kBlock, k - s2);
      Eigen::MatrixXd prod = units.middleCols(s1, n1).transpose() *
                             paired.middleCols(s2, n2);
      for (int a = 0; a < n1; ++a) {
        int jstart = (s1 == s2) ? a + 1 : 0;
        for (int c = jstart; c < n2; ++c)
          if (std::abs(prod(a, c) + 1.0) <= tol.tangency)
            edges.emplace_back(kept[s1 + a], kept[s2 + c]);
      }
    }
  }
  return edges;
}

std::optional<Eigen::VectorXd> isotropic_point(const Eigen::VectorXd& x,
                                               const LorentzFrame& frame,
                                               const Tolerances& tol) {
  const int rho = static_cast<int>(frame.transform.rows());
  if (rho < 3) throw UnsupportedDimension("plane packings only");
  const int d = rho - 2;
  Eigen::VectorXd y = frame.to_minkowski(x);
  double b = y(rho - 1);
  if (std::abs(b) <= tol.zero) return std::nullopt;
  Eigen::VectorXd u = y.head(rho - 1) / b;
  double un = u.norm();
  if (un <= tol.zero) return std::nullopt;
  u /= un;
  if (1.0 - u(d) <= tol.lightlike) return std::nullopt;
  return Eigen::VectorXd(u.head(d) / (1.0 - u(d)));
}

}  // namespace coxpack
