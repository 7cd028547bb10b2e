#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <coxpack/balls.hpp>
#include <coxpack/canon.hpp>
#include <coxpack/svg.hpp>
#include <random>
#include <set>
#include <vector>

using namespace coxpack;

namespace {

// Stereographic projection from the north pole of the unit sphere in R^d
// onto the equatorial plane R^(d-1).
Eigen::VectorXd stereo(const Eigen::VectorXd& u) {
  int d = int(u.size());
  return u.head(d - 1) / (1.0 - u(d - 1));
}

// Signed containment: positive inside the closed region, negative outside,
// zero on the boundary, for all three ball shapes.
double region_depth(const Eigen::VectorXd& p, const Ball& ball) {
  if (ball.is_halfspace()) return ball.offset - p.dot(ball.normal);
  double dist = (p - ball.center).norm();
  if (ball.curvature > 0) return ball.radius() - dist;
  return dist - ball.radius();
}

// Euclidean inversive product of two circles with signed radii. Tangent
// externally at +1, orthogonal at 0, internally tangent at -1, beyond those
// bands disjoint or nested.
double inversive_product(const Ball& a, const Ball& b) {
  REQUIRE(!a.is_halfspace());
  REQUIRE(!b.is_halfspace());
  double r1 = 1.0 / a.curvature;
  double r2 = 1.0 / b.curvature;
  double d2 = (a.center - b.center).squaredNorm();
  return (d2 - r1 * r1 - r2 * r2) / (2.0 * r1 * r2);
}

Eigen::VectorXd random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd u(d);
  for (;;) {
    for (int i = 0; i < d; ++i) u(i) = gauss(rng);
    double n = u.norm();
    if (n > 1e-3) return u / n;
  }
}

Eigen::VectorXd random_spacelike(const BilinearForm& b, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd x(b.dim());
  for (;;) {
    for (int i = 0; i < b.dim(); ++i) x(i) = gauss(rng);
    if (b(x, x) > 0.1) return x;
  }
}

BilinearForm minkowski_form(int dim) {
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(dim);
  diag(dim - 1) = -1.0;
  return BilinearForm{Eigen::MatrixXd(diag.asDiagonal())};
}

CoxeterGraph cycle_inf(int n) {
  CoxeterGraph g(n);
  for (int i = 0; i < n; ++i) g.set_label(i, (i + 1) % n, EdgeLabel::infinite());
  return g;
}

CoxeterGraph complete_inf(int n) {
  CoxeterGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_label(i, j, EdgeLabel::infinite());
  return g;
}

std::vector<OrbitElement> weight_orbit(const RootBasis& rb, int word_length) {
  OrbitBudget budget;
  budget.max_word_length = word_length;
  return orbit_weights(rb, budget);
}

// Checks that the ball is exactly the stereographic image of the sphere cap
// cut out by the vector: random directions land on the matching side, the
// cap boundary circle lands on the ball boundary, and isotropic_point sends
// boundary light directions to the same boundary.
void check_cap_geometry(const Eigen::VectorXd& x, const BilinearForm& b,
                        const LorentzFrame& frame, std::mt19937_64& rng) {
  const int d = b.dim() - 1;
  Eigen::VectorXd xhat = normalize(x, b, frame);
  Ball ball = ball_of_vector(x, frame);
  CHECK(ball.dim == d - 1);
  CHECK(ball.source.isApprox(xhat, 1e-12));

  Eigen::VectorXd xm = frame.to_minkowski(xhat);
  Eigen::VectorXd s = xm.head(d);
  double t = xm(d) * frame.past_axis_sign;
  REQUIRE(s.norm() > 1e-9);
  Eigen::VectorXd w = s.normalized();
  double cap = t / s.norm();
  REQUIRE(std::abs(cap) < 1.0);

  for (int k = 0; k < 200; ++k) {
    Eigen::VectorXd u = random_unit(d, rng);
    double side = s.dot(u) - t;
    if (std::abs(side) < 1e-6) continue;
    if (std::abs(1.0 - u(d - 1)) < 1e-6) continue;
    double dep = region_depth(stereo(u), ball);
    CHECK((side > 0) == (dep > 0));
  }

  if (ball.is_halfspace()) return;
  for (int k = 0; k < 16; ++k) {
    Eigen::VectorXd a = random_unit(d, rng);
    a -= a.dot(w) * w;
    if (a.norm() < 1e-6) continue;
    a.normalize();
    Eigen::VectorXd ub = cap * w + std::sqrt(1.0 - cap * cap) * a;
    if (std::abs(1.0 - ub(d - 1)) < 1e-6) continue;
    Eigen::VectorXd p = stereo(ub);
    CHECK((p - ball.center).norm() ==
          doctest::Approx(ball.radius()).epsilon(1e-7));

    Eigen::VectorXd ym(d + 1);
    ym.head(d) = ub;
    ym(d) = frame.past_axis_sign;
    Eigen::VectorXd q = frame.transform.fullPivLu().solve(ym);
    CHECK(std::abs(b(q, q)) < 1e-9);
    auto ip = isotropic_point(q, frame);
    REQUIRE(ip.has_value());
    CHECK((*ip - p).norm() < 1e-7);
  }
}

}  // namespace

TEST_CASE("normalization fixes scale and time orientation") {
  std::mt19937_64 rng(2024);
  BilinearForm b = minkowski_form(4);
  LorentzFrame frame = frame_from_form(b);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x = random_spacelike(b, rng);
    if (t % 2) x = -x;
    Eigen::VectorXd xhat = normalize(x, b, frame);
    CHECK(b(xhat, xhat) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(frame.last_coordinate(xhat) > 0.0);
    CHECK(xhat.isApprox(normalize(-x, b, frame), 1e-12));
  }

  Eigen::VectorXd timelike = Eigen::VectorXd::Zero(4);
  timelike(3) = 1.0;
  CHECK_THROWS_AS(normalize(timelike, b, frame), NotSpaceLike);
  Eigen::VectorXd isotropic(4);
  isotropic << 1.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(normalize(isotropic, b, frame), NotSpaceLike);
}

TEST_CASE("balls are stereographic images of sphere caps") {
  std::mt19937_64 rng(99);

  BilinearForm b4 = minkowski_form(4);
  LorentzFrame f4 = frame_from_form(b4);
  for (int t = 0; t < 40; ++t)
    check_cap_geometry(random_spacelike(b4, rng), b4, f4, rng);

  BilinearForm b5 = minkowski_form(5);
  LorentzFrame f5 = frame_from_form(b5);
  for (int t = 0; t < 15; ++t)
    check_cap_geometry(random_spacelike(b5, rng), b5, f5, rng);

  RootBasis rb = canonicalize(cycle_inf(4));
  LorentzFrame pf = packing_frame(rb);
  for (const WeightVector& wv : weights(rb))
    check_cap_geometry(wv.vector, rb.form, pf, rng);
  for (const OrbitElement& e : weight_orbit(rb, 3))
    check_cap_geometry(e.vector, rb.form, pf, rng);
}

TEST_CASE("pole directions give half-spaces and missing isotropic points") {
  BilinearForm b = minkowski_form(4);
  LorentzFrame frame = frame_from_form(b);
  auto from_minkowski = [&](double a0, double a1, double a2, double a3) {
    Eigen::VectorXd ym(4);
    ym << a0, a1, a2, a3;
    return Eigen::VectorXd(frame.transform.fullPivLu().solve(ym));
  };

  auto ip_pole = isotropic_point(from_minkowski(0, 0, 1, 1), frame);
  CHECK(!ip_pole.has_value());
  auto ip_antipole = isotropic_point(from_minkowski(0, 0, -1, 1), frame);
  REQUIRE(ip_antipole.has_value());
  CHECK(ip_antipole->norm() < 1e-9);
  auto ip_eq = isotropic_point(from_minkowski(1, 0, 0, 1), frame);
  REQUIRE(ip_eq.has_value());
  CHECK(ip_eq->norm() == doctest::Approx(1.0).epsilon(1e-9));

  Eigen::VectorXd x = from_minkowski(1, 0, 0, 0);
  Ball hs = ball_of_vector(x, frame);
  REQUIRE(hs.is_halfspace());
  CHECK(hs.normal.size() == 2);
  CHECK(hs.normal.norm() == doctest::Approx(1.0).epsilon(1e-9));
  Eigen::VectorXd inside(2), outside(2);
  inside << 1.0, 0.0;
  outside << -1.0, 0.0;
  CHECK(region_depth(inside, hs) > 0.0);
  CHECK(region_depth(outside, hs) < 0.0);

  Ball dome = ball_of_vector(from_minkowski(0, 0, 1, 0), frame);
  REQUIRE(!dome.is_halfspace());
  CHECK(dome.curvature < 0.0);
  CHECK(dome.radius() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dome.center.norm() < 1e-9);
}

TEST_CASE("pair relation equals the Euclidean inversive product") {
  std::mt19937_64 rng(501);
  BilinearForm b = minkowski_form(4);
  LorentzFrame frame = frame_from_form(b);

  int checked = 0;
  int plain_kind_checked = 0;
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd x = random_spacelike(b, rng);
    Eigen::VectorXd y = random_spacelike(b, rng);
    Ball A = ball_of_vector(x, frame);
    Ball B = ball_of_vector(y, frame);
    if (A.is_halfspace() || B.is_halfspace()) continue;

    double expected = -inversive_product(A, B);
    PairRelation rel = pair_relation(x, y, b);
    CHECK(std::abs(rel.value - expected) <=
          1e-6 * std::max(1.0, std::abs(expected)));
    ++checked;

    double band_gap = std::min({std::abs(expected + 1.0), std::abs(expected),
                                std::abs(expected - 1.0)});
    if (band_gap < 1e-3) continue;

    PairRelation::Kind want;
    if (expected < -1.0)
      want = PairRelation::Disjoint;
    else if (expected <= 0.0)
      want = PairRelation::Overlap;
    else if (expected < 1.0)
      want = PairRelation::HeavyOverlap;
    else
      want = PairRelation::Contained;
    CHECK(rel.kind == want);

    if (A.curvature > 0 && B.curvature > 0) {
      double dist = (A.center - B.center).norm();
      double r1 = A.radius(), r2 = B.radius();
      PairRelation::Kind geom;
      if (dist > r1 + r2)
        geom = PairRelation::Disjoint;
      else if (dist < std::abs(r1 - r2))
        geom = PairRelation::Contained;
      else if (dist * dist < r1 * r1 + r2 * r2)
        geom = PairRelation::HeavyOverlap;
      else
        geom = PairRelation::Overlap;
      CHECK(rel.kind == geom);
      ++plain_kind_checked;
    }
  }
  CHECK(checked > 900);
  CHECK(plain_kind_checked > 50);

  Eigen::VectorXd x = random_spacelike(b, rng);
  PairRelation self = pair_relation(x, x, b);
  CHECK(self.kind == PairRelation::Contained);
  CHECK(self.value == doctest::Approx(1.0).epsilon(1e-9));

  std::set<std::string> names;
  for (auto k : {PairRelation::Disjoint, PairRelation::Tangent,
                 PairRelation::Overlap, PairRelation::HeavyOverlap,
                 PairRelation::Contained})
    names.insert(to_string(k));
  CHECK(names.size() == 5);
  CHECK(names.count("tangent") == 1);
}

TEST_CASE("tangency graph lists exactly the tangent space-like pairs") {
  RootBasis rb = canonicalize(cycle_inf(4));
  auto elems = weight_orbit(rb, 5);
  auto tang = tangency_graph(elems, rb.form);

  std::set<std::pair<int, int>> got(tang.begin(), tang.end());
  CHECK(got.size() == tang.size());

  std::set<std::pair<int, int>> want;
  Tolerances tol = default_tol();
  for (int i = 0; i < int(elems.size()); ++i) {
    if (rb.form(elems[i].vector, elems[i].vector) <= tol.zero) continue;
    for (int j = i + 1; j < int(elems.size()); ++j) {
      if (rb.form(elems[j].vector, elems[j].vector) <= tol.zero) continue;
      PairRelation rel = pair_relation(elems[i].vector, elems[j].vector,
                                       rb.form, tol);
      if (rel.kind == PairRelation::Tangent) want.insert({i, j});
    }
  }
  CHECK(got == want);
  CHECK(!want.empty());
}

TEST_CASE("four mutually tangent balls satisfy the Descartes identity") {
  RootBasis rb = canonicalize(complete_inf(4));
  auto elems = weight_orbit(rb, 6);
  LorentzFrame frame = packing_frame(rb);
  auto tang = tangency_graph(elems, rb.form);

  std::vector<std::vector<int>> adj(elems.size());
  for (auto [i, j] : tang) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  auto linked = [&](int a, int c) {
    return std::binary_search(adj[a].begin(), adj[a].end(), c);
  };

  std::vector<double> curv(elems.size(),
                           std::numeric_limits<double>::quiet_NaN());
  auto curvature_of = [&](int i) {
    if (std::isnan(curv[i]))
      curv[i] = ball_of_vector(elems[i].vector, frame).curvature;
    return curv[i];
  };

  long long cliques = 0;
  for (auto [i, j] : tang)
    for (int k : adj[i]) {
      if (k <= j || !linked(j, k)) continue;
      for (int l : adj[i]) {
        if (l <= k || !linked(j, l) || !linked(k, l)) continue;
        double k1 = curvature_of(i), k2 = curvature_of(j);
        double k3 = curvature_of(k), k4 = curvature_of(l);
        double sum = k1 + k2 + k3 + k4;
        double lhs = sum * sum;
        double rhs = 2.0 * (k1 * k1 + k2 * k2 + k3 * k3 + k4 * k4);
        CHECK(std::abs(lhs - rhs) <=
              1e-6 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        ++cliques;
      }
    }
  CHECK(cliques > 100);
}

TEST_CASE("packing verification separates clean packings from overlap") {
  RootBasis square = canonicalize(cycle_inf(4));
  auto elems = weight_orbit(square, 6);
  PackingReport rep = verify_packing(elems, square.form);
  CHECK(rep.is_packing);
  CHECK(rep.ball_count == int(elems.size()));
  CHECK(rep.histogram[PairRelation::Overlap] == 0);
  CHECK(rep.histogram[PairRelation::HeavyOverlap] == 0);
  CHECK(rep.histogram[PairRelation::Contained] == 0);
  CHECK(rep.histogram[PairRelation::Tangent] > 0);
  CHECK(rep.histogram[PairRelation::Disjoint] > 0);
  CHECK(rep.violations.empty());
  CHECK(2 * rep.future_directed <= rep.ball_count);

  long long pairs = rep.ball_count * (rep.ball_count - 1) / 2;
  long long total = 0;
  for (long long c : rep.histogram) total += c;
  CHECK(total == pairs);

  PackingReport threaded = verify_packing(elems, square.form, default_tol(), 4);
  CHECK(threaded.is_packing == rep.is_packing);
  for (int k = 0; k < 5; ++k) CHECK(threaded.histogram[k] == rep.histogram[k]);

  RootBasis penta = canonicalize(cycle_inf(5));
  OrbitBudget small;
  small.max_word_length = 4;
  PackingReport bad = verify_packing(orbit_weights(penta, small), penta.form);
  CHECK(!bad.is_packing);
  CHECK(bad.histogram[PairRelation::Overlap] > 0);
  CHECK(bad.histogram[PairRelation::HeavyOverlap] == 0);
  CHECK(!bad.violations.empty());
}

TEST_CASE("limit root samples land outside every ball interior") {
  RootBasis rb = canonicalize(cycle_inf(4));
  LorentzFrame frame = packing_frame(rb);
  auto elems = weight_orbit(rb, 6);

  std::vector<Ball> balls;
  for (const OrbitElement& e : elems)
    if (rb.form(e.vector, e.vector) > default_tol().zero)
      balls.push_back(ball_of_vector(e.vector, frame));
  REQUIRE(!balls.empty());

  auto samples = limit_root_samples(rb, 40.0, 48);
  REQUIRE(samples.size() == 48);
  int plotted = 0;
  for (const Eigen::VectorXd& q : samples) {
    auto p = isotropic_point(q, frame);
    if (!p) continue;
    ++plotted;
    for (const Ball& ball : balls) CHECK(region_depth(*p, ball) <= 1e-6);
  }
  CHECK(plotted >= 40);
}

TEST_CASE("svg rendering is deterministic and shape-complete") {
  RootBasis rb = canonicalize(cycle_inf(4));
  LorentzFrame frame = packing_frame(rb);
  auto elems = weight_orbit(rb, 4);

  std::vector<Ball> balls;
  int disks = 0;
  for (const OrbitElement& e : elems)
    if (rb.form(e.vector, e.vector) > default_tol().zero) {
      balls.push_back(ball_of_vector(e.vector, frame));
      if (balls.back().curvature > 0) ++disks;
    }
  REQUIRE(disks > 0);

  RenderOptions opts;
  opts.width_px = 640;
  std::string doc = render_svg(balls, opts);
  CHECK(doc == render_svg(balls, opts));
  CHECK(doc.rfind("<svg", 0) == 0);
  CHECK(doc.find("viewBox") != std::string::npos);
  CHECK(doc.find("</svg>") != std::string::npos);

  long long circles = 0;
  for (std::size_t pos = doc.find("<circle"); pos != std::string::npos;
       pos = doc.find("<circle", pos + 1))
    ++circles;
  CHECK(circles >= disks);

  RenderOptions overlay = opts;
  for (const Eigen::VectorXd& q : limit_root_samples(rb, 30.0, 16))
    if (auto p = isotropic_point(q, frame)) overlay.overlay_points.push_back(*p);
  REQUIRE(!overlay.overlay_points.empty());
  std::string doc2 = render_svg(balls, overlay);
  CHECK(doc2.size() > doc.size());

  RootBasis high = canonicalize(cycle_inf(5));
  std::vector<Ball> wrong_dim;
  LorentzFrame hf = packing_frame(high);
  for (const WeightVector& wv : weights(high))
    wrong_dim.push_back(ball_of_vector(wv.vector, hf));
  CHECK_THROWS_AS(render_svg(wrong_dim), UnsupportedDimension);
}
