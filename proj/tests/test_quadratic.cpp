#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <coxpack/quadratic.hpp>
#include <random>

using namespace coxpack;

namespace {

// Form with known inertia: diag(values) conjugated by a random rotation, so
// the expected signature is fixed by construction and independent of any
// eigenvalue code.
Eigen::MatrixXd conjugated_diagonal(const std::vector<double>& values,
                                    std::mt19937_64& rng) {
  const int n = int(values.size());
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
  return q * d.asDiagonal() * q.transpose();
}

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

CoxeterGraph lanner_path(const std::vector<int>& labels) {
  CoxeterGraph g(int(labels.size()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i)
    g.set_label(int(i), int(i) + 1, EdgeLabel::solid(labels[i]));
  return g;
}

}  // namespace

TEST_CASE("signature counts match constructed inertia") {
  std::mt19937_64 rng(101);
  struct Case {
    std::vector<double> diag;
    Signature want;
  };
  std::vector<Case> cases = {
      {{1, 1, 1}, {3, 0, 0}},
      {{1, 1, 0}, {2, 1, 0}},
      {{2, 0.5, -3}, {2, 0, 1}},
      {{1, 0, 0, -1}, {1, 2, 1}},
      {{5, 4, 3, 2, -1}, {4, 0, 1}},
      {{1e-12, 1, -1}, {1, 1, 1}},  // tiny eigenvalue counts as zero
  };
  for (const auto& c : cases) {
    BilinearForm b(conjugated_diagonal(c.diag, rng));
    CHECK(signature(b) == c.want);
  }
  CHECK(is_lorentzian(Signature{3, 0, 1}));
  CHECK_FALSE(is_lorentzian(Signature{2, 1, 1}));
  CHECK_FALSE(is_lorentzian(Signature{2, 0, 2}));
}

TEST_CASE("radical basis spans the kernel and is orthonormal") {
  std::mt19937_64 rng(102);
  BilinearForm b(conjugated_diagonal({2, 1, 0, 0, -1}, rng));
  auto rad = radical_basis(b);
  REQUIRE(rad.size() == 2);
  for (const auto& v : rad) {
    CHECK((b.m * v).norm() == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(std::abs(rad[0].dot(rad[1])) < 1e-10);
  BilinearForm nd(conjugated_diagonal({1, -1}, rng));
  CHECK(radical_basis(nd).empty());
}

TEST_CASE("reflections are involutive isometries fixing the mirror") {
  std::mt19937_64 rng(103);
  BilinearForm b(conjugated_diagonal({1, 1, 1, -1}, rng));
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd alpha = random_vector(4, rng);
    if (std::abs(b.norm_of(alpha)) < 1e-6) continue;
    Eigen::VectorXd x = random_vector(4, rng);
    Eigen::VectorXd y = random_vector(4, rng);
    Eigen::VectorXd rx = reflect(alpha, x, b);
    CHECK((reflect(alpha, rx, b) - x).norm() == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(b(rx, reflect(alpha, y, b)) == doctest::Approx(b(x, y)).epsilon(1e-8));
    CHECK((reflect(alpha, alpha, b) + alpha).norm() ==
          doctest::Approx(0.0).epsilon(1e-8));
    // vectors B-orthogonal to alpha are fixed
    Eigen::VectorXd z = x - (b(alpha, x) / b.norm_of(alpha)) * alpha;
    CHECK((reflect(alpha, z, b) - z).norm() == doctest::Approx(0.0).epsilon(1e-8));
  }
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(reflect(alpha, alpha, b), IsotropicMirror);
}

TEST_CASE("causal classes split by the norm band") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(1, 1) = -1.0;
  BilinearForm b(m);
  Eigen::VectorXd space(2), light(2), time(2);
  space << 1, 0;
  light << 1, 1;
  time << 0, 1;
  CHECK(causal_class(space, b, 1e-6) == CausalClass::SpaceLike);
  CHECK(causal_class(light, b, 1e-6) == CausalClass::LightLike);
  CHECK(causal_class(time, b, 1e-6) == CausalClass::TimeLike);
  Eigen::VectorXd near_light(2);
  near_light << 1.0, 1.0 + 1e-9;
  CHECK(causal_class(near_light, b, 1e-6) == CausalClass::LightLike);
}

TEST_CASE("lorentz frame maps to Minkowski coordinates") {
  std::mt19937_64 rng(104);
  BilinearForm b(conjugated_diagonal({1.5, 1, 2, -0.5}, rng));
  // time-like direction: eigenvector of the negative eigenvalue
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.m);
  Eigen::VectorXd t = es.eigenvectors().col(0);
  REQUIRE(b.norm_of(t) < 0);
  LorentzFrame f = lorentz_frame(b, t);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x = random_vector(4, rng);
    Eigen::VectorXd y = f.to_minkowski(x);
    double mink = y.head(3).squaredNorm() - y(3) * y(3);
    CHECK(mink == doctest::Approx(b.norm_of(x)).epsilon(1e-8));
  }
  Eigen::VectorXd ti = f.to_minkowski(t);
  CHECK(ti.head(3).norm() == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(f.last_coordinate(t) > 0);

  BilinearForm posdef(conjugated_diagonal({1, 1, 1, 1}, rng));
  CHECK_THROWS_AS(lorentz_frame(posdef, t), NotLorentzian);
  Eigen::VectorXd s = es.eigenvectors().col(3);
  REQUIRE(b.norm_of(s) > 0);
  CHECK_THROWS_AS(lorentz_frame(b, s), NotTimelike);
}

TEST_CASE("canonicalize keeps corank-0 bases verbatim") {
  CoxeterGraph g = lanner_path({3, 7});
  RootBasis rb = canonicalize(g);
  CHECK(rb.corank == 0);
  CHECK(rb.rho() == 3);
  CHECK(rb.count() == 3);
  CHECK((rb.roots - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK((rb.form.m - gram_matrix(g)).norm() == 0.0);
  CHECK((rb.direction_of_past() + Eigen::VectorXd::Ones(3)).norm() == 0.0);

  // the negated root sum is time-like for the compact triangle
  CoxeterGraph tri(3);
  tri.set_label(0, 1, EdgeLabel::solid(3));
  tri.set_label(1, 2, EdgeLabel::solid(3));
  tri.set_label(0, 2, EdgeLabel::solid(7));
  RootBasis rt = canonicalize(tri);
  CHECK(rt.form.norm_of(rt.direction_of_past()) < 0);
}

TEST_CASE("canonicalize reproduces pairwise products on the quotient") {
  // corank-1 example: pyramid graph whose dotted weight is swept onto the
  // determinant root by bisection
  CoxeterGraph g(7);
  g.set_label(0, 1, EdgeLabel::solid(3));
  g.set_label(0, 3, EdgeLabel::solid(4));
  g.set_label(1, 2, EdgeLabel::solid(4));
  g.set_label(1, 6, EdgeLabel::solid(3));
  g.set_label(2, 3, EdgeLabel::solid(3));
  g.set_label(2, 5, EdgeLabel::solid(3));
  g.set_label(3, 4, EdgeLabel::solid(3));
  g.set_label(4, 6, EdgeLabel::solid(4));
  auto det_at = [&](double c) {
    g.set_label(4, 5, EdgeLabel::dotted(c));
    return gram_matrix(g).determinant();
  };
  double lo = 1.2, hi = 2.0;
  double sign_lo = det_at(lo);
  REQUIRE(sign_lo * det_at(hi) < 0);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (det_at(mid) * sign_lo > 0 ? lo : hi) = mid;
  }
  double root = 0.5 * (lo + hi);
  CHECK(root == doctest::Approx(1.5).epsilon(1e-9));
  g.set_label(4, 5, EdgeLabel::dotted(root));
  REQUIRE(gram_corank(g) == 1);
  RootBasis rb = canonicalize(g);
  CHECK(rb.corank == 1);
  CHECK(rb.rho() == 6);
  CHECK(rb.count() == 7);
  Eigen::MatrixXd gram = gram_matrix(g);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      CHECK(rb.form(rb.root(i), rb.root(j)) ==
            doctest::Approx(gram(i, j)).epsilon(1e-9));
  Signature s = signature(rb.form);
  CHECK(s.n_zero == 0);
  CHECK(s.n_minus == 1);
}

TEST_CASE("canonicalize rejects affine and positively dependent inputs") {
  CoxeterGraph affine(3);
  affine.set_label(0, 1, EdgeLabel::solid(3));
  affine.set_label(1, 2, EdgeLabel::solid(3));
  affine.set_label(0, 2, EdgeLabel::solid(3));
  CHECK_THROWS_AS(canonicalize(affine), AffineInput);

  // affine component inside an indefinite graph: the kernel vector is
  // non-negative, so the projected roots are positively dependent
  CoxeterGraph mixed(5);
  mixed.set_label(0, 1, EdgeLabel::infinite());
  mixed.set_label(2, 3, EdgeLabel::solid(3));
  mixed.set_label(3, 4, EdgeLabel::solid(7));
  CHECK(classify_type(mixed) == GraphType::Indefinite);
  CHECK_THROWS_AS(canonicalize(mixed), Error);
}
