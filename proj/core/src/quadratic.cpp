#include "coxpack/quadratic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "coxpack/simplex_lp.hpp"

namespace coxpack {

Signature signature(const BilinearForm& b, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.m,
                                                    Eigen::EigenvaluesOnly);
  Signature s;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()(i);
    if (v > tol.zero)
      ++s.n_plus;
    else if (v < -tol.zero)
      ++s.n_minus;
    else
      ++s.n_zero;
  }
  return s;
}

std::vector<Eigen::VectorXd> radical_basis(const BilinearForm& b,
                                           const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.m);
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol.zero)
      out.push_back(es.eigenvectors().col(i));
  return out;
}

Eigen::VectorXd reflect(const Eigen::VectorXd& alpha, const Eigen::VectorXd& x,
                        const BilinearForm& b, const Tolerances& tol) {
  double nn = b(alpha, alpha);
  if (std::abs(nn) <= tol.zero)
    throw IsotropicMirror("reflection mirror has zero norm");
  return x - (2.0 * b(alpha, x) / nn) * alpha;
}

CausalClass causal_class(const Eigen::VectorXd& x, const BilinearForm& b,
                         double band) {
  double n = b(x, x);
  if (n > band) return CausalClass::SpaceLike;
  if (n < -band) return CausalClass::TimeLike;
  return CausalClass::LightLike;
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::SpaceLike:
      return "space-like";
    case CausalClass::LightLike:
      return "light-like";
    case CausalClass::TimeLike:
      return "time-like";
  }
  return "?";
}

LorentzFrame lorentz_frame(const BilinearForm& b, const Eigen::VectorXd& t,
                           const Tolerances& tol) {
  const int n = b.dim();
  Signature sig = signature(b, tol);
  if (!is_lorentzian(sig)) throw NotLorentzian("signature is not (n-1, 0, 1)");
  double tt = b(t, t);
  if (!(tt < -tol.zero)) throw NotTimelike("frame axis is not time-like");

  // B-orthonormal basis adapted to t: last column is t normalized to norm -1,
  // the rest spans t's B-orthogonal complement, where B is positive definite.
  Eigen::MatrixXd basis(n, n);
  basis.col(n - 1) = t / std::sqrt(-tt);

  Eigen::RowVectorXd functional = b.functional(t).transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(functional);
  lu.setThreshold(tol.zero);
  Eigen::MatrixXd comp = lu.kernel();  // n x (n-1)
  for (int k = 0; k < n - 1; ++k) {
    Eigen::VectorXd v = comp.col(k);
    for (int j = 0; j < k; ++j) v -= b(basis.col(j), v) * basis.col(j);
    double nn = b(v, v);
    if (nn <= tol.zero)
      throw NotLorentzian("degenerate complement in frame construction");
    basis.col(k) = v / std::sqrt(nn);
  }

  LorentzFrame f;
  f.transform = basis.partialPivLu().inverse();
  f.form = b;
  f.past_axis_sign = +1;
  return f;
}

RootBasis canonicalize(const CoxeterGraph& g, const Tolerances& tol) {
  const int n = g.rank();
  Eigen::MatrixXd gram = gram_matrix(g);
  if (classify_type(gram, tol) == GraphType::Affine)
    throw AffineInput("graph is of affine type");

  RootBasis rb;
  rb.source = g;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  int corank = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol.zero) ++corank;
  rb.corank = corank;

  if (corank == 0) {
    rb.form = BilinearForm(gram);
    rb.roots = Eigen::MatrixXd::Identity(n, n);
  } else {
    const int rho = n - corank;
    Eigen::MatrixXd p(n, rho);
    Eigen::VectorXd lam(rho);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(es.eigenvalues()(i)) <= tol.zero) continue;
      p.col(k) = es.eigenvectors().col(i);
      lam(k) = es.eigenvalues()(i);
      ++k;
    }
    rb.form = BilinearForm(Eigen::MatrixXd(lam.asDiagonal()));
    rb.roots = p.transpose();
  }

  // Positive independence: a functional strictly positive on every root must
  // exist, otherwise some nonnegative combination of roots vanishes.
  MarginResult lp = max_margin(rb.roots.transpose());
  if (lp.margin <= tol.lp)
    throw Error("projected roots are not positively independent");

  return rb;
}

}  // namespace coxpack
