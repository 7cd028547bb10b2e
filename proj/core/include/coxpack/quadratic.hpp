#pragma once

#include <Eigen/Dense>
#include <vector>

#include "coxpack/errors.hpp"
#include "coxpack/graph.hpp"
#include "coxpack/tolerances.hpp"

namespace coxpack {

// Symmetric bilinear form, stored dense.
struct BilinearForm {
  Eigen::MatrixXd m;

  BilinearForm() = default;
  explicit BilinearForm(Eigen::MatrixXd mat) : m(std::move(mat)) {}

  int dim() const { return int(m.rows()); }

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(m * y);
  }
  double norm_of(const Eigen::VectorXd& x) const { return (*this)(x, x); }

  // The linear functional B(a, .) as a coefficient vector.
  Eigen::VectorXd functional(const Eigen::VectorXd& a) const { return m * a; }
};

struct Signature {
  int n_plus = 0, n_zero = 0, n_minus = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Inertia of the form, eigenvalues within tol.zero of 0 count as zero.
Signature signature(const BilinearForm& b, const Tolerances& tol = default_tol());

inline bool is_lorentzian(const Signature& s) {
  return s.n_minus == 1 && s.n_zero == 0;
}

// Orthonormal (Euclidean) basis of the kernel of the form.
std::vector<Eigen::VectorXd> radical_basis(const BilinearForm& b,
                                           const Tolerances& tol = default_tol());

// Reflection of x in the mirror of alpha: x - 2 B(alpha,x)/B(alpha,alpha) alpha.
// Throws IsotropicMirror when |B(alpha,alpha)| <= tol.zero.
Eigen::VectorXd reflect(const Eigen::VectorXd& alpha, const Eigen::VectorXd& x,
                        const BilinearForm& b,
                        const Tolerances& tol = default_tol());

enum class CausalClass { SpaceLike, LightLike, TimeLike };

// Sign of B(x,x) with a band of width `band` around zero counting light-like.
CausalClass causal_class(const Eigen::VectorXd& x, const BilinearForm& b,
                         double band);

const char* to_string(CausalClass c);

// Linear map to Minkowski coordinates: images satisfy
// y_1^2 + ... + y_{rho-1}^2 - y_rho^2 = B(x, x), and the direction-of-past
// vector t used to build the frame maps to (0, ..., 0, c) with c > 0.
// Past-directed vectors are those with positive last Minkowski coordinate.
struct LorentzFrame {
  Eigen::MatrixXd transform;
  BilinearForm form;
  int past_axis_sign = +1;

  Eigen::VectorXd to_minkowski(const Eigen::VectorXd& x) const {
    return transform * x;
  }
  double last_coordinate(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = transform * x;
    return past_axis_sign * y(y.size() - 1);
  }
};

// Throws NotLorentzian unless signature is (n-1, 0, 1); NotTimelike unless
// B(t, t) < 0.
LorentzFrame lorentz_frame(const BilinearForm& b, const Eigen::VectorXd& t,
                           const Tolerances& tol = default_tol());

// Root basis on the quotient by the radical. For corank 0 the roots are the
// standard basis vectors and the form is the Gram matrix itself; otherwise
// coordinates are taken in the non-null eigenbasis of the Gram matrix, which
// reproduces all pairwise products exactly.
struct RootBasis {
  BilinearForm form;      // non-degenerate, dim rho = n - corank
  Eigen::MatrixXd roots;  // rho x n, column s is the root alpha_s
  CoxeterGraph source;
  int corank = 0;

  int rho() const { return int(roots.rows()); }
  int count() const { return int(roots.cols()); }
  Eigen::VectorXd root(int s) const { return roots.col(s); }

  // -(alpha_0 + ... + alpha_{n-1}). Time-like for many Lorentzian bases but
  // not all of them; packing_frame orients its frame by the weight sum
  // instead.
  Eigen::VectorXd direction_of_past() const { return -roots.rowwise().sum(); }
};

// Throws AffineInput for graphs of affine type (positive semidefinite with a
// kernel); the quotient has no meaning there. Also rejects inputs whose
// projected roots are not positively independent.
RootBasis canonicalize(const CoxeterGraph& g,
                       const Tolerances& tol = default_tol());

}  // namespace coxpack
