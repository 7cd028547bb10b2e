#include "coxpack/cone.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <set>

#include "coxpack/errors.hpp"
#include "coxpack/graph.hpp"
#include "coxpack/simplex_lp.hpp"

namespace coxpack {

namespace {

void require_nondegenerate(const RootBasis& basis, const Tolerances& tol) {
  Signature s = signature(basis.form, tol);
  if (s.n_zero > 0) throw DegenerateForm("facial test needs a non-degenerate form");
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Row of B-functionals for the listed roots.
Eigen::MatrixXd functional_rows(const RootBasis& basis,
                                const std::vector<int>& idx) {
  Eigen::MatrixXd e(static_cast<int>(idx.size()), basis.rho());
  for (int r = 0; r < static_cast<int>(idx.size()); ++r)
    e.row(r) = (basis.form.m * basis.root(idx[r])).transpose();
  return e;
}

int span_rank(const RootBasis& basis, const std::vector<int>& idx,
              const Tolerances& tol) {
  if (idx.empty()) return 0;
  Eigen::MatrixXd r(basis.rho(), static_cast<int>(idx.size()));
  for (int c = 0; c < static_cast<int>(idx.size()); ++c)
    r.col(c) = basis.root(idx[c]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(r);
  qr.setThreshold(tol.zero);
  return static_cast<int>(qr.rank());
}

// Candidate facets of the subcone spanned by the roots indexed by `face`:
// zero sets of supporting hyperplanes inside the span, found by solving for
// a normal vanishing on each near-maximal independent subset and keeping it
// when the remaining pairings share one strict sign.
std::set<std::vector<int>> facet_candidates(const RootBasis& basis,
                                            const std::vector<int>& face,
                                            const Tolerances& tol) {
  std::set<std::vector<int>> out;
  const int rho = basis.rho();
  const int m = static_cast<int>(face.size());
  if (m == 0) return out;

  Eigen::MatrixXd r(rho, m);
  for (int c = 0; c < m; ++c) r.col(c) = basis.root(face[c]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(r);
  qr.setThreshold(tol.zero);
  const int rank = static_cast<int>(qr.rank());
  if (rank == 0) return out;
  if (rank == 1) {
    out.insert({});
    return out;
  }
  Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(rho, rank);

  // Pairing rows of every face root against the span basis.
  Eigen::MatrixXd pair_rows(m, rank);
  for (int j = 0; j < m; ++j)
    pair_rows.row(j) = (basis.form.m * basis.root(face[j])).transpose() * q;

  std::vector<int> subset(rank - 1);
  std::vector<int> first(rank - 1);
  for (int i = 0; i < rank - 1; ++i) first[i] = i;
  subset = first;
  while (true) {
    Eigen::MatrixXd eq(rank - 1, rank);
    for (int i = 0; i < rank - 1; ++i) eq.row(i) = pair_rows.row(subset[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(eq);
    lu.setThreshold(tol.zero);
    if (lu.dimensionOfKernel() == 1) {
      Eigen::VectorXd y = lu.kernel().col(0);
      Eigen::VectorXd p = pair_rows * y;
      int pos = 0, neg = 0;
      std::vector<int> zero_set;
      for (int j = 0; j < m; ++j) {
        if (p(j) > tol.lp)
          ++pos;
        else if (p(j) < -tol.lp)
          ++neg;
        else
          zero_set.push_back(face[j]);
      }
      if ((pos == 0) != (neg == 0)) out.insert(zero_set);
    }
    // Advance to the next subset of {0..m-1} of size rank-1.
    int k = rank - 2;
    while (k >= 0 && subset[k] == m - (rank - 1) + k) --k;
    if (k < 0) break;
    ++subset[k];
    for (int i = k + 1; i < rank - 1; ++i) subset[i] = subset[i - 1] + 1;
  }
  return out;
}

struct FaceLattice {
  // Verified faces grouped by codimension.
  std::vector<std::vector<FacialSubset>> by_codim;
  std::set<std::vector<int>> seen;
};

// Expand the lattice with the facets of every face of codimension `depth`,
// verifying each candidate against the whole cone.
void descend_one_level(const RootBasis& basis, FaceLattice& lat, int depth,
                       const Tolerances& tol) {
  if (static_cast<int>(lat.by_codim.size()) <= depth + 1)
    lat.by_codim.resize(depth + 2);
  for (const FacialSubset& f : lat.by_codim[depth]) {
    for (const std::vector<int>& cand : facet_candidates(basis, f.indices, tol)) {
      if (lat.seen.count(cand)) continue;
      lat.seen.insert(cand);
      auto witness = is_facial(basis, cand, tol);
      if (!witness) continue;
      FacialSubset sub;
      sub.indices = cand;
      sub.codim = basis.rho() - span_rank(basis, cand, tol);
      sub.witness = *witness;
      if (static_cast<int>(lat.by_codim.size()) <= sub.codim)
        lat.by_codim.resize(sub.codim + 1);
      lat.by_codim[sub.codim].push_back(sub);
    }
  }
}

FacialSubset whole_cone_face(const RootBasis& basis) {
  FacialSubset top;
  top.indices.resize(basis.count());
  for (int i = 0; i < basis.count(); ++i) top.indices[i] = i;
  top.codim = 0;
  top.witness = Eigen::VectorXd::Zero(basis.rho());
  return top;
}

}  // namespace

std::optional<Eigen::VectorXd> is_facial(const RootBasis& basis,
                                         const std::vector<int>& indices,
                                         const Tolerances& tol) {
  require_nondegenerate(basis, tol);
  std::vector<int> idx = sorted_unique(indices);
  for (int i : idx)
    if (i < 0 || i >= basis.count())
      throw Error("root index out of range in is_facial");
  if (static_cast<int>(idx.size()) == basis.count()) return std::nullopt;

  const int rho = basis.rho();
  Eigen::MatrixXd nullbasis;
  if (idx.empty()) {
    nullbasis = Eigen::MatrixXd::Identity(rho, rho);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(functional_rows(basis, idx));
    lu.setThreshold(tol.zero);
    if (lu.dimensionOfKernel() == 0) return std::nullopt;
    nullbasis = lu.kernel();
  }

  std::vector<int> off;
  for (int j = 0; j < basis.count(); ++j)
    if (!std::binary_search(idx.begin(), idx.end(), j)) off.push_back(j);

  Eigen::MatrixXd rows(static_cast<int>(off.size()),
                       static_cast<int>(nullbasis.cols()));
  for (int r = 0; r < static_cast<int>(off.size()); ++r)
    rows.row(r) =
        (basis.form.m * basis.root(off[r])).transpose() * nullbasis;

  MarginResult lp = max_margin(rows);
  if (lp.margin <= tol.lp) return std::nullopt;
  Eigen::VectorXd w = nullbasis * lp.y;
  w /= w.norm();
  return w;
}

std::vector<FacialSubset> facial_subsets(const RootBasis& basis, int l,
                                         const Tolerances& tol) {
  require_nondegenerate(basis, tol);
  if (l < 0) throw Error("facial_subsets: negative codimension");
  FaceLattice lat;
  lat.by_codim.resize(1);
  lat.by_codim[0].push_back(whole_cone_face(basis));
  for (int depth = 0; depth < l; ++depth) {
    if (depth >= static_cast<int>(lat.by_codim.size())) break;
    descend_one_level(basis, lat, depth, tol);
  }
  if (l >= static_cast<int>(lat.by_codim.size())) return {};
  std::vector<FacialSubset> out = lat.by_codim[l];
  std::sort(out.begin(), out.end(),
            [](const FacialSubset& a, const FacialSubset& b) {
              return a.indices < b.indices;
            });
  return out;
}

std::vector<WeightVector> weights(const RootBasis& basis,
                                  const Tolerances& tol) {
  require_nondegenerate(basis, tol);
  std::vector<WeightVector> out;
  for (const FacialSubset& facet : facial_subsets(basis, 1, tol)) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(functional_rows(basis, facet.indices));
    lu.setThreshold(tol.zero);
    if (lu.dimensionOfKernel() != 1)
      throw Error("weight solve: facet normal space is not a line");
    Eigen::VectorXd w = lu.kernel().col(0);
    w /= w.norm();

    double min_pos = 0.0;
    bool flipped = false;
    bool oriented = false;
    for (int j = 0; j < basis.count(); ++j) {
      if (std::binary_search(facet.indices.begin(), facet.indices.end(), j))
        continue;
      double p = basis.form(w, basis.root(j));
      if (!oriented) {
        if (p < 0) {
          flipped = true;
          p = -p;
        }
        oriented = true;
        min_pos = p;
      } else {
        if (flipped) p = -p;
        min_pos = std::min(min_pos, p);
      }
    }
    if (!oriented || min_pos <= tol.lp)
      throw Error("weight solve: facet pairing is not one-signed");
    if (flipped) w = -w;
    w /= min_pos;

    WeightVector wv;
    wv.vector = w;
    wv.indices = facet.indices;
    wv.norm = basis.form.norm_of(w);
    wv.causal = causal_class(w, basis.form, tol.lightlike);
    out.push_back(std::move(wv));
  }
  return out;
}

LevelResult system_level(const RootBasis& basis, const Tolerances& tol) {
  require_nondegenerate(basis, tol);
  Eigen::MatrixXd source_gram = gram_matrix(basis.source);

  auto face_type = [&](const std::vector<int>& idx) {
    if (idx.empty()) return GraphType::Finite;
    Eigen::MatrixXd sub(static_cast<int>(idx.size()),
                        static_cast<int>(idx.size()));
    for (int a = 0; a < static_cast<int>(idx.size()); ++a)
      for (int b = 0; b < static_cast<int>(idx.size()); ++b)
        sub(a, b) = source_gram(idx[a], idx[b]);
    return classify_type(sub, tol);
  };

  FaceLattice lat;
  lat.by_codim.resize(1);
  lat.by_codim[0].push_back(whole_cone_face(basis));
  for (int level = 0; level <= basis.rho(); ++level) {
    if (level >= static_cast<int>(lat.by_codim.size())) break;
    bool all_ok = true;
    bool all_finite = true;
    for (const FacialSubset& f : lat.by_codim[level]) {
      GraphType t = face_type(f.indices);
      if (t == GraphType::Indefinite) all_ok = false;
      if (t != GraphType::Finite) all_finite = false;
      if (!all_ok) break;
    }
    if (all_ok && !lat.by_codim[level].empty())
      return {level, all_finite};
    descend_one_level(basis, lat, level, tol);
  }
  return {basis.rho(), true};
}

}  // namespace coxpack
