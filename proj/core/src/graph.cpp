#include "coxpack/graph.hpp"

#include <Eigen/Eigenvalues>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coxpack {

double EdgeLabel::gram() const {
  switch (kind) {
    case None:
      return 0.0;
    case Solid:
      return -std::cos(M_PI / m);
    case Infinite:
      return -1.0;
    case Dotted:
      return -c;
  }
  return 0.0;
}

std::vector<std::tuple<int, int, EdgeLabel>> CoxeterGraph::edges() const {
  std::vector<std::tuple<int, int, EdgeLabel>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) out.emplace_back(i, j, label(i, j));
  return out;
}

CoxeterGraph CoxeterGraph::induced(const std::vector<int>& verts) const {
  CoxeterGraph h(int(verts.size()));
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      h.set_label(int(a), int(b), label(verts[a], verts[b]));
  return h;
}

CoxeterGraph CoxeterGraph::disjoint_union(const CoxeterGraph& other) const {
  CoxeterGraph h(n_ + other.n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) h.set_label(i, j, label(i, j));
  for (int i = 0; i < other.n_; ++i)
    for (int j = i + 1; j < other.n_; ++j)
      h.set_label(n_ + i, n_ + j, other.label(i, j));
  return h;
}

bool CoxeterGraph::connected() const {
  if (n_ == 0) return true;
  return int(components().size()) == 1;
}

std::vector<std::vector<int>> CoxeterGraph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    int id = int(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w = 0; w < n_; ++w)
        if (comp[w] < 0 && adjacent(v, w)) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

Eigen::MatrixXd gram_matrix(const CoxeterGraph& g) {
  const int n = g.rank();
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = g.label(i, j).gram();
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

GraphType classify_type(const Eigen::MatrixXd& gram, const Tolerances& tol) {
  if (gram.rows() == 0) return GraphType::Finite;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                    Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double lo = ev(0);
  if (lo > tol.zero) return GraphType::Finite;
  if (lo > -tol.zero) return GraphType::Affine;
  return GraphType::Indefinite;
}

GraphType classify_type(const CoxeterGraph& g, const Tolerances& tol) {
  return classify_type(gram_matrix(g), tol);
}

bool is_finite_or_affine(const Eigen::MatrixXd& gram, const Tolerances& tol) {
  if (gram.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) > -tol.zero;
}

int gram_corank(const CoxeterGraph& g, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_matrix(g),
                                                    Eigen::EigenvaluesOnly);
  int k = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol.zero) ++k;
  return k;
}

namespace {

// Enumerates size-k subsets of 0..n-1, calling f(subset). Returns false early
// if f does.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) return f(idx);
  while (true) {
    if (!f(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

LevelResult graph_level(const CoxeterGraph& g, const Tolerances& tol) {
  const int n = g.rank();
  Eigen::MatrixXd b = gram_matrix(g);
  for (int l = 0; l < n; ++l) {
    bool all_ok = true, all_finite = true;
    for_each_subset(n, n - l, [&](const std::vector<int>& keep) {
      Eigen::MatrixXd sub(n - l, n - l);
      for (int a = 0; a < n - l; ++a)
        for (int c = 0; c < n - l; ++c) sub(a, c) = b(keep[a], keep[c]);
      switch (classify_type(sub, tol)) {
        case GraphType::Finite:
          break;
        case GraphType::Affine:
          all_finite = false;
          break;
        case GraphType::Indefinite:
          all_ok = false;
          break;
      }
      return all_ok;
    });
    if (all_ok) return {l, all_finite};
  }
  return {n, true};
}

const char* to_string(GraphType t) {
  switch (t) {
    case GraphType::Finite:
      return "finite";
    case GraphType::Affine:
      return "affine";
    case GraphType::Indefinite:
      return "indefinite";
  }
  return "?";
}

namespace {

// Shortest decimal string that parses back to exactly the same double.
std::string exact_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

}  // namespace

CoxeterGraph parse_cox(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  CoxeterGraph g;
  auto need_graph = [&](int ln) {
    if (n < 0) throw SyntaxError(ln, "edge record before 'n' record");
  };
  auto check_pair = [&](int ln, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw RangeError(ln, "vertex index out of range");
    if (i == j) throw RangeError(ln, "loop edge");
    if (!g.label(i, j).absent()) throw RangeError(ln, "duplicate edge");
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "n") {
      if (n >= 0) throw SyntaxError(lineno, "duplicate 'n' record");
      if (!(ls >> n) || n < 1) throw RangeError(lineno, "bad rank");
      g = CoxeterGraph(n);
    } else if (kw == "edge") {
      need_graph(lineno);
      int i, j;
      std::string lab;
      if (!(ls >> i >> j >> lab)) throw SyntaxError(lineno, "bad edge record");
      check_pair(lineno, i, j);
      if (lab == "inf") {
        g.set_label(i, j, EdgeLabel::infinite());
      } else {
        int m = 0;
        auto [p, ec] = std::from_chars(lab.data(), lab.data() + lab.size(), m);
        if (ec != std::errc() || p != lab.data() + lab.size())
          throw SyntaxError(lineno, "bad edge label");
        if (m < 3) throw RangeError(lineno, "edge label must be >= 3");
        g.set_label(i, j, EdgeLabel::solid(m));
      }
    } else if (kw == "dedge") {
      need_graph(lineno);
      int i, j;
      double c;
      if (!(ls >> i >> j >> c)) throw SyntaxError(lineno, "bad dedge record");
      check_pair(lineno, i, j);
      if (!(c > 1.0)) throw RangeError(lineno, "dotted weight must be > 1");
      g.set_label(i, j, EdgeLabel::dotted(c));
    } else {
      throw SyntaxError(lineno, "unknown record '" + kw + "'");
    }
    std::string rest;
    if (ls >> rest) throw SyntaxError(lineno, "trailing tokens");
  }
  if (n < 0) throw SyntaxError(lineno, "missing 'n' record");
  return g;
}

CoxeterGraph parse_cox_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cox(ss.str());
}

std::string serialize_cox(const CoxeterGraph& g) {
  std::ostringstream out;
  out << "n " << g.rank() << "\n";
  for (auto& [i, j, l] : g.edges()) {
    switch (l.kind) {
      case EdgeLabel::Solid:
        out << "edge " << i << " " << j << " " << l.m << "\n";
        break;
      case EdgeLabel::Infinite:
        out << "edge " << i << " " << j << " inf\n";
        break;
      case EdgeLabel::Dotted:
        out << "dedge " << i << " " << j << " " << exact_double(l.c) << "\n";
        break;
      case EdgeLabel::None:
        break;
    }
  }
  return out.str();
}

}  // namespace coxpack
