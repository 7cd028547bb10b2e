#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <coxpack/canon.hpp>
#include <coxpack/graph.hpp>
#include <numeric>
#include <random>
#include <vector>

using namespace coxpack;

namespace {

// Catalog builders used as the ground truth for definiteness classes. Each
// returns the standard graph of the named family.

CoxeterGraph path_graph(const std::vector<int>& labels) {
  CoxeterGraph g(int(labels.size()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i)
    g.set_label(int(i), int(i) + 1, EdgeLabel::solid(labels[i]));
  return g;
}

CoxeterGraph cycle_graph(int n, int label) {
  CoxeterGraph g(n);
  for (int i = 0; i < n; ++i)
    g.set_label(i, (i + 1) % n, label == 0 ? EdgeLabel::infinite()
                                           : EdgeLabel::solid(label));
  return g;
}

CoxeterGraph type_A(int n) { return path_graph(std::vector<int>(n - 1, 3)); }

CoxeterGraph type_B(int n) {
  auto labels = std::vector<int>(n - 1, 3);
  labels.back() = 4;
  return path_graph(labels);
}

CoxeterGraph type_D(int n) {
  CoxeterGraph g = type_A(n - 1);
  CoxeterGraph out(n);
  for (auto [i, j, l] : g.edges()) out.set_label(i, j, l);
  out.set_label(n - 3, n - 1, EdgeLabel::solid(3));
  return out;
}

// Path with one extra vertex hung off position `branch`.
CoxeterGraph type_E(int n, int branch) {
  CoxeterGraph out(n);
  for (int i = 0; i + 1 < n - 1; ++i) out.set_label(i, i + 1, EdgeLabel::solid(3));
  out.set_label(branch, n - 1, EdgeLabel::solid(3));
  return out;
}

CoxeterGraph type_F4() { return path_graph({3, 4, 3}); }
CoxeterGraph type_H(int n) {
  auto labels = std::vector<int>(n - 1, 3);
  labels.front() = 5;
  return path_graph(labels);
}
CoxeterGraph type_I2(int m) { return path_graph({m}); }

struct Named {
  const char* name;
  CoxeterGraph g;
};

std::vector<Named> finite_catalog() {
  std::vector<Named> v;
  for (int n = 1; n <= 8; ++n) v.push_back({"A", type_A(n)});
  for (int n = 2; n <= 8; ++n) v.push_back({"B", type_B(n)});
  for (int n = 4; n <= 8; ++n) v.push_back({"D", type_D(n)});
  v.push_back({"E6", type_E(6, 2)});
  v.push_back({"E7", type_E(7, 2)});
  v.push_back({"E8", type_E(8, 2)});
  v.push_back({"F4", type_F4()});
  v.push_back({"H3", type_H(3)});
  v.push_back({"H4", type_H(4)});
  for (int m = 3; m <= 12; ++m) v.push_back({"I2", type_I2(m)});
  return v;
}

std::vector<Named> affine_catalog() {
  std::vector<Named> v;
  CoxeterGraph a1(2);
  a1.set_label(0, 1, EdgeLabel::infinite());
  v.push_back({"A1~", a1});
  for (int n = 3; n <= 9; ++n) v.push_back({"A~", cycle_graph(n, 3)});
  // C~: path 4,3,...,3,4
  for (int n = 2; n <= 8; ++n) {
    auto labels = std::vector<int>(n, 3);
    labels.front() = labels.back() = 4;
    v.push_back({"C~", path_graph(labels)});
  }
  // B~: fork at one end, label-4 at the other
  for (int n = 4; n <= 8; ++n) {
    CoxeterGraph g(n + 1);
    for (int i = 0; i + 1 < n - 1; ++i) g.set_label(i, i + 1, EdgeLabel::solid(3));
    g.set_label(n - 3, n - 1, EdgeLabel::solid(3));
    g.set_label(0, n, EdgeLabel::solid(4));
    // hang the 4-edge off the path end opposite the fork
    v.push_back({"B~", g});
  }
  // D~: forks at both ends
  for (int n = 5; n <= 9; ++n) {
    CoxeterGraph g(n + 1);
    for (int i = 0; i + 1 < n - 1; ++i) g.set_label(i, i + 1, EdgeLabel::solid(3));
    g.set_label(n - 3, n - 1, EdgeLabel::solid(3));
    g.set_label(1, n, EdgeLabel::solid(3));
    v.push_back({"D~", g});
  }
  {
    CoxeterGraph g(7);  // E6~: E6 with the branch lengthened
    for (int i = 0; i < 4; ++i) g.set_label(i, i + 1, EdgeLabel::solid(3));
    g.set_label(2, 5, EdgeLabel::solid(3));
    g.set_label(5, 6, EdgeLabel::solid(3));
    v.push_back({"E6~", g});
  }
  {
    CoxeterGraph g(8);  // E7~: branch in the middle of a 7-path
    for (int i = 0; i < 6; ++i) g.set_label(i, i + 1, EdgeLabel::solid(3));
    g.set_label(3, 7, EdgeLabel::solid(3));
    v.push_back({"E7~", g});
  }
  {
    CoxeterGraph g(9);  // E8~: branch at position 2 of an 8-path
    for (int i = 0; i < 7; ++i) g.set_label(i, i + 1, EdgeLabel::solid(3));
    g.set_label(2, 8, EdgeLabel::solid(3));
    v.push_back({"E8~", g});
  }
  v.push_back({"F4~", path_graph({3, 3, 4, 3})});
  v.push_back({"G2~", path_graph({3, 6})});
  return v;
}

double gram_entry_oracle(const EdgeLabel& l) {
  switch (l.kind) {
    case EdgeLabel::None: return 0.0;
    case EdgeLabel::Solid: return -std::cos(M_PI / l.m);
    case EdgeLabel::Infinite: return -1.0;
    case EdgeLabel::Dotted: return -l.c;
  }
  return 0.0;
}

CoxeterGraph random_graph(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(0, 9);
  CoxeterGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int p = pick(rng);
      if (p <= 4) continue;
      if (p == 9)
        g.set_label(i, j, EdgeLabel::infinite());
      else if (p == 8)
        g.set_label(i, j, EdgeLabel::dotted(1.0 + (pick(rng) + 1) * 0.25));
      else
        g.set_label(i, j, EdgeLabel::solid(p - 2));
    }
  return g;
}

CoxeterGraph permuted(const CoxeterGraph& g, const std::vector<int>& perm) {
  CoxeterGraph out(g.rank());
  for (auto [i, j, l] : g.edges()) out.set_label(perm[i], perm[j], l);
  return out;
}

}  // namespace

TEST_CASE("gram matrix follows the edge conventions") {
  CoxeterGraph g(4);
  g.set_label(0, 1, EdgeLabel::solid(5));
  g.set_label(1, 2, EdgeLabel::infinite());
  g.set_label(2, 3, EdgeLabel::dotted(1.75));
  Eigen::MatrixXd m = gram_matrix(g);
  for (int i = 0; i < 4; ++i) CHECK(m(i, i) == 1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(m(i, j) == doctest::Approx(gram_entry_oracle(g.label(i, j))).epsilon(1e-15));
      CHECK(m(i, j) == m(j, i));
    }
}

TEST_CASE("definiteness classes match the finite and affine catalogs") {
  for (const auto& [name, g] : finite_catalog()) {
    CAPTURE(name);
    CAPTURE(g.rank());
    CHECK(classify_type(g) == GraphType::Finite);
    LevelResult lr = graph_level(g);
    CHECK(lr.level == 0);
    CHECK(lr.strict);
  }
  for (const auto& [name, g] : affine_catalog()) {
    CAPTURE(name);
    CAPTURE(g.rank());
    CHECK(classify_type(g) == GraphType::Affine);
    LevelResult lr = graph_level(g);
    CHECK(lr.level == 0);
    CHECK_FALSE(lr.strict);
  }
}

TEST_CASE("small hyperbolic graphs have the expected levels") {
  CHECK(classify_type(path_graph({3, 7})) == GraphType::Indefinite);
  LevelResult l337 = graph_level(path_graph({3, 7}));  // rank-3 chain (3,7)
  CHECK(l337.level == 1);
  CHECK(l337.strict);

  CoxeterGraph tri7(3);  // triangle (3,3,7)
  tri7.set_label(0, 1, EdgeLabel::solid(3));
  tri7.set_label(1, 2, EdgeLabel::solid(3));
  tri7.set_label(0, 2, EdgeLabel::solid(7));
  LevelResult lt = graph_level(tri7);
  CHECK(lt.level == 1);
  CHECK(lt.strict);

  // non-strict example: deleting one end leaves the affine infinite edge
  CoxeterGraph qp(3);
  qp.set_label(0, 1, EdgeLabel::solid(3));
  qp.set_label(1, 2, EdgeLabel::infinite());
  CHECK(classify_type(qp) == GraphType::Indefinite);
  LevelResult l6 = graph_level(qp);
  CHECK(l6.level == 1);
  CHECK_FALSE(l6.strict);

  CHECK(graph_level(cycle_graph(4, 0)).level == 2);
  CHECK(graph_level(cycle_graph(5, 0)).level == 3);
}

TEST_CASE("disjoint unions combine definiteness classes") {
  CoxeterGraph fin = type_A(3);
  CoxeterGraph aff = cycle_graph(3, 3);
  CoxeterGraph ind = path_graph({3, 7});
  CHECK(classify_type(fin.disjoint_union(fin)) == GraphType::Finite);
  CHECK(classify_type(fin.disjoint_union(aff)) == GraphType::Affine);
  CHECK(classify_type(aff.disjoint_union(fin)) == GraphType::Affine);
  CHECK(classify_type(aff.disjoint_union(aff)) == GraphType::Affine);
  CHECK(classify_type(fin.disjoint_union(ind)) == GraphType::Indefinite);
  CHECK(classify_type(ind.disjoint_union(aff)) == GraphType::Indefinite);
}

TEST_CASE("components and connectivity") {
  CoxeterGraph g = type_A(3).disjoint_union(type_B(2));
  CHECK_FALSE(g.connected());
  auto comps = g.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 3);
  CHECK(comps[1].size() == 2);
  CHECK(type_A(5).connected());
  CHECK(CoxeterGraph(1).connected());
}

TEST_CASE("serialize and parse round-trip bit-exactly") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    CoxeterGraph g = random_graph(rng, 2 + int(rng() % 7));
    CoxeterGraph back = parse_cox(serialize_cox(g));
    CHECK(back == g);
  }
  // irrational dotted weights survive the text format
  CoxeterGraph g(2);
  g.set_label(0, 1, EdgeLabel::dotted(std::sqrt(2.0)));
  CHECK(parse_cox(serialize_cox(g)) == g);
  g.set_label(0, 1, EdgeLabel::dotted(std::nextafter(1.0, 2.0)));
  CHECK(parse_cox(serialize_cox(g)) == g);
}

TEST_CASE("parser rejects malformed and out-of-range records") {
  CHECK_THROWS_AS(parse_cox("edge 0 1 3\n"), SyntaxError);
  CHECK_THROWS_AS(parse_cox("n x\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 0\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\nn 2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_cox("n 2\nedge 0 2 3\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\nedge 0 0 3\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\nedge 0 1 2\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\nedge 0 1 3\nedge 1 0 4\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\ndedge 0 1 0.5\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\ndedge 0 1 1.0\n"), RangeError);
  CHECK_THROWS_AS(parse_cox("n 2\nfoo 1 2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_cox("n 2\nedge 0 1 3 9\n"), SyntaxError);
  CHECK_THROWS_AS(parse_cox(""), SyntaxError);
  CHECK_NOTHROW(parse_cox("# comment\nn 2\n# another\nedge 0 1 inf\n"));
}

TEST_CASE("canonical key identifies relabelings and nothing else") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 3 + int(rng() % 5);
    CoxeterGraph g = random_graph(rng, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CoxeterGraph h = permuted(g, perm);
    CHECK(canonical_key(g) == canonical_key(h));
    CHECK(is_isomorphic(g, h));
    auto map = isomorphism_map(g, h);
    REQUIRE(map.has_value());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        CHECK(g.label(i, j) == h.label((*map)[i], (*map)[j]));
  }
  // changing one label changes the key
  CoxeterGraph a = path_graph({3, 4, 5});
  CoxeterGraph b = path_graph({3, 4, 6});
  CHECK(canonical_key(a) != canonical_key(b));
  CHECK_FALSE(is_isomorphic(a, b));
  // dotted weights compare after 1e-7 quantization
  CoxeterGraph d1(2), d2(2), d3(2);
  d1.set_label(0, 1, EdgeLabel::dotted(1.5));
  d2.set_label(0, 1, EdgeLabel::dotted(1.5 + 4e-9));
  d3.set_label(0, 1, EdgeLabel::dotted(1.5 + 1e-6));
  CHECK(canonical_key(d1) == canonical_key(d2));
  CHECK(canonical_key(d1) != canonical_key(d3));
}

TEST_CASE("induced subgraphs keep labels and order") {
  CoxeterGraph g = path_graph({3, 4, 5, 6});
  CoxeterGraph sub = g.induced({4, 3, 0});
  CHECK(sub.rank() == 3);
  CHECK(sub.label(0, 1) == EdgeLabel::solid(6));
  CHECK(sub.label(1, 2).absent());
  CHECK(sub.label(0, 2).absent());
}
