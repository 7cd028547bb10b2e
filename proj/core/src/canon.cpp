#include "coxpack/canon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>

namespace coxpack {

namespace {

std::uint64_t edge_token(const EdgeLabel& e) {
  switch (e.kind) {
    case EdgeLabel::Kind::None:
      return 0;
    case EdgeLabel::Kind::Infinite:
      return 1;
    case EdgeLabel::Kind::Solid:
      return static_cast<std::uint64_t>(e.m);
    case EdgeLabel::Kind::Dotted:
      return (std::uint64_t{1} << 32) +
             static_cast<std::uint64_t>(std::llround(e.c * 1e7));
  }
  return 0;
}

struct CanonSearch {
  int n = 0;
  std::vector<std::uint64_t> tok;  // n*n token matrix
  std::vector<std::uint64_t> best;
  std::vector<int> best_perm;
  bool have_best = false;

  std::uint64_t t(int i, int j) const { return tok[i * n + j]; }

  // Stable color refinement; colors are renumbered by signature order so the
  // numbering itself is isomorphism-invariant.
  void refine(std::vector<int>& colors) const {
    using Sig = std::pair<int, std::vector<std::pair<std::uint64_t, int>>>;
    while (true) {
      std::map<Sig, int> order;
      std::vector<Sig> sigs(n);
      for (int v = 0; v < n; ++v) {
        Sig s;
        s.first = colors[v];
        for (int u = 0; u < n; ++u) {
          if (u == v) continue;
          s.second.emplace_back(t(v, u), colors[u]);
        }
        std::sort(s.second.begin(), s.second.end());
        order.emplace(s, 0);
        sigs[v] = std::move(s);
      }
      int next = 0;
      for (auto& kv : order) kv.second = next++;
      bool changed = false;
      for (int v = 0; v < n; ++v) {
        int c = order[sigs[v]];
        if (c != colors[v]) changed = true;
        colors[v] = c;
      }
      if (!changed) return;
    }
  }

  void leaf(const std::vector<int>& colors) {
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[colors[v]] = v;
    std::vector<std::uint64_t> s;
    s.reserve(n * (n - 1) / 2);
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) s.push_back(t(perm[i], perm[j]));
    if (!have_best || s < best) {
      best = std::move(s);
      best_perm = std::move(perm);
      have_best = true;
    }
  }

  void dfs(std::vector<int> colors) {
    refine(colors);
    int target = -1;
    for (int c = 0; c < n && target < 0; ++c) {
      int count = 0;
      for (int v = 0; v < n; ++v)
        if (colors[v] == c) ++count;
      if (count >= 2) target = c;
    }
    if (target < 0) {
      leaf(colors);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      std::vector<int> split(n);
      for (int u = 0; u < n; ++u)
        split[u] = colors[u] * 2 + (u == v ? 0 : 1);
      dfs(std::move(split));
    }
  }
};

CanonSearch make_search(const CoxeterGraph& g) {
  CanonSearch cs;
  cs.n = g.rank();
  cs.tok.assign(static_cast<size_t>(cs.n) * cs.n, 0);
  for (int i = 0; i < cs.n; ++i)
    for (int j = 0; j < cs.n; ++j)
      if (i != j) cs.tok[i * cs.n + j] = edge_token(g.label(i, j));
  return cs;
}

void run_search(CanonSearch& cs) {
  if (cs.n == 0) {
    cs.have_best = true;
    return;
  }
  cs.dfs(std::vector<int>(cs.n, 0));
}

std::string key_string(const CanonSearch& cs) {
  std::string out;
  out.reserve(8 + cs.best.size() * 8);
  auto push = [&out](std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
  };
  push(static_cast<std::uint64_t>(cs.n));
  for (std::uint64_t v : cs.best) push(v);
  return out;
}

}  // namespace

std::string canonical_key(const CoxeterGraph& g) {
  CanonSearch cs = make_search(g);
  run_search(cs);
  return key_string(cs);
}

bool is_isomorphic(const CoxeterGraph& a, const CoxeterGraph& b) {
  if (a.rank() != b.rank()) return false;
  return canonical_key(a) == canonical_key(b);
}

std::optional<std::vector<int>> isomorphism_map(const CoxeterGraph& a,
                                                const CoxeterGraph& b) {
  if (a.rank() != b.rank()) return std::nullopt;
  CanonSearch ca = make_search(a);
  CanonSearch cb = make_search(b);
  run_search(ca);
  run_search(cb);
  if (key_string(ca) != key_string(cb)) return std::nullopt;

  int n = a.rank();
  std::vector<int> pos_a(n);
  for (int j = 0; j < n; ++j) pos_a[ca.best_perm[j]] = j;
  std::vector<int> map(n);
  for (int v = 0; v < n; ++v) map[v] = cb.best_perm[pos_a[v]];
  return map;
}

}  // namespace coxpack
