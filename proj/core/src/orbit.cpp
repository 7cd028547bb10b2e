#include "coxpack/orbit.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <thread>
#include <unordered_set>

#include "coxpack/errors.hpp"

namespace coxpack {

namespace {

std::string quantized_key(const Eigen::VectorXd& v, double quantum) {
  std::string key;
  key.reserve(v.size() * 8);
  for (int i = 0; i < v.size(); ++i) {
    std::int64_t q = std::llround(v(i) / quantum);
    char buf[8];
    std::memcpy(buf, &q, 8);
    key.append(buf, 8);
  }
  return key;
}

struct Candidate {
  Eigen::VectorXd vec;
  double height;
};

// Shared breadth-first walk over the orbit of `seeds`. `expand_sign` is +1
// for weights (expand where the pairing is positive) and -1 for roots.
// `on_emit` sees each new element in deterministic order and returns false
// to stop the walk. Returns true if the walk ran to frontier exhaustion.
bool orbit_stream(const RootBasis& basis,
                  const std::vector<Eigen::VectorXd>& seeds,
                  const Eigen::VectorXd& chamber_functional, int expand_sign,
                  const OrbitBudget& budget, const Tolerances& tol,
                  int threads,
                  const std::function<bool(const OrbitElement&)>& on_emit) {
  if (!budget.has_finite_bound())
    throw Error("orbit budget has no finite bound");
  threads = std::max(1, threads);

  const int n = basis.count();
  std::vector<Eigen::VectorXd> functional(n);
  for (int s = 0; s < n; ++s) functional[s] = basis.form.m * basis.root(s);

  std::unordered_set<std::string> seen;
  std::vector<OrbitElement> frontier;
  long long emitted_count = 0;
  bool stopped = false;

  auto try_emit = [&](Eigen::VectorXd vec, int word_length, double height) {
    if (stopped) return;
    if (budget.max_word_length >= 0 && word_length > budget.max_word_length)
      return;
    if (height > budget.max_height) return;
    if (budget.max_elements >= 0 && emitted_count >= budget.max_elements) {
      stopped = true;
      return;
    }
    std::string key = quantized_key(vec, tol.dedup_quantum);
    if (!seen.insert(std::move(key)).second) return;
    OrbitElement el;
    el.vector = std::move(vec);
    el.word_length = word_length;
    el.height = height;
    ++emitted_count;
    if (!on_emit(el)) {
      stopped = true;
      return;
    }
    frontier.push_back(std::move(el));
  };

  for (const Eigen::VectorXd& seed : seeds) {
    try_emit(seed, 0, chamber_functional.dot(seed));
    if (stopped) return false;
  }

  int word = 0;
  while (!frontier.empty() && !stopped) {
    ++word;
    if (budget.max_word_length >= 0 && word > budget.max_word_length) break;
    std::vector<OrbitElement> layer;
    layer.swap(frontier);

    // Children of one layer element, in generator order. Heights increase
    // strictly along expansion, so the height bound may prune children.
    auto expand = [&](const OrbitElement& el, std::vector<Candidate>& dst) {
      for (int s = 0; s < n; ++s) {
        double p = functional[s].dot(el.vector);
        if (expand_sign > 0 ? (p <= tol.zero) : (p >= -tol.zero)) continue;
        Candidate c;
        c.vec = el.vector - 2.0 * p * basis.root(s);
        c.height = chamber_functional.dot(c.vec);
        if (c.height > budget.max_height) continue;
        dst.push_back(std::move(c));
      }
    };

    std::vector<std::vector<Candidate>> chunks(layer.size());
    if (threads == 1 || layer.size() < 64) {
      for (size_t i = 0; i < layer.size(); ++i) expand(layer[i], chunks[i]);
    } else {
      std::vector<std::thread> pool;
      std::atomic<size_t> next{0};
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
          for (size_t i = next.fetch_add(1); i < layer.size();
               i = next.fetch_add(1))
            expand(layer[i], chunks[i]);
        });
      for (auto& th : pool) th.join();
    }

    for (auto& chunk : chunks) {
      for (Candidate& c : chunk) {
        try_emit(std::move(c.vec), word, c.height);
        if (stopped) return false;
      }
    }
  }
  return !stopped;
}

Eigen::VectorXd weight_sum(const RootBasis& basis, const Tolerances& tol) {
  std::vector<WeightVector> ws = weights(basis, tol);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(basis.rho());
  for (const WeightVector& w : ws) sum += w.vector;
  return sum;
}

}  // namespace

std::vector<OrbitElement> orbit_weights(const RootBasis& basis,
                                        const OrbitBudget& budget,
                                        const Tolerances& tol, int threads) {
  Signature sig = signature(basis.form, tol);
  if (!is_lorentzian(sig)) throw NotLorentzian("orbit generation needs a Lorentzian form");
  std::vector<WeightVector> ws = weights(basis, tol);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(basis.rho());
  for (const WeightVector& w : ws) sum += w.vector;
  Eigen::VectorXd h_functional = basis.form.m * (-sum);
  std::vector<Eigen::VectorXd> seeds;
  seeds.reserve(ws.size());
  for (const WeightVector& w : ws) seeds.push_back(w.vector);

  std::vector<OrbitElement> out;
  orbit_stream(basis, seeds, h_functional, +1, budget, tol, threads,
               [&out](const OrbitElement& el) {
                 out.push_back(el);
                 return true;
               });
  return out;
}

std::vector<OrbitElement> orbit_roots(const RootBasis& basis,
                                      const OrbitBudget& budget,
                                      const Tolerances& tol, int threads) {
  Eigen::VectorXd h_functional = basis.form.m * weight_sum(basis, tol);
  std::vector<Eigen::VectorXd> seeds;
  seeds.reserve(basis.count());
  for (int s = 0; s < basis.count(); ++s) seeds.push_back(basis.root(s));

  std::vector<OrbitElement> out;
  orbit_stream(basis, seeds, h_functional, -1, budget, tol, threads,
               [&out](const OrbitElement& el) {
                 out.push_back(el);
                 return true;
               });
  return out;
}

std::vector<Eigen::VectorXd> limit_root_samples(const RootBasis& basis,
                                                double min_height, int count,
                                                const Tolerances& tol) {
  if (count <= 0) return {};
  Eigen::VectorXd h_functional = basis.form.m * weight_sum(basis, tol);
  std::vector<Eigen::VectorXd> seeds;
  seeds.reserve(basis.count());
  for (int s = 0; s < basis.count(); ++s) seeds.push_back(basis.root(s));

  OrbitBudget budget;
  budget.max_elements = 4000000;

  std::vector<Eigen::VectorXd> samples;
  orbit_stream(basis, seeds, h_functional, -1, budget, tol, 1,
               [&](const OrbitElement& el) {
                 if (el.height >= min_height)
                   samples.push_back(el.vector / el.height);
                 return static_cast<int>(samples.size()) < count;
               });
  if (static_cast<int>(samples.size()) < count) throw InsufficientDepth("orbit budget exhausted before the sample set was filled");
  return samples;
}

}  // namespace coxpack
