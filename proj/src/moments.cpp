// Copyright 2026 The seedrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seedrec/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>

#include "seedrec/errors.hpp"
#include "seedrec/observables.hpp"

namespace seedrec {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

void require_alpha(const Rational& alpha) {
  require(alpha > 0, "alpha must be a positive rational");
}

// Remove leaf v; ids above v shift down.
DecoratedTree drop_leaf(const DecoratedTree& t, Vertex v) {
  std::vector<int> ell = t.ell;
  ell.erase(ell.begin() + v);
  return DecoratedTree(t.tree.without_leaf(v), std::move(ell));
}

// Closed forms for the base trees.
Rational base_value(const DecoratedTree& t, int n) {
  if (t.size() == 2) return 2 * n - 2;
  return t.ell[0] == 0 ? n : n - 2;
}

}  // namespace

int weight(const DecoratedTree& tau) { return tau.weight(); }

bool precedes(const DecoratedTree& sigma, const DecoratedTree& tau) {
  const int ws = sigma.weight(), wt = tau.weight();
  const int ss = sigma.size(), st = tau.size();
  if (ws < wt) return ss <= st;
  if (ws > wt) return false;
  if (ss != st) return ss < st;
  return sigma.total_decoration() < tau.total_decoration();
}

std::vector<Reduction> reduction_children(const DecoratedTree& tau,
                                          const Rational& alpha) {
  require_alpha(alpha);
  require(!tau.is_base(), "reduction_children: base trees have no children");
  std::map<CanonicalCode, Reduction> acc;
  auto add = [&](const DecoratedTree& child, const Rational& c) {
    if (c == 0) return;
    auto code = canonical_code(child);
    auto it = acc.find(code);
    if (it == acc.end()) {
      acc.emplace(std::move(code), Reduction{canonical_form(child), c});
    } else {
      it->second.coefficient += c;
    }
  };
  // (i) lower one decoration.
  for (Vertex u = 0; u < tau.size(); ++u) {
    const int l = tau.ell[u];
    if (l < 1) continue;
    DecoratedTree child = tau;
    --child.ell[u];
    add(child, l * (l + alpha - 1));
  }
  // (ii), (iii) remove a loose leaf v with neighbour u.
  for (Vertex v : tau.loose_leaves()) {
    const Vertex u = tau.tree.neighbors(v)[0];
    const int l = tau.ell[u];
    DecoratedTree child = drop_leaf(tau, v);
    add(child, tau.tree.degree(u) + l + alpha - 2);
    if (l >= 1) {
      --child.ell[u > v ? u - 1 : u];
      add(child, l * (l + alpha - 1));
    }
  }
  std::vector<Reduction> out;
  for (auto& [code, r] : acc) {
    r.coefficient.canonicalize();
    out.push_back(std::move(r));
  }
  return out;
}

RecurrenceSystem::RecurrenceSystem(const DecoratedTree& tau,
                                   const Rational& alpha)
    : alpha_(alpha) {
  require_alpha(alpha);
  std::vector<DecoratedTree> queue{canonical_form(tau)};
  index_.emplace(canonical_code(queue[0]), 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Node node;
    node.tree = queue[i];
    node.weight = node.tree.weight();
    node.base = node.tree.is_base();
    if (!node.base) {
      for (auto& r : reduction_children(node.tree, alpha)) {
        auto code = canonical_code(r.child);
        auto it = index_.find(code);
        int j;
        if (it == index_.end()) {
          j = static_cast<int>(queue.size());
          index_.emplace(std::move(code), j);
          queue.push_back(r.child);
        } else {
          j = it->second;
        }
        node.children.emplace_back(j, std::move(r.coefficient));
      }
    }
    nodes_.push_back(std::move(node));
  }
}

int RecurrenceSystem::index_of(const DecoratedTree& t) const {
  auto it = index_.find(canonical_code(t));
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::vector<Rational>> RecurrenceSystem::expectations(
    const Tree& seed, const std::vector<int>& ns) const {
  const int k = seed.size();
  require(k >= 2, "seed needs at least 2 vertices");
  for (int n : ns) require(n >= k, "n below the seed size");
  std::vector<std::vector<Rational>> out(ns.size());
  if (ns.empty()) return out;
  const int n_max = *std::max_element(ns.begin(), ns.end());

  // alpha = p/q. With D_n = (p+q) n - 2q, E_n = N_n / Q_n where
  // Q_{n+1} = Q_n D_n and N_{n+1} = (D_n + q w) N_n + sum (q c) N_n(sigma).
  const BigInt p = alpha_.get_num(), q = alpha_.get_den();
  const std::size_t m = nodes_.size();
  std::vector<BigInt> qw(m);
  std::vector<std::vector<std::pair<int, BigInt>>> qc(m);
  for (std::size_t j = 0; j < m; ++j) {
    qw[j] = q * nodes_[j].weight;
    for (const auto& [c, coef] : nodes_[j].children) {
      Rational scaled = coef * Rational(q);
      scaled.canonicalize();
      require(scaled.get_den() == 1, "non-integral scaled coefficient");
      qc[j].emplace_back(c, scaled.get_num());
    }
  }
  std::vector<BigInt> num(m), next(m);
  for (std::size_t j = 0; j < m; ++j) {
    num[j] = nodes_[j].base ? BigInt(base_value(nodes_[j].tree, k).get_num())
                            : count_F(nodes_[j].tree, seed);
  }
  BigInt Q = 1;
  auto emit = [&](int n) {
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (ns[i] != n) continue;
      out[i].resize(m);
      for (std::size_t j = 0; j < m; ++j) {
        if (nodes_[j].base) {
          out[i][j] = base_value(nodes_[j].tree, n);
        } else {
          out[i][j] = Rational(num[j], Q);
          out[i][j].canonicalize();
        }
      }
    }
  };
  emit(k);
  for (int n = k; n < n_max; ++n) {
    const BigInt d = (p + q) * n - 2 * q;
    for (std::size_t j = 0; j < m; ++j) {
      if (nodes_[j].base) continue;
      next[j] = (d + qw[j]) * num[j];
      for (const auto& [c, s] : qc[j]) next[j] += s * num[c];
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (nodes_[j].base) {
        next[j] = BigInt(base_value(nodes_[j].tree, n + 1).get_num()) * Q * d;
      }
    }
    std::swap(num, next);
    Q *= d;
    emit(n + 1);
  }
  return out;
}

Rational exact_expectation(const DecoratedTree& tau, const Tree& seed,
                           const Rational& alpha, int n) {
  return exact_expectation(tau, seed, alpha, std::vector<int>{n})[0];
}

std::vector<Rational> exact_expectation(const DecoratedTree& tau,
                                        const Tree& seed, const Rational& alpha,
                                        const std::vector<int>& ns) {
  RecurrenceSystem sys(tau, alpha);
  auto all = sys.expectations(seed, ns);
  std::vector<Rational> out;
  out.reserve(ns.size());
  for (auto& row : all) out.push_back(std::move(row[sys.root()]));
  return out;
}

Rational omega_normalizer(const Rational& w, int k, int n,
                          const Rational& alpha) {
  require_alpha(alpha);
  require(n >= k && k >= 2, "omega needs n >= k >= 2");
  Rational out = 1;
  for (int l = k; l < n; ++l) {
    Rational d = (1 + alpha) * l - 2;
    out *= d / (d + w);
  }
  out.canonicalize();
  return out;
}

double omega_normalizer_approx(double w, int k, int n, double alpha) {
  double log_sum = 0;
  for (int l = k; l < n; ++l) log_sum -= std::log1p(w / ((1 + alpha) * l - 2));
  return std::exp(log_sum);
}

ExponentReport gamma_exponent(const DecoratedTree& tau, const Rational& alpha) {
  require_alpha(alpha);
  std::map<CanonicalCode, int> memo;
  const Rational crit = 1 + alpha;
  std::function<int(const DecoratedTree&)> gamma = [&](const DecoratedTree& t) {
    const int w = t.weight();
    if (w < crit) return 0;
    auto code = canonical_code(t);
    if (auto it = memo.find(code); it != memo.end()) return it->second;
    int sup = 0;
    for (const auto& r : reduction_children(t, alpha)) {
      if (r.coefficient > 0 && r.child.weight() == w) {
        sup = std::max(sup, gamma(r.child) + 1);
      }
    }
    int g = (w == crit) ? std::max(1, sup) : sup;
    memo.emplace(std::move(code), g);
    return g;
  };
  ExponentReport rep;
  rep.weight = tau.weight();
  Rational ratio = Rational(rep.weight) / crit;
  ratio.canonicalize();
  rep.power = ratio > 1 ? ratio : Rational(1);
  rep.critical = rep.weight == crit;
  rep.log_power = gamma(tau);
  return rep;
}

}  // namespace seedrec
