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

#include "seedrec/observables.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "seedrec/canonical.hpp"
#include "seedrec/errors.hpp"

namespace seedrec {

namespace {

// Pattern vertices in BFS order from the most constrained vertex; every
// vertex after the first is adjacent to an earlier one (its anchor).
struct Plan {
  std::vector<Vertex> order;
  std::vector<Vertex> anchor;  // anchor[i] = pattern vertex of order[i]'s parent
};

Plan make_plan(const Tree& tau, const std::vector<int>& min_deg) {
  const int r = tau.size();
  Vertex root = 0;
  for (Vertex u = 1; u < r; ++u) {
    if (std::pair(min_deg[u], tau.degree(u)) >
        std::pair(min_deg[root], tau.degree(root))) {
      root = u;
    }
  }
  Plan p;
  std::vector<char> seen(r, 0);
  p.order.push_back(root);
  p.anchor.push_back(-1);
  seen[root] = 1;
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    for (Vertex w : tau.neighbors(p.order[i])) {
      if (!seen[w]) {
        seen[w] = 1;
        p.order.push_back(w);
        p.anchor.push_back(p.order[i]);
      }
    }
  }
  return p;
}

// Backtracking over injective homomorphisms. ok(u, x) filters candidate
// images; visit(phi) sees each complete embedding (phi indexed by pattern
// vertex).
class Embedder {
 public:
  using Ok = std::function<bool(Vertex, Vertex)>;
  using Visit = std::function<void(const std::vector<Vertex>&)>;

  Embedder(const Tree& tau, const Tree& t, const Plan& plan, Ok ok)
      : tau_(tau), t_(t), plan_(plan), ok_(std::move(ok)),
        phi_(tau.size(), -1), used_(t.size(), 0) {}

  void run(const Visit& visit) {
    visit_ = &visit;
    const Vertex root = plan_.order[0];
    for (Vertex x = 0; x < t_.size(); ++x) {
      if (!ok_(root, x)) continue;
      place(0, x);
    }
  }

 private:
  void place(std::size_t i, Vertex x) {
    const Vertex u = plan_.order[i];
    phi_[u] = x;
    used_[x] = 1;
    if (i + 1 == plan_.order.size()) {
      (*visit_)(phi_);
    } else {
      const Vertex next = plan_.order[i + 1];
      for (Vertex y : t_.neighbors(phi_[plan_.anchor[i + 1]])) {
        if (!used_[y] && ok_(next, y)) place(i + 1, y);
      }
    }
    used_[x] = 0;
    phi_[u] = -1;
  }

  const Tree& tau_;
  const Tree& t_;
  const Plan& plan_;
  Ok ok_;
  std::vector<Vertex> phi_;
  std::vector<char> used_;
  const Visit* visit_ = nullptr;
};

std::vector<int> min_degrees(const DecoratedTree& tau) {
  std::vector<int> m(tau.size());
  for (Vertex u = 0; u < tau.size(); ++u) {
    m[u] = tau.tree.degree(u);
    if (tau.ell[u] > 0) m[u] = std::max(m[u], tau.ell[u] + 1);
  }
  return m;
}

// weight[u][deg] = [deg - 1]_{ell(u)} for host degrees 0..max.
std::vector<std::vector<BigInt>> weight_table(const DecoratedTree& tau,
                                              int max_deg) {
  std::vector<std::vector<BigInt>> w(tau.size());
  for (Vertex u = 0; u < tau.size(); ++u) {
    w[u].resize(max_deg + 1);
    for (int d = 0; d <= max_deg; ++d) {
      if (tau.ell[u] == 0) {
        w[u][d] = 1;
      } else if (d >= 1) {
        w[u][d] = falling_factorial(static_cast<std::uint64_t>(d - 1),
                                    static_cast<std::uint64_t>(tau.ell[u]));
      } else {
        w[u][d] = 0;
      }
    }
  }
  return w;
}

using Filter = std::function<bool(const std::vector<Vertex>&)>;

// Sum of weights over embeddings passing `keep`. Accumulates in 128-bit
// integers and redoes the sum with GMP if anything overflows.
BigInt weighted_sum(const DecoratedTree& tau, const Tree& t,
                    const Filter& keep) {
  const auto min_deg = min_degrees(tau);
  const Plan plan = make_plan(tau.tree, min_deg);
  const auto table = weight_table(tau, t.max_degree());
  const int r = tau.size();
  std::vector<std::vector<__int128>> small(r);
  std::vector<std::vector<char>> fits(r);
  for (int u = 0; u < r; ++u) {
    for (const BigInt& b : table[u]) {
      const bool ok = mpz_sizeinbase(b.get_mpz_t(), 2) < 62;
      fits[u].push_back(ok);
      small[u].push_back(ok ? static_cast<__int128>(b.get_si()) : 0);
    }
  }
  auto ok = [&](Vertex u, Vertex x) { return t.degree(x) >= min_deg[u]; };
  Embedder e(tau.tree, t, plan, ok);

  __int128 sum = 0;
  bool overflow = false;
  e.run([&](const std::vector<Vertex>& phi) {
    if (overflow || (keep && !keep(phi))) return;
    __int128 prod = 1;
    for (int u = 0; u < r; ++u) {
      const int d = t.degree(phi[u]);
      if (!fits[u][d] || __builtin_mul_overflow(prod, small[u][d], &prod)) {
        overflow = true;
        return;
      }
    }
    if (__builtin_add_overflow(sum, prod, &sum)) overflow = true;
  });
  if (!overflow) {
    // Split into two 64-bit halves for GMP.
    BigInt hi(static_cast<long>(sum >> 62)), lo(static_cast<long>(
                                                 sum & ((static_cast<__int128>(1) << 62) - 1)));
    return hi * BigInt(1L << 31) * BigInt(1L << 31) + lo;
  }
  BigInt big = 0;
  e.run([&](const std::vector<Vertex>& phi) {
    if (keep && !keep(phi)) return;
    BigInt prod = 1;
    for (int u = 0; u < r; ++u) prod *= table[u][t.degree(phi[u])];
    big += prod;
  });
  return big;
}

// Single-vertex pattern: sum over host degrees.
BigInt single_vertex_sum(int ell, const Tree& t) {
  std::vector<long> hist(t.max_degree() + 1, 0);
  for (Vertex x = 0; x < t.size(); ++x) ++hist[t.degree(x)];
  BigInt sum = 0;
  for (int d = 0; d < static_cast<int>(hist.size()); ++d) {
    if (hist[d] == 0) continue;
    if (ell == 0) {
      sum += hist[d];
    } else if (d >= 1) {
      sum += hist[d] * falling_factorial(static_cast<std::uint64_t>(d - 1),
                                         static_cast<std::uint64_t>(ell));
    }
  }
  return sum;
}

struct Listed {
  std::vector<BigInt> weight;
  std::vector<std::vector<Vertex>> image;
};

Listed list_embeddings(const DecoratedTree& tau, const Tree& t) {
  const auto min_deg = min_degrees(tau);
  const Plan plan = make_plan(tau.tree, min_deg);
  const auto table = weight_table(tau, t.max_degree());
  Listed out;
  Embedder e(tau.tree, t, plan,
             [&](Vertex u, Vertex x) { return t.degree(x) >= min_deg[u]; });
  e.run([&](const std::vector<Vertex>& phi) {
    BigInt prod = 1;
    for (int u = 0; u < tau.size(); ++u) prod *= table[u][t.degree(phi[u])];
    if (prod == 0) return;
    out.weight.push_back(std::move(prod));
    out.image.push_back(phi);
  });
  return out;
}

}  // namespace

EmbeddingCount count_F(const DecoratedTree& tau, const Tree& t) {
  if (tau.size() == 1) return single_vertex_sum(tau.ell[0], t);
  return weighted_sum(tau, t, nullptr);
}

double count_F_approx(const DecoratedTree& tau, const Tree& t) {
  return to_double(Rational(count_F(tau, t)));
}

SplitCount count_F_split(const DecoratedTree& tau, const DecoratedTree& sigma,
                         const Tree& t) {
  Listed a = list_embeddings(tau, t);
  Listed b = list_embeddings(sigma, t);
  // Index sigma-embeddings by the host vertices they cover.
  std::vector<std::vector<int>> by_vertex(t.size());
  for (std::size_t j = 0; j < b.image.size(); ++j) {
    for (Vertex x : b.image[j]) by_vertex[x].push_back(static_cast<int>(j));
  }
  std::vector<std::size_t> stamp(b.image.size(), 0);
  BigInt total_b = 0;
  for (const auto& w : b.weight) total_b += w;
  BigInt overlap = 0, total_a = 0;
  for (std::size_t i = 0; i < a.image.size(); ++i) {
    BigInt hit = 0;
    for (Vertex x : a.image[i]) {
      for (int j : by_vertex[x]) {
        if (stamp[j] == i + 1) continue;
        stamp[j] = i + 1;
        hit += b.weight[j];
      }
    }
    overlap += a.weight[i] * hit;
    total_a += a.weight[i];
  }
  return {total_a * total_b - overlap, overlap};
}

namespace {

bool connected_subset(const Tree& tau, unsigned mask) {
  Vertex start = __builtin_ctz(mask);
  unsigned seen = 1u << start;
  std::vector<Vertex> stack{start};
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : tau.neighbors(u)) {
      unsigned bit = 1u << w;
      if ((mask & bit) && !(seen & bit)) {
        seen |= bit;
        stack.push_back(w);
      }
    }
  }
  return seen == mask;
}

std::vector<Vertex> members(unsigned mask) {
  std::vector<Vertex> out;
  for (Vertex u = 0; mask; ++u, mask >>= 1) {
    if (mask & 1u) out.push_back(u);
  }
  return out;
}

// All bijections a -> b that are isomorphisms of the induced subtrees.
void isomorphisms(const Tree& tau, const std::vector<Vertex>& a,
                  const std::vector<Vertex>& b, std::vector<Vertex>& img,
                  std::vector<char>& taken,
                  std::vector<std::vector<Vertex>>& out) {
  const std::size_t i = img.size();
  if (i == a.size()) {
    out.push_back(img);
    return;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (taken[j]) continue;
    bool ok = true;
    for (std::size_t p = 0; p < i && ok; ++p) {
      ok = tau.adjacent(a[i], a[p]) == tau.adjacent(b[j], img[p]);
    }
    if (!ok) continue;
    taken[j] = 1;
    img.push_back(b[j]);
    isomorphisms(tau, a, b, img, taken, out);
    img.pop_back();
    taken[j] = 0;
  }
}

BigInt factorial(int n) { return falling_factorial(n, n); }

}  // namespace

std::vector<MergerTerm> merger_expansion(const DecoratedTree& tau, int cap) {
  const int r = tau.size();
  if (r > cap) {
    throw CapExceeded("merger_expansion: |tau| = " + std::to_string(r) +
                      " exceeds cap " + std::to_string(cap));
  }
  // Connected vertex subsets grouped by size.
  std::vector<std::vector<unsigned>> subsets(r + 1);
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    if (connected_subset(tau.tree, mask)) {
      subsets[__builtin_popcount(mask)].push_back(mask);
    }
  }
  std::map<CanonicalCode, MergerTerm> terms;
  auto emit = [&](DecoratedTree glued, BigInt coef) {
    auto code = canonical_code(glued);
    auto it = terms.find(code);
    if (it == terms.end()) {
      terms.emplace(std::move(code),
                    MergerTerm{canonical_form(glued), std::move(coef)});
    } else {
      it->second.coefficient += coef;
    }
  };
  for (int s = 1; s <= r; ++s) {
    for (unsigned m1 : subsets[s]) {
      for (unsigned m2 : subsets[s]) {
        auto a = members(m1), b = members(m2);
        // Same shape is necessary; skip pairs with different codes early.
        if (canonical_code(tau.tree.induced(a)) !=
            canonical_code(tau.tree.induced(b))) {
          continue;
        }
        std::vector<std::vector<Vertex>> gs;
        std::vector<Vertex> img;
        std::vector<char> taken(b.size(), 0);
        isomorphisms(tau.tree, a, b, img, taken, gs);
        for (const auto& g : gs) {
          // Copy 1 keeps ids 0..r-1; copy 2's vertices outside b get new ids.
          std::vector<Vertex> id2(r, -1);
          for (std::size_t p = 0; p < a.size(); ++p) id2[g[p]] = a[p];
          int next = r;
          for (Vertex y = 0; y < r; ++y) {
            if (id2[y] < 0) id2[y] = next++;
          }
          std::vector<Edge> edges = tau.tree.edges();
          for (auto [x, y] : tau.tree.edges()) {
            if ((m2 >> x & 1u) && (m2 >> y & 1u)) continue;
            edges.emplace_back(id2[x], id2[y]);
          }
          std::vector<int> ell(next, 0);
          for (Vertex x = 0; x < r; ++x) ell[x] = tau.ell[x];
          for (Vertex y = 0; y < r; ++y) {
            if (!(m2 >> y & 1u)) ell[id2[y]] = tau.ell[y];
          }
          // Glued vertex a[p] carries l1 = ell(a[p]), l2 = ell(g[p]).
          std::vector<int> l1(a.size()), l2(a.size()), m(a.size());
          for (std::size_t p = 0; p < a.size(); ++p) {
            l1[p] = tau.ell[a[p]];
            l2[p] = tau.ell[g[p]];
            m[p] = std::max(l1[p], l2[p]);
          }
          Tree shape(next, edges);
          while (true) {
            BigInt coef = 1;
            for (std::size_t p = 0; p < a.size(); ++p) {
              coef *= factorial(l1[p]) * factorial(l2[p]);
              coef /= factorial(m[p] - l2[p]) * factorial(m[p] - l1[p]) *
                      factorial(l1[p] + l2[p] - m[p]);
              ell[a[p]] = m[p];
            }
            emit(DecoratedTree(shape, ell), coef);
            std::size_t p = 0;
            while (p < a.size() && ++m[p] > l1[p] + l2[p]) {
              m[p] = std::max(l1[p], l2[p]);
              ++p;
            }
            if (p == a.size()) break;
          }
        }
      }
    }
  }
  std::vector<MergerTerm> out;
  for (auto& [code, term] : terms) out.push_back(std::move(term));
  return out;
}

namespace {

std::vector<char> anchor_mask(const Tree& tau, const Anchor& anchor) {
  std::vector<char> in(tau.size(), 0);
  for (Vertex u : anchor.sigma) {
    if (u < 0 || u >= tau.size() || in[u]) {
      throw PreconditionError("anchor vertices must be distinct vertices of tau");
    }
    in[u] = 1;
  }
  if (!anchor.sigma.empty()) {
    unsigned mask = 0;
    if (tau.size() > 30) throw PreconditionError("anchor on a pattern too large");
    for (Vertex u : anchor.sigma) mask |= 1u << u;
    if (!connected_subset(tau, mask)) {
      throw PreconditionError("anchor is not a subtree of tau");
    }
  }
  if (anchor.seed_size < 0) throw PreconditionError("negative seed size");
  return in;
}

void perfect_run(const Tree& tau, const Tree& t,
                 const std::function<bool(Vertex, Vertex)>& ok,
                 const std::optional<Anchor>& anchor,
                 const std::function<void(const std::vector<Vertex>&)>& visit) {
  std::vector<int> min_deg(tau.size());
  for (Vertex u = 0; u < tau.size(); ++u) min_deg[u] = tau.degree(u);
  const Plan plan = make_plan(tau, min_deg);
  std::vector<char> in;
  int k = 0;
  if (anchor) {
    in = anchor_mask(tau, *anchor);
    k = anchor->seed_size;
  }
  Embedder e(tau, t, plan, [&](Vertex u, Vertex x) {
    if (!ok(u, x)) return false;
    return !anchor || ((x < k) == static_cast<bool>(in[u]));
  });
  e.run(visit);
}

}  // namespace

EmbeddingCount count_perfect(const Tree& tau, const DegreeDecoration& d,
                             const Tree& t, const std::optional<Anchor>& anchor) {
  if (static_cast<int>(d.size()) != tau.size()) {
    throw PreconditionError("degree decoration length differs from |tau|");
  }
  BigInt count = 0;
  long small = 0;
  perfect_run(
      tau, t, [&](Vertex u, Vertex x) { return t.degree(x) == d[u]; }, anchor,
      [&](const std::vector<Vertex>&) {
        if (++small == (1L << 60)) {
          count += small;
          small = 0;
        }
      });
  return count + small;
}

std::map<DegreeDecoration, EmbeddingCount> perfect_profile(
    const Tree& tau, const Tree& t, const std::optional<Anchor>& anchor) {
  std::map<DegreeDecoration, long> counts;
  DegreeDecoration d(tau.size());
  perfect_run(
      tau, t, [&](Vertex u, Vertex x) { return t.degree(x) >= tau.degree(u); },
      anchor, [&](const std::vector<Vertex>& phi) {
        for (Vertex u = 0; u < tau.size(); ++u) d[u] = t.degree(phi[u]);
        ++counts[d];
      });
  std::map<DegreeDecoration, EmbeddingCount> out;
  for (const auto& [key, c] : counts) out.emplace(key, BigInt(c));
  return out;
}

EmbeddingCount count_F_region(const DecoratedTree& tau, const Tree& t, int k,
                              Region region) {
  if (k < 1 || k > t.size()) throw PreconditionError("seed size out of range");
  if (region == Region::kInsideSeed && tau.size() > k) return 0;
  Filter keep = [&](const std::vector<Vertex>& phi) {
    int inside = 0;
    for (Vertex x : phi) inside += x < k ? 1 : 0;
    switch (region) {
      case Region::kIntersectsSeed:
        return inside > 0;
      case Region::kInsideSeed:
        return inside == static_cast<int>(phi.size());
      case Region::kOutsideSeed:
        return inside == 0;
    }
    return false;
  };
  if (tau.size() == 1) {
    // Degree-sum over the relevant vertex range.
    BigInt sum = 0;
    const int ell = tau.ell[0];
    const int lo = region == Region::kOutsideSeed ? k : 0;
    const int hi = region == Region::kOutsideSeed ? t.size() : k;
    for (Vertex x = lo; x < hi; ++x) {
      const int d = t.degree(x);
      if (ell == 0) {
        sum += 1;
      } else if (d >= 1) {
        sum += falling_factorial(static_cast<std::uint64_t>(d - 1),
                                 static_cast<std::uint64_t>(ell));
      }
    }
    return sum;
  }
  return weighted_sum(tau, t, keep);
}

}  // namespace seedrec
