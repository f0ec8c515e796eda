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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "seedrec/canonical.hpp"
#include "seedrec/errors.hpp"
#include "seedrec/growth.hpp"
#include "seedrec/observables.hpp"

namespace seedrec {
namespace {

// Reference oracle: every map V(tau) -> V(T), kept if injective and
// edge-preserving.
template <class Keep>
BigInt brute_F(const DecoratedTree& tau, const Tree& t, Keep keep) {
  const int r = tau.size(), n = t.size();
  std::vector<Vertex> phi(r, 0);
  BigInt total = 0;
  while (true) {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      for (int j = i + 1; j < r && ok; ++j) ok = phi[i] != phi[j];
    }
    for (auto [u, v] : tau.tree.edges()) ok = ok && t.adjacent(phi[u], phi[v]);
    if (ok && keep(phi)) {
      BigInt w = 1;
      for (int u = 0; u < r; ++u) {
        int d = t.degree(phi[u]);
        if (tau.ell[u] > 0) {
          w *= d >= 1 ? falling_factorial(d - 1, tau.ell[u]) : BigInt(0);
        }
      }
      total += w;
    }
    int i = 0;
    while (i < r && ++phi[i] == n) phi[i++] = 0;
    if (i == r) break;
  }
  return total;
}

BigInt brute_F(const DecoratedTree& tau, const Tree& t) {
  return brute_F(tau, t, [](const std::vector<Vertex>&) { return true; });
}

DecoratedTree random_pattern(std::mt19937_64& rng, int max_size, int max_ell) {
  int r = 1 + static_cast<int>(rng() % max_size);
  std::vector<Vertex> parent(r, 0);
  for (int v = 1; v < r; ++v) parent[v] = static_cast<int>(rng() % v);
  std::vector<int> ell(r);
  for (int& x : ell) x = static_cast<int>(rng() % (max_ell + 1));
  return DecoratedTree(Tree::from_parents(parent), ell);
}

Tree random_host(std::uint64_t seed, int n) {
  Rng rng(seed);
  return grow_abstract(Tree::path(2), AlphaParam(1, 2), n, rng);
}

TEST(CountF, Examples) {
  Tree t = random_host(1, 17);
  EXPECT_EQ(count_F(DecoratedTree(Tree(), {0}), t), 17);
  EXPECT_EQ(count_F(DecoratedTree(Tree(), {1}), t), 15);
  EXPECT_EQ(count_F(DecoratedTree(Tree::path(2)), t), 32);
  EXPECT_EQ(count_F(DecoratedTree(Tree(), {2}), Tree::star(4)), 2);
  EXPECT_EQ(count_F(DecoratedTree(Tree(), {0}), Tree()), 1);
}

TEST(CountF, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 300; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 3);
    Tree t = random_host(rep, 2 + static_cast<int>(rng() % 11));
    ASSERT_EQ(count_F(tau, t), brute_F(tau, t)) << rep;
  }
}

TEST(CountF, LargeValuesUseBigIntegers) {
  // [999]_9 alone is about 2^89; the sum must be exact.
  Tree star = Tree::star(1001);
  DecoratedTree tau(Tree::path(2), {9, 0});
  EXPECT_EQ(count_F(tau, star), 1000 * falling_factorial(999, 9));
  DecoratedTree tau2(Tree::path(3), {0, 8, 0});
  EXPECT_EQ(count_F(tau2, star), 1000 * 999 * falling_factorial(999, 8));
  // 128-bit path with a sum above 2^64.
  DecoratedTree tau3(Tree::path(2), {6, 0});
  EXPECT_EQ(count_F(tau3, star), 1000 * falling_factorial(999, 6));
}

TEST(CountF, RelabelInvariant) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 50; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 2);
    Tree t = random_host(100 + rep, 30);
    std::vector<Vertex> perm(30);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(count_F(tau, t), count_F(tau, t.relabeled(perm)));
  }
}

TEST(Split, Examples) {
  Tree t = random_host(2, 25);
  DecoratedTree v0(Tree(), {0});
  SplitCount s = count_F_split(v0, v0, t);
  EXPECT_EQ(s.disjoint, 25 * 24);
  EXPECT_EQ(s.overlap, 25);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 2);
    Tree h = random_host(200 + rep, 3 + static_cast<int>(rng() % 40));
    BigInt f = count_F(tau, h);
    SplitCount ss = count_F_split(tau, tau, h);
    EXPECT_EQ(ss.disjoint + ss.overlap, f * f);
    SplitCount s0 = count_F_split(tau, v0, h);
    EXPECT_EQ(s0.disjoint, f * (h.size() - tau.size()));
  }
}

TEST(Split, MatchesBruteForcePairs) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 40; ++rep) {
    DecoratedTree tau = random_pattern(rng, 3, 2);
    DecoratedTree sigma = random_pattern(rng, 3, 2);
    Tree h = random_host(300 + rep, 3 + static_cast<int>(rng() % 8));
    // Overlap by inclusion over a shared host vertex x: brute force on pairs.
    BigInt overlap = 0;
    const int r = tau.size();
    std::vector<Vertex> phi(r, 0);
    while (true) {
      bool ok = true;
      for (int i = 0; i < r && ok; ++i) {
        for (int j = i + 1; j < r && ok; ++j) ok = phi[i] != phi[j];
      }
      for (auto [u, v] : tau.tree.edges()) ok = ok && h.adjacent(phi[u], phi[v]);
      if (ok) {
        BigInt w1 = 1;
        for (int u = 0; u < r; ++u) {
          if (tau.ell[u] > 0) w1 *= falling_factorial(h.degree(phi[u]) - 1, tau.ell[u]);
        }
        BigInt w2 = brute_F(sigma, h, [&](const std::vector<Vertex>& psi) {
          for (Vertex x : psi) {
            if (std::find(phi.begin(), phi.end(), x) != phi.end()) return true;
          }
          return false;
        });
        overlap += w1 * w2;
      }
      int i = 0;
      while (i < r && ++phi[i] == h.size()) phi[i++] = 0;
      if (i == r) break;
    }
    EXPECT_EQ(count_F_split(tau, sigma, h).overlap, overlap) << rep;
  }
}

TEST(Merger, SingleVertexCases) {
  auto m0 = merger_expansion(DecoratedTree(Tree(), {0}));
  ASSERT_EQ(m0.size(), 1u);
  EXPECT_EQ(m0[0].tree, DecoratedTree(Tree(), {0}));
  EXPECT_EQ(m0[0].coefficient, 1);
  auto m1 = merger_expansion(DecoratedTree(Tree(), {1}));
  ASSERT_EQ(m1.size(), 2u);
  std::map<int, BigInt> by_ell;
  for (const auto& t : m1) by_ell[t.tree.ell[0]] = t.coefficient;
  EXPECT_EQ(by_ell[1], 1);
  EXPECT_EQ(by_ell[2], 1);
  EXPECT_THROW(merger_expansion(DecoratedTree(Tree::path(8))), CapExceeded);
}

TEST(Merger, ReproducesOverlapAndWeightBound) {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 60; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 3);
    auto terms = merger_expansion(tau);
    for (const auto& term : terms) {
      EXPECT_LE(term.tree.weight(), 2 * tau.weight());
      EXPECT_GT(term.coefficient, 0);
    }
    for (int h = 0; h < 3; ++h) {
      Tree t = random_host(400 + 3 * rep + h, 2 + static_cast<int>(rng() % 39));
      BigInt sum = 0;
      for (const auto& term : terms) sum += term.coefficient * count_F(term.tree, t);
      EXPECT_EQ(sum, count_F_split(tau, tau, t).overlap) << rep;
    }
  }
}

TEST(Perfect, Examples) {
  EXPECT_EQ(count_perfect(Tree(), {2}, Tree::path(4)), 2);
  EXPECT_EQ(count_perfect(Tree(), {9}, Tree::path(4)), 0);
  EXPECT_EQ(count_perfect(Tree::path(2), {3, 1}, Tree::star(4)), 3);
  EXPECT_THROW(count_perfect(Tree::path(3), {1, 2, 1}, Tree::path(4),
                             Anchor{{0, 2}, 2}),
               PreconditionError);
}

TEST(Perfect, PartitionIdentity) {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 100; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 3);
    Tree t = random_host(500 + rep, 2 + static_cast<int>(rng() % 40));
    BigInt sum = 0;
    for (const auto& [d, c] : perfect_profile(tau.tree, t)) {
      EXPECT_EQ(count_perfect(tau.tree, d, t), c);
      BigInt w = c;
      for (int u = 0; u < tau.size(); ++u) {
        if (tau.ell[u] > 0) w *= falling_factorial(d[u] - 1, tau.ell[u]);
      }
      sum += w;
    }
    EXPECT_EQ(sum, count_F(tau, t));
  }
}

// Every embedding meets the seed in a connected (possibly empty) piece.
TEST(Perfect, AnchorsPartitionEmbeddings) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 0);
    Tree t = random_host(600 + rep, 25);
    const int k = 2 + static_cast<int>(rng() % 5);
    const int r = tau.size();
    std::map<DegreeDecoration, BigInt> acc;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<Vertex> sigma;
      for (int u = 0; u < r; ++u) {
        if (mask >> u & 1u) sigma.push_back(u);
      }
      try {
        for (const auto& [d, c] : perfect_profile(tau.tree, t, Anchor{sigma, k})) {
          acc[d] += c;
        }
      } catch (const PreconditionError&) {
        // disconnected anchor
      }
    }
    EXPECT_EQ(acc, perfect_profile(tau.tree, t));
  }
}

TEST(Region, Properties) {
  std::mt19937_64 rng(12);
  Tree seed = Tree::star(4);
  for (int rep = 0; rep < 100; ++rep) {
    DecoratedTree tau = random_pattern(rng, 4, 2);
    Rng g(700 + rep);
    Tree t = grow_abstract(seed, AlphaParam(1), 4 + static_cast<int>(rng() % 20), g);
    BigInt all = count_F(tau, t);
    BigInt in = count_F_region(tau, t, 4, Region::kIntersectsSeed);
    BigInt out = count_F_region(tau, t, 4, Region::kOutsideSeed);
    BigInt inside = count_F_region(tau, t, 4, Region::kInsideSeed);
    EXPECT_EQ(in + out, all);
    EXPECT_EQ(inside, brute_F(tau, t, [](const std::vector<Vertex>& phi) {
                for (Vertex x : phi) {
                  if (x >= 4) return false;
                }
                return true;
              }));
    if (tau.size() > 4) EXPECT_EQ(inside, 0);
    EXPECT_EQ(out, brute_F(tau, t, [](const std::vector<Vertex>& phi) {
                for (Vertex x : phi) {
                  if (x < 4) return false;
                }
                return true;
              }));
  }
  DecoratedTree p3(Tree::path(3));
  EXPECT_EQ(count_F_region(p3, seed, 4, Region::kIntersectsSeed), count_F(p3, seed));
  EXPECT_EQ(count_F_region(p3, seed, 4, Region::kOutsideSeed), 0);
  EXPECT_THROW(count_F_region(p3, seed, 0, Region::kOutsideSeed), PreconditionError);
}

// F_{(tau\v)+} = F_tau + (deg_tau(u) - ell(u) - 2) F_{tau\v}.
TEST(Identity, LooseLeafRemoval) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    DecoratedTree tau = random_pattern(rng, 5, 2);
    Tree t = random_host(800 + rep, 5 + static_cast<int>(rng() % 40));
    for (Vertex v : tau.loose_leaves()) {
      Vertex u = tau.tree.neighbors(v)[0];
      std::vector<int> ell = tau.ell;
      ell.erase(ell.begin() + v);
      Vertex u2 = u > v ? u - 1 : u;
      DecoratedTree minus(tau.tree.without_leaf(v), ell);
      DecoratedTree plus = minus;
      ++plus.ell[u2];
      BigInt lhs = count_F(plus, t);
      BigInt rhs = count_F(tau, t) +
                   (tau.tree.degree(u) - tau.ell[u] - 2) * count_F(minus, t);
      EXPECT_EQ(lhs, rhs);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace seedrec
