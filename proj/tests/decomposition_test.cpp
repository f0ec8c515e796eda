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

#include <cmath>
#include <map>

#include "seedrec/canonical.hpp"
#include "seedrec/decomposition.hpp"
#include "seedrec/errors.hpp"
#include "seedrec/growth.hpp"
#include "seedrec/stats.hpp"

namespace seedrec {
namespace {

PlaneTree plane(const Tree& t) { return PlaneTree::from_tree(t); }

TEST(Urn, InitialState) {
  UrnState u = urn_initial(3, AlphaParam(1));
  EXPECT_EQ(u.sizes.size(), 4u);
  for (const auto& x : u.weights()) EXPECT_EQ(x, 1);
  EXPECT_EQ(u.total(), 4);
  u.validate();
  Rng rng(1);
  UrnState same = urn_sample(3, AlphaParam(1), 3, rng);
  EXPECT_EQ(same.sizes, u.sizes);
  EXPECT_THROW(urn_sample(1, AlphaParam(1), 3, rng), PreconditionError);
}

TEST(Urn, TotalGrowsByOnePlusAlpha) {
  Rng rng(2);
  for (int m = 0; m < 30; m += 7) {
    UrnState u = urn_sample(5, AlphaParam(1, 3), 5 + m, rng);
    u.validate();
    EXPECT_EQ(u.total(), urn_initial(5, AlphaParam(1, 3)).total() +
                             Rational(4, 3) * m);
  }
}

// Symmetric start at alpha = 1: every coordinate has mean total / 4.
TEST(Urn, ExchangeableMeans) {
  const int reps = 100000;
  std::vector<double> s(4, 0), s2(4, 0);
  for (int r = 0; r < reps; ++r) {
    Rng rng = make_stream(3, r);
    UrnState u = urn_sample(3, AlphaParam(1), 10, rng);
    for (int c = 0; c < 4; ++c) {
      double x = 2.0 * u.sizes[c] - 1;
      s[c] += x;
      s2[c] += x * x;
    }
  }
  for (int c = 0; c < 4; ++c) {
    double mean = s[c] / reps;
    double se = std::sqrt((s2[c] / reps - mean * mean) / reps);
    EXPECT_NEAR(mean, 18.0 / 4, 4 * se) << c;
  }
}

TEST(Decompose, SeedOnly) {
  PlaneTree s = plane(Tree::star(4));
  s.red = {1, 0, 0, 0};
  SubtreeForest f = decompose(s, 4);
  EXPECT_EQ(f.seed, s);
  ASSERT_EQ(f.entries.size(), 6u);
  for (const auto& e : f.entries) {
    EXPECT_EQ(e.tree.size(), 1);
    EXPECT_EQ(e.tree.flavor == Flavor::kRed, e.corner.red());
  }
  EXPECT_EQ(recompose(f), s);
}

TEST(Decompose, RoundTripAndUrnInvariants) {
  Rng rng(4);
  for (const char* a : {"1/2", "1", "3"}) {
    AlphaParam alpha = AlphaParam::parse(a);
    for (int k = 2; k <= 6; ++k) {
      for (const Tree& s : enumerate_trees(k)) {
        PlaneTree ps = plane(s);
        for (Vertex v = 0; v < k; ++v) ps.red[v] = v % ps.degree(v);
        for (int n : {k, k + 1, k + 5, 60}) {
          PlaneTree t = grow_planar(ps, alpha, n, rng);
          SubtreeForest f = decompose(t, k);
          EXPECT_EQ(f.seed, ps);
          EXPECT_EQ(recompose(f), t);
          UrnState u = urn_initial(k, alpha);
          u.n = n;
          u.sizes = f.sizes();
          u.validate();
          for (const auto& e : f.entries) {
            e.tree.validate();
            EXPECT_EQ(e.tree.red_corner_count(),
                      e.corner.red() ? e.tree.size() : e.tree.size() - 1);
          }
        }
      }
    }
  }
}

TEST(Decompose, RejectsForeignTrees) {
  PlaneTree t = plane(Tree(4, {{0, 3}, {3, 1}, {1, 2}}));
  EXPECT_THROW(decompose(t, 2), PreconditionError);
}

TEST(Decompose, SizeLawMatchesUrn) {
  const int reps = 20000;
  PlaneTree seed = plane(Tree::path(3));
  std::map<std::vector<int>, long> a, b;
  for (int r = 0; r < reps; ++r) {
    Rng g1 = make_stream(21, r), g2 = make_stream(22, r);
    ++a[decompose(grow_planar(seed, AlphaParam(1), 10, g1), 3).sizes()];
    ++b[urn_sample(3, AlphaParam(1), 10, g2).sizes];
  }
  EXPECT_GT(chi_square_homogeneity(a, b).p_value, 1e-3);
}

TEST(Coupled, IdenticalSeedsGiveIdenticalTrees) {
  PlaneTree s = plane(Tree::star(5));
  Rng rng(5);
  auto out = coupled_grow(s, s, AlphaParam(2, 3), 80, rng);
  EXPECT_EQ(out.first, out.second);
  out.urn.validate();
}

TEST(Coupled, Errors) {
  Rng rng(6);
  EXPECT_THROW(coupled_grow(plane(Tree::path(3)), plane(Tree::path(4)),
                            AlphaParam(1), 5, rng),
               PreconditionError);
}

// Shared planted subtrees, re-read from each output by decompose.
TEST(Coupled, SharedForest) {
  PlaneTree s1 = plane(Tree::star(5)), s2 = plane(Tree::path(5));
  for (int r = 0; r < 50; ++r) {
    Rng rng = make_stream(8, r);
    auto out = coupled_grow(s1, s2, AlphaParam(1), 70, rng);
    auto f1 = decompose(out.first, 5), f2 = decompose(out.second, 5);
    std::multiset<std::string> m1, m2;
    auto key = [](PlantedPlaneTree p) {
      std::string s = p.flavor == Flavor::kRed ? "r" : "b";
      for (std::size_t l = 1; l < p.origin.size(); ++l) {
        s += std::to_string(p.origin[l]) + ":" + std::to_string(p.red[l]) + ":";
        for (Vertex w : p.order[l]) {
          s += (w == 0 ? std::string("R") : std::to_string(p.origin[w])) + ",";
        }
        s += ";";
      }
      return s;
    };
    for (const auto& e : f1.entries) m1.insert(key(e.tree));
    for (const auto& e : f2.entries) m2.insert(key(e.tree));
    EXPECT_EQ(m1, m2);
  }
}

void enumerate_coupled(const CoupledGrower& g, const Rational& alpha, int n,
                       const Rational& p,
                       std::vector<std::pair<Tree, Rational>>& out1,
                       std::vector<std::pair<Tree, Rational>>& out2) {
  if (g.size() == n) {
    out1.emplace_back(g.first().to_tree(), p);
    out2.emplace_back(g.second().to_tree(), p);
    return;
  }
  Rational den = (1 + alpha) * g.size() - 2;
  for (int c = 0; c < g.slots(); ++c) {
    PlantedPlaneTree t = g.slot(c).planted();
    for (Vertex v = 0; v < t.size(); ++v) {
      for (int j = 0; j < static_cast<int>(t.order[v].size()); ++j) {
        CoupledGrower next = g;
        next.attach(c, v, j);
        Rational q = p * (j == t.red[v] ? alpha : Rational(1)) / den;
        q.canonicalize();
        enumerate_coupled(next, alpha, n, q, out1, out2);
      }
    }
  }
}

void expect_law(const std::vector<std::pair<Tree, Rational>>& got,
                const std::vector<GrowthOutcome>& want) {
  std::vector<std::pair<Tree, Rational>> acc;
  for (const auto& [t, p] : got) {
    bool hit = false;
    for (auto& [u, q] : acc) {
      if (u == t) {
        q += p;
        hit = true;
      }
    }
    if (!hit) acc.emplace_back(t, p);
  }
  ASSERT_EQ(acc.size(), want.size());
  for (const auto& o : want) {
    bool hit = false;
    for (const auto& [u, q] : acc) {
      if (u == o.tree) {
        EXPECT_EQ(q, o.probability);
        hit = true;
      }
    }
    EXPECT_TRUE(hit);
  }
}

TEST(Coupled, MarginalsExact) {
  struct Pair {
    PlaneTree a, b;
  };
  PlaneTree p3 = plane(Tree::path(3));
  PlaneTree p3b = p3;
  p3b.red[1] = 1;
  std::vector<Pair> pairs{{p3, p3b}, {plane(Tree::star(4)), plane(Tree::path(4))}};
  for (const Rational& alpha : {Rational(1, 2), Rational(1), Rational(2)}) {
    for (const auto& pr : pairs) {
      const int k = pr.a.size();
      for (int n = k + 1; n <= 6; ++n) {
        std::vector<std::pair<Tree, Rational>> o1, o2;
        enumerate_coupled(CoupledGrower(pr.a, pr.b, AlphaParam(alpha)), alpha, n,
                          1, o1, o2);
        expect_law(o1, enumerate_growth(pr.a.to_tree(), alpha, n, false));
        expect_law(o2, enumerate_growth(pr.b.to_tree(), alpha, n, false));
      }
    }
  }
}

TEST(Coupled, MarginalChiSquare) {
  const int reps = 20000;
  PlaneTree s1 = plane(Tree::star(4)), s2 = plane(Tree::path(4));
  std::map<std::vector<int>, long> a, b;
  auto key = [](const Tree& t) {
    std::vector<int> d = t.degrees();
    return d;
  };
  for (int r = 0; r < reps; ++r) {
    Rng g1 = make_stream(31, r), g2 = make_stream(32, r);
    ++a[key(coupled_grow(s1, s2, AlphaParam(1), 9, g1).first.to_tree())];
    ++b[key(grow_abstract(s1.to_tree(), AlphaParam(1), 9, g2))];
  }
  EXPECT_GT(chi_square_homogeneity(a, b).p_value, 1e-3);
}

}  // namespace
}  // namespace seedrec
