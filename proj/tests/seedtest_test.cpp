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

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "seedrec/canonical.hpp"
#include "seedrec/errors.hpp"
#include "seedrec/moments.hpp"
#include "seedrec/observables.hpp"
#include "seedrec/seedtest.hpp"

namespace seedrec {
namespace {

const Tree kStar5 = Tree::star(5);
const Tree kPath5 = Tree::path(5);
const Tree kPath3 = Tree::path(3);

// All injective edge-preserving maps tau -> s, grouped by image degrees.
std::map<DegreeDecoration, long> brute_profile(const Tree& tau, const Tree& s) {
  const int r = tau.size(), n = s.size();
  std::map<DegreeDecoration, long> out;
  if (r > n) return out;
  std::vector<Vertex> phi(r, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      for (int j = i + 1; j < r && ok; ++j) ok = phi[i] != phi[j];
    for (auto [u, v] : tau.edges()) ok = ok && s.adjacent(phi[u], phi[v]);
    if (ok) {
      DegreeDecoration d(r);
      for (int u = 0; u < r; ++u) d[u] = s.degree(phi[u]);
      ++out[d];
    }
    int i = 0;
    while (i < r && ++phi[i] == n) phi[i++] = 0;
    if (i == r) break;
  }
  return out;
}

// E[#vertices of degree d in T_k] by recursion over degree vectors.
std::map<int, Rational> expected_degree_histogram(const Tree& seed,
                                                  const Rational& alpha, int k) {
  std::map<int, Rational> out;
  std::function<void(std::vector<int>&, const Rational&)> go =
      [&](std::vector<int>& deg, const Rational& p) {
        const int m = static_cast<int>(deg.size());
        if (m == k) {
          for (int d : deg) out[d] += p;
          return;
        }
        const Rational total = (1 + alpha) * m - 2;
        for (int u = 0; u < m; ++u) {
          Rational q = p * (deg[u] - 1 + alpha) / total;
          ++deg[u];
          deg.push_back(1);
          go(deg, q);
          deg.pop_back();
          --deg[u];
        }
      };
  std::vector<int> deg = seed.degrees();
  go(deg, Rational(1));
  return out;
}

TEST(Blind, IdenticalSeeds) {
  for (const Tree& tau : enumerate_trees(3)) {
    EXPECT_TRUE(is_blind(tau, kStar5, kStar5).is_blind);
    EXPECT_TRUE(is_blind(tau, kPath5, kPath5).is_blind);
  }
}

TEST(Blind, StarVersusPath) {
  BlindReport r = is_blind(Tree(), kStar5, kPath5);
  EXPECT_FALSE(r.is_blind);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, DegreeDecoration{4});
  EXPECT_EQ(r.count1, 1);
  EXPECT_EQ(r.count2, 0);
}

TEST(Blind, LargePatternIsBlind) {
  EXPECT_TRUE(is_blind(Tree::path(6), kStar5, kPath5).is_blind);
}

TEST(Blind, SizeMismatch) {
  EXPECT_THROW(is_blind(Tree(), kStar5, kPath3), PreconditionError);
}

TEST(Blind, ProfileMatchesBruteForce) {
  for (int m = 1; m <= 3; ++m) {
    for (const Tree& tau : enumerate_trees(m)) {
      for (const Tree& s : enumerate_trees(6)) {
        auto fast = perfect_profile(tau, s);
        auto slow = brute_profile(tau, s);
        ASSERT_EQ(fast.size(), slow.size());
        for (const auto& [d, c] : slow) EXPECT_EQ(fast.at(d), c);
      }
    }
  }
}

TEST(MinimalNonblind, StarVersusPath) {
  EXPECT_EQ(minimal_nonblind(kStar5, kPath5).size(), 1);
}

TEST(MinimalNonblind, EqualDegreeSequences) {
  auto trees = enumerate_trees(7);
  bool found = false;
  for (std::size_t i = 0; i < trees.size() && !found; ++i) {
    for (std::size_t j = i + 1; j < trees.size() && !found; ++j) {
      auto a = trees[i].degrees(), b = trees[j].degrees();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) continue;
      found = true;
      EXPECT_TRUE(is_blind(Tree(), trees[i], trees[j]).is_blind);
      Tree tau = minimal_nonblind(trees[i], trees[j]);
      EXPECT_GE(tau.size(), 2);
      EXPECT_FALSE(is_blind(tau, trees[i], trees[j]).is_blind);
      // Everything smaller is blind.
      for (int m = 1; m < tau.size(); ++m)
        for (const Tree& s : enumerate_trees(m))
          EXPECT_TRUE(is_blind(s, trees[i], trees[j]).is_blind);
    }
  }
  EXPECT_TRUE(found);
}

TEST(MinimalNonblind, IsomorphicSeeds) {
  Tree relabeled = kPath5.relabeled(std::vector<Vertex>{4, 2, 0, 1, 3});
  EXPECT_THROW(minimal_nonblind(kPath5, relabeled), PreconditionError);
}

TEST(FInfinity, Examples) {
  EXPECT_EQ(f_infinity({3}, {2}, Rational(1)), 12);
  EXPECT_EQ(f_infinity({3, 1, 7}, {0, 0, 0}, Rational(1, 2)), 1);
  // [1 + 2 + 1/2 - 2]_2 = 3/2 * 1/2
  EXPECT_EQ(f_infinity({1}, {2}, Rational(1, 2)), Rational(3, 4));
}

TEST(FInfinity, IncreasingInDegree) {
  for (Rational a : {Rational(1, 3), Rational(1), Rational(5, 2)}) {
    for (int l = 1; l <= 4; ++l) {
      for (int d = 1; d < 8; ++d) {
        EXPECT_LT(f_infinity({d, 2}, {l, 1}, a), f_infinity({d + 1, 2}, {l, 1}, a));
      }
    }
  }
}

TEST(Plan, StarVersusPath) {
  DistinguishPlan p = distinguishing_decoration(Tree(), kStar5, kPath5, Rational(1));
  std::map<DegreeDecoration, Rational> expect{{{1}, 2}, {{2}, -3}, {{4}, 1}};
  EXPECT_EQ(p.delta, expect);
  EXPECT_EQ(p.d_max, DegreeDecoration{4});
  EXPECT_EQ(p.ell, std::vector<int>{3});
  EXPECT_EQ(p.closed_form_sum, 60);
}

TEST(Plan, BlindPatternRejected) {
  EXPECT_THROW(distinguishing_decoration(Tree(), kPath5, kPath5, Rational(1)),
               PreconditionError);
  EXPECT_THROW(distinguishing_decoration(Tree(), kPath5, kPath3, Rational(1)),
               PreconditionError);
}

// Every pair of size-6 seeds, three alphas: the returned plan satisfies the
// constraints, and its delta and sum agree with a brute-force recount.
TEST(Plan, PostconditionsAllPairs) {
  auto trees = enumerate_trees(6);
  for (Rational a : {Rational(1, 2), Rational(1), Rational(2)}) {
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (std::size_t j = 0; j < trees.size(); ++j) {
        if (i == j) continue;
        Tree tau = minimal_nonblind(trees[i], trees[j]);
        DistinguishPlan p = distinguishing_decoration(tau, trees[i], trees[j], a);
        int total = 0;
        for (int l : p.ell) {
          EXPECT_GE(l, 2);
          total += l;
        }
        EXPECT_GT(Rational(total), 1 + a);

        auto b1 = brute_profile(p.tau, trees[i]);
        auto b2 = brute_profile(p.tau, trees[j]);
        std::map<DegreeDecoration, Rational> delta;
        for (const auto& [d, c] : b1) delta[d] += c;
        for (const auto& [d, c] : b2) delta[d] -= c;
        std::erase_if(delta, [](const auto& kv) { return kv.second == 0; });
        EXPECT_EQ(delta, p.delta);

        Rational sum = 0;
        for (const auto& [d, v] : delta) {
          Rational f = 1;
          for (std::size_t u = 0; u < d.size(); ++u)
            for (int m = 0; m < p.ell[u]; ++m) f *= d[u] + p.ell[u] + a - 2 - m;
          sum += f * v;
        }
        EXPECT_EQ(sum, p.closed_form_sum);
        EXPECT_NE(sum, 0);
        EXPECT_EQ(sgn(sum), sgn(delta.rbegin()->second));
      }
    }
  }
}

TEST(PlanUnequal, StarVersusPath3) {
  const Rational a(1);
  DistinguishPlan p = distinguishing_decoration_unequal(kStar5, kPath3, a);
  auto hist = expected_degree_histogram(kPath3, a, 5);
  std::map<DegreeDecoration, Rational> delta;
  for (int d : kStar5.degrees()) delta[{d}] += 1;
  for (const auto& [d, q] : hist) delta[{d}] -= q;
  std::erase_if(delta, [](const auto& kv) { return kv.second == 0; });
  EXPECT_EQ(p.delta, delta);
  EXPECT_EQ(p.d_max, DegreeDecoration{4});
  EXPECT_NE(p.closed_form_sum, 0);
  EXPECT_GT(Rational(p.ell[0]), 1 + a);
}

TEST(PlanUnequal, AllSizeFiveTrees) {
  for (Rational a : {Rational(1, 2), Rational(1), Rational(3)}) {
    for (const Tree& s1 : enumerate_trees(5)) {
      DistinguishPlan p = distinguishing_decoration_unequal(s1, kPath3, a);
      auto hist = expected_degree_histogram(kPath3, a, 5);
      for (const auto& [d, v] : p.delta) {
        Rational expect = -(hist.count(d[0]) ? hist[d[0]] : Rational(0));
        for (int x : s1.degrees()) expect += x == d[0] ? 1 : 0;
        EXPECT_EQ(v, expect);
      }
      EXPECT_NE(p.closed_form_sum, 0);
      EXPECT_GE(p.ell[0], 2);
    }
  }
}

TEST(PlanUnequal, MaximalDegreeSpread) {
  const Rational a(1);
  const int k = 6;
  Rational p_low = 0, p_high = 0;
  for (const auto& o : enumerate_growth(kPath3, a, k, true)) {
    int md = o.tree.max_degree();
    if (md == kPath3.max_degree()) p_low += o.probability;
    if (md == kPath3.max_degree() + k - 3) p_high += o.probability;
  }
  EXPECT_GT(p_low, 0);
  EXPECT_GT(p_high, 0);
}

TEST(PlanUnequal, Preconditions) {
  EXPECT_THROW(distinguishing_decoration_unequal(kPath3, kStar5, Rational(1)),
               PreconditionError);
  EXPECT_THROW(distinguishing_decoration_unequal(kPath5, Tree::path(2), Rational(1)),
               PreconditionError);
}

TEST(TvBound, Examples) {
  EXPECT_EQ(tv_lower_bound(2, 2, 5, 7), 0);
  EXPECT_DOUBLE_EQ(tv_lower_bound(1, 0, 1, 0), 1.0 / 3);
  EXPECT_THROW(tv_lower_bound(3, 0, 1, 0), PreconditionError);
}

TEST(TvBound, Range) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    double m1 = 10 * uniform01(rng) - 5, m2 = 10 * uniform01(rng) - 5;
    double b = tv_lower_bound(m1, m2, m1 * m1 + uniform01(rng), m2 * m2);
    EXPECT_GE(b, 0);
    EXPECT_LT(b, 1);
  }
}

TEST(Mc, DeterministicObservables) {
  const AlphaParam a(1);
  auto e0 = mc_moments(DecoratedTree(Tree(), {0}), kPath3, a, 50, 200, 1);
  EXPECT_EQ(e0.mean, 50);
  EXPECT_EQ(e0.std_error, 0);
  auto e1 = mc_moments(DecoratedTree(Tree(), {1}), kPath3, a, 50, 200, 1);
  EXPECT_EQ(e1.mean, 48);
  EXPECT_EQ(e1.second_moment, 48 * 48);
}

TEST(Mc, SmallExactMean) {
  auto e = mc_moments(DecoratedTree(Tree(), {2}), kPath3, AlphaParam(1), 4,
                      100000, 11);
  EXPECT_NEAR(e.mean, 1.0, 4 * e.std_error);
}

TEST(Mc, AgreesWithExactExpectation) {
  const AlphaParam a(1, 2);
  DecoratedTree tau(Tree::path(2), {2, 1});
  auto e = mc_moments(tau, kStar5, a, 30, 20000, 5);
  double exact = to_double(exact_expectation(tau, kStar5, a.exact(), 30));
  EXPECT_NEAR(e.mean, exact, 4 * e.std_error);
}

TEST(Mc, IndependentOfThreadCount) {
  DecoratedTree tau(Tree(), {3});
  auto a = mc_curve(tau, kPath3, AlphaParam(1), {20, 40}, 500, 9, 1);
  auto b = mc_curve(tau, kPath3, AlphaParam(1), {20, 40}, 500, 9, 4);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a[i].mean, b[i].mean);
    EXPECT_EQ(a[i].second_moment, b[i].second_moment);
  }
}

TEST(Mc, CurveMatchesSinglePoints) {
  DecoratedTree tau(Tree(), {2});
  auto curve = mc_curve(tau, kPath3, AlphaParam(1), {10, 25}, 300, 4);
  auto last = mc_moments(tau, kPath3, AlphaParam(1), 25, 300, 4);
  EXPECT_EQ(curve[1].mean, last.mean);
}

TEST(Mc, RejectsBadLists) {
  DecoratedTree tau(Tree(), {2});
  EXPECT_THROW(mc_curve(tau, kPath3, AlphaParam(1), {10, 10}, 3, 1), PreconditionError);
  EXPECT_THROW(mc_curve(tau, kPath3, AlphaParam(1), {2}, 3, 1), PreconditionError);
}

TEST(TvReport, CiCoversPointEstimate) {
  auto a = mc_moments(DecoratedTree(Tree(), {3}), kStar5, AlphaParam(1), 60, 4000, 1);
  auto b = mc_moments(DecoratedTree(Tree(), {3}), kPath5, AlphaParam(1), 60, 4000, 2);
  auto r = tv_bound_report(a, b);
  EXPECT_GT(r.bound, 0);
  EXPECT_LT(r.ci_low, r.bound);
  EXPECT_GT(r.ci_high, r.bound);
}

TEST(Martingale, ZeroDecorationIsConstant) {
  Rng rng(2);
  Tree t = grow_abstract(kPath5, AlphaParam(1), 100, rng);
  for (double v : martingale_track(t, 5, {1, 2}, {0, 0}, AlphaParam(1)))
    EXPECT_DOUBLE_EQ(v, 1.0);
}

// One and two steps, exactly, against the labeled law of the next trees.
TEST(Martingale, ExactExpectationIsFlat) {
  for (Rational a : {Rational(1, 2), Rational(2)}) {
    const AlphaParam alpha(a);
    std::vector<Vertex> region{1, 2};
    std::vector<int> ell{2, 1};
    const double start =
        martingale_track(kPath5, 5, region, ell, alpha).front();
    for (int n : {6, 7}) {
      double mean = 0;
      for (const auto& o : enumerate_growth(kPath5, a, n, false))
        mean += to_double(o.probability) *
                martingale_track(o.tree, 5, region, ell, alpha).back();
      EXPECT_NEAR(mean, start, 1e-12 * start);
    }
  }
}

TEST(Martingale, MonteCarloFlat) {
  const AlphaParam a(1);
  const int reps = 20000, n = 300;
  std::vector<double> x(reps);
  for (int r = 0; r < reps; ++r) {
    Rng rng = make_stream(17, r);
    x[r] = martingale_track(grow_abstract(kPath3, a, n, rng), 3, {1}, {2}, a).back();
  }
  double m = 0, s = 0;
  for (double v : x) m += v / reps;
  for (double v : x) s += (v - m) * (v - m);
  const double se = std::sqrt(s / (reps - 1) / reps);
  // M_k = [2 + 1 + 2 - 2]_2 = 6
  EXPECT_NEAR(m, 6.0, 4 * se);
}

TEST(Martingale, DegreeScaling) {
  const AlphaParam a(1);
  const int reps = 2000;
  double at1 = 0, at2 = 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = make_stream(23, r);
    CornerGrower g(kPath3, a);
    while (g.size() < 2000) g.step(rng);
    at1 += g.degree(1) / std::sqrt(2000.0) / reps;
    while (g.size() < 8000) g.step(rng);
    at2 += g.degree(1) / std::sqrt(8000.0) / reps;
  }
  EXPECT_NEAR(at2 / at1, 1.0, 0.05);
}

TEST(Martingale, Errors) {
  const AlphaParam a(1);
  EXPECT_THROW(martingale_track(kPath5, 5, {0, 2}, {1, 1}, a), PreconditionError);
  EXPECT_THROW(martingale_track(kPath5, 3, {4}, {1}, a), PreconditionError);
  EXPECT_THROW(martingale_track(kPath5, 5, {1}, {1, 1}, a), PreconditionError);
}

TEST(EmpiricalTv, Basics) {
  std::vector<double> a{1, 2, 3, 4}, b{5, 6, 7, 8};
  EXPECT_DOUBLE_EQ(empirical_tv(a, a), 0);
  EXPECT_DOUBLE_EQ(empirical_tv(a, b), 1);
  std::vector<double> c{1, 1, 2, 2};
  EXPECT_DOUBLE_EQ(empirical_tv(a, c), 0.5);
}

TEST(EmpiricalTv, BinnedContinuous) {
  Rng rng(8);
  std::vector<double> a(5000), b(5000);
  for (auto& v : a) v = uniform01(rng);
  for (auto& v : b) v = uniform01(rng) + 0.5;
  EXPECT_NEAR(empirical_tv(a, b), 0.5, 0.08);
}

TEST(Distinguish, IsomorphicSeedsRejected) {
  EXPECT_THROW(distinguish(kPath5, kPath5, AlphaParam(1), {10}, 10, 1),
               PreconditionError);
}

TEST(Distinguish, StarVersusPathReport) {
  auto rep = distinguish(kStar5, kPath5, AlphaParam(1), {50, 100}, 3000, 7);
  EXPECT_EQ(rep.plan.ell, std::vector<int>{3});
  EXPECT_EQ(rep.plan.closed_form_sum, 60);
  for (const auto& p : rep.points) {
    EXPECT_GT(p.bound.bound, 0);
    EXPECT_GT(p.exact_difference, 0);
  }
  auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["plan"]["closed_form_sum"], "60/1");
  EXPECT_EQ(j["points"].size(), 2u);
  auto again = distinguish(kStar5, kPath5, AlphaParam(1), {50, 100}, 3000, 7, 3);
  EXPECT_EQ(rep.to_json(), again.to_json());
}

TEST(Distinguish, UnequalOrientation) {
  auto fwd = distinguish(kStar5, kPath3, AlphaParam(1), {40}, 200, 1);
  auto rev = distinguish(kPath3, kStar5, AlphaParam(1), {40}, 200, 1);
  EXPECT_FALSE(fwd.equal_sizes);
  EXPECT_EQ(fwd.plan.closed_form_sum, -rev.plan.closed_form_sum);
  EXPECT_EQ(fwd.points[0].exact_difference, -rev.points[0].exact_difference);
}

}  // namespace
}  // namespace seedrec
