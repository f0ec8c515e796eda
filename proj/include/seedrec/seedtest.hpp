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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seedrec/growth.hpp"
#include "seedrec/numeric.hpp"
#include "seedrec/tree.hpp"

namespace seedrec {

struct BlindReport {
  Tree tau;
  bool is_blind = true;
  /// Lexicographically largest d whose perfect counts differ.
  std::optional<DegreeDecoration> witness;
  BigInt count1 = 0, count2 = 0;  // D_{tau,witness} on each seed
};

/// Throws PreconditionError if |s1| != |s2|.
BlindReport is_blind(const Tree& tau, const Tree& s1, const Tree& s2);

inline constexpr int kMaxBlindSearchSize = 16;

/// Smallest non-blind pattern (ties by canonical code), in canonical form.
/// Throws PreconditionError for unequal sizes or isomorphic seeds.
Tree minimal_nonblind(const Tree& s1, const Tree& s2);

/// prod_u [d(u) + ell(u) + alpha - 2]_{ell(u)}.
Rational f_infinity(const DegreeDecoration& d, const std::vector<int>& ell,
                    const Rational& alpha);

struct DistinguishPlan {
  Tree tau;              // canonical form; vertex i is u_{i+1}
  std::vector<int> ell;
  std::map<DegreeDecoration, Rational> delta;  // nonzero D(s1) - D(s2) only
  DegreeDecoration d_max;
  Rational closed_form_sum;  // sum_d f_infinity(d, ell) * delta(d)

  DecoratedTree decorated() const { return DecoratedTree(tau, ell); }
};

inline constexpr int kDefaultEllCap = 64;

/// Equal-size seeds. Throws PreconditionError when tau is blind or sizes
/// differ, CapExceeded when some ell(u) would pass `cap`.
DistinguishPlan distinguishing_decoration(const Tree& tau, const Tree& s1,
                                          const Tree& s2, const Rational& alpha,
                                          int cap = kDefaultEllCap);

/// 3 <= |s2| < |s1|; tau is the single vertex and the law of T_{|s1|} from
/// s2 is enumerated exactly (CapExceeded past kDefaultGrowthCap sequences).
DistinguishPlan distinguishing_decoration_unequal(const Tree& s1, const Tree& s2,
                                                  const Rational& alpha,
                                                  int cap = kDefaultEllCap);

/// Delta^2 / (Delta^2 + 2 (m2_1 + m2_2)); 0 when the means agree.
double tv_lower_bound(double mean1, double mean2, double m2_1, double m2_2);

struct McEstimate {
  int n = 0;
  std::uint64_t replicates = 0;
  double mean = 0;
  double second_moment = 0;
  double std_error = 0;   // of the mean
  // Sampling covariance of (mean, second_moment).
  double var_mean = 0;
  double var_m2 = 0;
  double cov_mean_m2 = 0;
};

struct TvBoundReport {
  double bound = 0;
  double ci_low = 0, ci_high = 0;  // 95%, delta method
  double mean1 = 0, mean2 = 0, m2_1 = 0, m2_2 = 0;
};

TvBoundReport tv_bound_report(const McEstimate& a, const McEstimate& b);

/// Moments of F_tau(T_n^seed) over `replicates` independent trees. Replicate
/// r draws from make_stream(master, r); the result does not depend on
/// `threads`.
McEstimate mc_moments(const DecoratedTree& tau, const Tree& seed,
                      const AlphaParam& alpha, int n, std::uint64_t replicates,
                      std::uint64_t master, int threads = 1);

/// Same along one trajectory per replicate, observed at each n of `ns`
/// (strictly increasing). With `samples`, the raw values per n are kept.
std::vector<McEstimate> mc_curve(const DecoratedTree& tau, const Tree& seed,
                                 const AlphaParam& alpha,
                                 const std::vector<int>& ns,
                                 std::uint64_t replicates, std::uint64_t master,
                                 int threads = 1,
                                 std::vector<std::vector<double>>* samples = nullptr);

/// M_n W_n for n = k .. |grown|, replaying `grown` in id order (vertex v > k-1
/// hangs off its smallest neighbour). `region` lists seed vertices forming a
/// subtree, `ell` their decorations. Throws PreconditionError otherwise.
std::vector<double> martingale_track(const Tree& grown, int k,
                                     const std::vector<Vertex>& region,
                                     const std::vector<int>& ell,
                                     const AlphaParam& alpha);

inline constexpr std::size_t kExactTvSupport = 2048;

/// Empirical total variation between two samples: exact value matching when
/// both are integer valued with a small joint support, else Freedman-Diaconis
/// bins on the pooled sample.
double empirical_tv(const std::vector<double>& a, const std::vector<double>& b);

struct DistinguishPoint {
  int n = 0;
  McEstimate first, second;
  TvBoundReport bound;
  double empirical_tv = 0;
  Rational exact_difference;  // E^{s1} - E^{s2}
  double normalized_difference = 0;  // times n^{-|ell|/(1+alpha)}
};

struct DistinguishReport {
  std::string alpha;
  Tree seed1, seed2;
  bool equal_sizes = true;
  DistinguishPlan plan;  // oriented as s1 minus s2
  std::uint64_t replicates = 0;
  std::uint64_t master = 0;
  std::vector<DistinguishPoint> points;

  /// Versioned JSON ("schema": 1).
  std::string to_json() const;
};

/// Full pipeline. Throws PreconditionError for isomorphic seeds or seeds
/// smaller than 3.
DistinguishReport distinguish(const Tree& s1, const Tree& s2,
                              const AlphaParam& alpha, const std::vector<int>& ns,
                              std::uint64_t replicates, std::uint64_t master,
                              int threads = 1);

}  // namespace seedrec
