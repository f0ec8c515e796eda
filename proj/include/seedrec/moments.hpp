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

#include <map>
#include <vector>

#include "seedrec/canonical.hpp"
#include "seedrec/numeric.hpp"
#include "seedrec/tree.hpp"

namespace seedrec {

/// |ell| plus loose leaves; 1 for the three base trees.
int weight(const DecoratedTree& tau);

/// Strict order: smaller weight with no larger tree; or equal weight and a
/// smaller tree; or equal weight and size with smaller |ell|.
bool precedes(const DecoratedTree& sigma, const DecoratedTree& tau);

struct Reduction {
  DecoratedTree child;  // canonical form
  Rational coefficient;
};

/// Children sigma and coefficients c(sigma, tau) of the one-step recurrence
///   E[F_tau(T_{n+1}) | T_n] = (1 + w/((1+a)n-2)) F_tau(T_n)
///                             + 1/((1+a)n-2) sum_sigma c F_sigma(T_n),
/// isomorphic children merged, sorted by canonical code. Throws
/// PreconditionError for a base tree.
std::vector<Reduction> reduction_children(const DecoratedTree& tau,
                                          const Rational& alpha);

/// The closure of tau under reduction_children, ready for evaluation.
class RecurrenceSystem {
 public:
  RecurrenceSystem(const DecoratedTree& tau, const Rational& alpha);

  struct Node {
    DecoratedTree tree;
    int weight = 1;
    bool base = false;
    std::vector<std::pair<int, Rational>> children;  // (node index, c)
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }
  const Rational& alpha() const { return alpha_; }
  int index_of(const DecoratedTree& t) const;

  /// E[F_node(T_n^S)] for every node and every n in `ns` (any order, each
  /// >= |seed|). result[i][j] is node j at ns[i].
  std::vector<std::vector<Rational>> expectations(
      const Tree& seed, const std::vector<int>& ns) const;

 private:
  Rational alpha_;
  std::vector<Node> nodes_;
  std::map<CanonicalCode, int> index_;
  int root_ = 0;
};

/// E[F_tau(T_n^S)], exact. Throws PreconditionError unless n >= |S| >= 2
/// and alpha > 0.
Rational exact_expectation(const DecoratedTree& tau, const Tree& seed,
                           const Rational& alpha, int n);

/// Same for several n in one sweep; output follows the order of `ns`.
std::vector<Rational> exact_expectation(const DecoratedTree& tau,
                                        const Tree& seed, const Rational& alpha,
                                        const std::vector<int>& ns);

/// prod_{l=k}^{n-1} (1 + w/((1+a)l - 2))^{-1}; 1 when n == k.
Rational omega_normalizer(const Rational& w, int k, int n, const Rational& alpha);
double omega_normalizer_approx(double w, int k, int n, double alpha);

struct ExponentReport {
  Rational power;      // max{1, w/(1+a)}
  int log_power = 0;   // gamma
  bool critical = false;
  int weight = 1;
};

ExponentReport gamma_exponent(const DecoratedTree& tau, const Rational& alpha);

}  // namespace seedrec
