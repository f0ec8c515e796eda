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
#include <optional>
#include <vector>

#include "seedrec/numeric.hpp"
#include "seedrec/tree.hpp"

namespace seedrec {

// Embeddings are injective graph homomorphisms tau -> T, each counted on
// its own (automorphic images count separately).

using EmbeddingCount = BigInt;

/// F_tau(T) = sum over embeddings phi of prod_u [deg_T(phi(u)) - 1]_{ell(u)}.
EmbeddingCount count_F(const DecoratedTree& tau, const Tree& t);

/// Same observable accumulated in floating point (for MC on huge values).
double count_F_approx(const DecoratedTree& tau, const Tree& t);

struct SplitCount {
  EmbeddingCount disjoint;  // pairs (phi1 of tau, phi2 of sigma) with disjoint images
  EmbeddingCount overlap;   // the rest
};

SplitCount count_F_split(const DecoratedTree& tau, const DecoratedTree& sigma,
                         const Tree& t);

struct MergerTerm {
  DecoratedTree tree;  // canonical form
  BigInt coefficient;
};

inline constexpr int kDefaultMergerCap = 7;

/// Terms (sigma, C) with sum_sigma C F_sigma(T) = overlap of count_F_split
/// (tau, tau, T) for every host T, sorted by canonical code. Throws
/// CapExceeded when |tau| > cap.
std::vector<MergerTerm> merger_expansion(const DecoratedTree& tau,
                                         int cap = kDefaultMergerCap);

/// Restriction of perfect embeddings to phi(tau) cap {0..k-1} = phi(sigma).
struct Anchor {
  std::vector<Vertex> sigma;  // vertices of tau; must induce a subtree (or be empty)
  int seed_size = 0;
};

/// D_{tau,d}(T): embeddings with deg_T(phi(u)) = d(u) for every u. Throws
/// PreconditionError if the anchor is not a subtree of tau.
EmbeddingCount count_perfect(const Tree& tau, const DegreeDecoration& d,
                             const Tree& t,
                             const std::optional<Anchor>& anchor = std::nullopt);

/// All nonzero D_{tau,d}(T) at once, keyed by d.
std::map<DegreeDecoration, EmbeddingCount> perfect_profile(
    const Tree& tau, const Tree& t,
    const std::optional<Anchor>& anchor = std::nullopt);

enum class Region { kIntersectsSeed, kInsideSeed, kOutsideSeed };

/// F_tau restricted by where the image meets the seed {0..k-1}. Throws
/// PreconditionError unless 1 <= k <= |T|.
EmbeddingCount count_F_region(const DecoratedTree& tau, const Tree& t, int k,
                              Region region);

}  // namespace seedrec
