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
#include <string>
#include <string_view>
#include <vector>

#include "seedrec/numeric.hpp"
#include "seedrec/rng.hpp"
#include "seedrec/tree.hpp"

namespace seedrec {

/// Attachment parameter alpha > 0: exact rational plus a double shadow used
/// only by samplers.
class AlphaParam {
 public:
  explicit AlphaParam(Rational value);
  explicit AlphaParam(long num, long den = 1);
  /// "p/q" or "p"; throws ConfigError.
  static AlphaParam parse(std::string_view text);

  const Rational& exact() const { return exact_; }
  double value() const { return value_; }
  std::string str() const { return to_string(exact_); }

 private:
  Rational exact_;
  double value_;
};

/// One growth step as chosen by a corner-level sampler.
struct GrowthStep {
  int step = 0;        // 1-based index of the added vertex after the seed
  Vertex vertex = 0;   // attachment vertex
  int corner = 0;      // corner index at that vertex before insertion
  bool red = false;

  /// "step t: vertex u corner c color r|b"
  std::string str() const;
};

/// Corner-level sampler shared by the abstract, planar and planted growers.
///
/// Red corners are kept in one slot array (one per vertex that owns a red
/// corner) and blue corners in another (one entry per blue corner, holding
/// its owning vertex). A step first picks the red class with probability
/// alpha*#red / (alpha*#red + #blue) and then a uniform slot, which gives
/// every red corner weight alpha and every blue corner weight 1.
///
/// With track_order=false only degrees and parents are maintained; this is
/// the abstract alpha-PA sampler.
class CornerGrower {
 public:
  CornerGrower(const PlaneTree& seed, const AlphaParam& alpha,
               bool track_order);
  CornerGrower(const PlantedPlaneTree& seed, const AlphaParam& alpha);
  /// Abstract mode from an unembedded seed (needs |S| >= 2).
  CornerGrower(const Tree& seed, const AlphaParam& alpha);

  void reserve(int n);
  /// Adds one vertex and returns the choice that was made.
  GrowthStep step(Rng& rng);
  /// Deterministic step through corner `corner` of `vertex` (planar mode).
  void attach(Vertex vertex, int corner);

  int size() const { return static_cast<int>(degree_.size()); }
  int seed_size() const { return seed_size_; }
  int degree(Vertex v) const { return degree_[v]; }
  const std::vector<int>& degrees() const { return degree_; }
  /// Parent of every non-seed vertex (entries for seed ids are -1).
  const std::vector<Vertex>& parents() const { return parent_; }
  /// Sum of corner weights: alpha*#red + #blue.
  double total_weight() const;
  std::size_t red_slots() const { return red_slots_.size(); }
  std::size_t blue_slots() const { return blue_owner_.size(); }

  Tree tree() const;
  PlaneTree plane() const;
  PlantedPlaneTree planted() const;

 private:
  void add_vertex(Vertex parent, int corner, bool red_corner);

  double alpha_;
  bool track_order_;
  bool planted_ = false;
  Flavor flavor_ = Flavor::kRed;
  int seed_size_ = 0;
  std::vector<Edge> seed_edges_;
  std::vector<int> degree_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> red_slots_;
  std::vector<Vertex> blue_owner_;
  std::vector<std::vector<Vertex>> order_;
  std::vector<int> red_;
};

/// Abstract alpha-PA from `seed` (ids 0..k-1 preserved; the t-th new vertex
/// gets id k+t-1). Throws PreconditionError if |seed| < 2 or n_target < |seed|.
Tree grow_abstract(const Tree& seed, const AlphaParam& alpha, int n_target,
                   Rng& rng);

/// Independent sampler drawing the attachment vertex directly with weight
/// deg-1+alpha through a Fenwick tree. Same law as grow_abstract.
Tree grow_abstract_weighted(const Tree& seed, const AlphaParam& alpha,
                            int n_target, Rng& rng);

/// Planar alpha-PA with coloured corners. When `trajectory` is given, each
/// step's corner choice is appended to it.
PlaneTree grow_planar(const PlaneTree& seed, const AlphaParam& alpha,
                      int n_target, Rng& rng,
                      std::vector<GrowthStep>* trajectory = nullptr);

/// Planted planar growth from the single vertex with a half-edge.
PlantedPlaneTree grow_planted(Flavor flavor, const AlphaParam& alpha,
                              int n_target, Rng& rng);

struct GrowthOutcome {
  Tree tree;
  Rational probability;
};

struct PlaneGrowthOutcome {
  PlaneTree tree;
  Rational probability;
};

inline constexpr std::uint64_t kDefaultGrowthCap = 1'000'000;

/// Exact law of T_n from `seed` by exhaustive enumeration of attachment
/// sequences. With canonicalize, isomorphic outcomes are merged and the
/// result is sorted by canonical code. Throws CapExceeded when the number of
/// sequences exceeds `cap`.
std::vector<GrowthOutcome> enumerate_growth(const Tree& seed,
                                            const Rational& alpha,
                                            int n_target, bool canonicalize,
                                            std::uint64_t cap = kDefaultGrowthCap);

/// Exact law of the planar model by enumeration of corner sequences.
std::vector<PlaneGrowthOutcome> enumerate_planar_growth(
    const PlaneTree& seed, const Rational& alpha, int n_target,
    std::uint64_t cap = kDefaultGrowthCap);

}  // namespace seedrec
