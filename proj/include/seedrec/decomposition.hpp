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

#include <vector>

#include "seedrec/growth.hpp"
#include "seedrec/numeric.hpp"
#include "seedrec/rng.hpp"
#include "seedrec/tree.hpp"

namespace seedrec {

/// Seed corner (v, i): i is 1-based counting counter-clockwise from the red
/// corner of v, so i == 1 is the red corner.
struct SeedCorner {
  Vertex v = 0;
  int i = 1;
  bool red() const { return i == 1; }
  bool operator==(const SeedCorner&) const = default;
};

/// Coordinate layout shared by the urn and the forest: the k red corners by
/// vertex id, then the k-2 blue corners by (vertex id, i).
std::vector<SeedCorner> seed_corners(const PlaneTree& seed);

/// Polya urn over the 2k-2 seed corners. sizes[c] counts the vertices of the
/// planted subtree at corner c, root included, so sizes sum to n + k - 2.
struct UrnState {
  Rational alpha;
  int k = 0;
  int n = 0;
  std::vector<int> sizes;
  std::vector<char> red;

  /// x = (1+alpha) size - 1 on red coordinates, (1+alpha) size - alpha on blue.
  Rational weight(std::size_t c) const;
  std::vector<Rational> weights() const;
  Rational total() const;
  /// Throws PreconditionError when an invariant fails.
  void validate() const;
};

/// Fresh urn: k red coordinates then k-2 blue ones, all of size 1.
UrnState urn_initial(int k, const AlphaParam& alpha);

/// Runs the urn from its initial state up to step n_target. Throws
/// PreconditionError when k < 2 or n_target < k.
UrnState urn_sample(int k, const AlphaParam& alpha, int n_target, Rng& rng);

struct ForestEntry {
  SeedCorner corner;
  PlantedPlaneTree tree;  // origin[] holds host ids; origin[0] is corner.v
};

/// The planted subtrees hanging off every seed corner, in seed_corners order.
struct SubtreeForest {
  PlaneTree seed;
  std::vector<ForestEntry> entries;

  std::vector<int> sizes() const;
  int host_size() const;
};

/// Splits a tree grown from the seed on ids 0..k-1 into its seed and the
/// planted subtrees of its corners. Throws PreconditionError when t is not
/// consistent with growth from such a seed.
SubtreeForest decompose(const PlaneTree& t, int k);

/// Inverse of decompose; vertex ids come from each tree's origin[].
PlaneTree recompose(const SubtreeForest& forest);

/// Two planar alpha-PA trees of equal seed size driven by one urn and one
/// family of planted subtrees.
///
/// Slot c holds the shared planted tree for urn coordinate c. Each seed's
/// corners are matched to slots by sorting them on (canonical rank of the
/// vertex, i), red with red and blue with blue. The t-th new vertex gets id
/// k+t-1 in both outputs.
class CoupledGrower {
 public:
  CoupledGrower(const PlaneTree& seed1, const PlaneTree& seed2,
                const AlphaParam& alpha);

  int size() const { return n_; }
  int slots() const { return static_cast<int>(slots_.size()); }
  /// Exact weight of slot c: alpha #red + #blue corners of its planted tree.
  Rational slot_weight(int c) const;
  const CornerGrower& slot(int c) const { return slots_[c]; }

  void step(Rng& rng);
  /// Deterministic step: corner `corner` of local vertex `local` in slot c.
  void attach(int c, Vertex local, int corner);

  UrnState urn() const;
  /// Slot c as seen from seed `which` (0 or 1): corner label and origins.
  SubtreeForest forest(int which) const;
  PlaneTree first() const { return recompose(forest(0)); }
  PlaneTree second() const { return recompose(forest(1)); }

 private:
  Rational alpha_;
  double alpha_value_;
  int k_ = 0;
  int n_ = 0;
  PlaneTree seeds_[2];
  std::vector<SeedCorner> slot_corner_[2];
  std::vector<CornerGrower> slots_;
  std::vector<std::vector<Vertex>> global_ids_;  // per slot, local id -> id
};

struct CoupledOutcome {
  PlaneTree first;
  PlaneTree second;
  UrnState urn;
};

/// Throws PreconditionError for unequal seed sizes or k < 2.
CoupledOutcome coupled_grow(const PlaneTree& seed1, const PlaneTree& seed2,
                            const AlphaParam& alpha, int n_target, Rng& rng);

}  // namespace seedrec
