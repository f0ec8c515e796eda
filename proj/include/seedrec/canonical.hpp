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

#include <compare>
#include <string>
#include <vector>

#include "seedrec/tree.hpp"

namespace seedrec {

/// Isomorphism-invariant encoding of a (decorated) tree.
///
/// The code is the AHU parenthesis string of the tree rooted at a centroid,
/// each vertex written as "(" ell ":" children ")" with children sorted by
/// their own codes; with two centroids the smaller string wins. Codes are
/// totally ordered by plain byte-wise comparison, which is the tie-break
/// order used throughout the library.
struct CanonicalCode {
  std::string bytes;

  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const DecoratedTree& t);
CanonicalCode canonical_code(const Tree& t);

/// Vertices listed in canonical rank order (preorder of the canonical
/// encoding). Equal-code siblings are interchangeable by an automorphism.
std::vector<Vertex> canonical_order(const DecoratedTree& t);

/// Isomorphic copy whose vertex i is the vertex of canonical rank i.
DecoratedTree canonical_form(const DecoratedTree& t);
Tree canonical_form(const Tree& t);

/// rank[v] = canonical rank of vertex v.
std::vector<int> canonical_rank(const DecoratedTree& t);

inline constexpr int kDefaultEnumerationCap = 10;

/// One canonical-form representative per unlabeled tree of the given size,
/// sorted by canonical code. Throws CapExceeded when size > cap.
std::vector<Tree> enumerate_trees(int size, int cap = kDefaultEnumerationCap);

}  // namespace seedrec
