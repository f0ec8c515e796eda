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
#include <span>
#include <utility>
#include <vector>

namespace seedrec {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Unrooted, unlabeled-up-to-ids tree on vertices 0..n-1.
///
/// Adjacency is stored in CSR form; neighbor order follows the edge list the
/// tree was built from, and edges() returns that list unchanged so that the
/// text format round-trips.
class Tree {
 public:
  /// The single-vertex tree.
  Tree();

  /// Validates connectivity, edge count n-1, and absence of loops and
  /// duplicate edges. Throws PreconditionError otherwise.
  Tree(int n, std::vector<Edge> edges);

  /// parent[0] is ignored; every other vertex v is attached to parent[v].
  static Tree from_parents(std::span<const Vertex> parent);

  static Tree path(int n);
  static Tree star(int n);

  int size() const { return n_; }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {nbrs_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
  }
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(Vertex u, Vertex v) const;
  int max_degree() const;
  std::vector<int> degrees() const;

  /// Tree with vertex v renamed to new_id[v].
  Tree relabeled(std::span<const Vertex> new_id) const;

  /// Induced subtree on `vertices` (must be connected); vertex i of the
  /// result is vertices[i].
  Tree induced(std::span<const Vertex> vertices) const;

  /// Copy with a new vertex n attached to u.
  Tree with_leaf(Vertex u) const;

  /// Copy with leaf v removed; ids above v shift down by one.
  Tree without_leaf(Vertex v) const;

  bool operator==(const Tree& other) const;

 private:
  void build_csr();

  int n_ = 1;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<Vertex> nbrs_;
};

/// A pattern tree with a non-negative integer decoration per vertex.
struct DecoratedTree {
  Tree tree;
  std::vector<int> ell;

  DecoratedTree() : ell(1, 0) {}
  DecoratedTree(Tree t, std::vector<int> decoration);
  /// Undecorated (all zero) pattern.
  explicit DecoratedTree(Tree t);

  int size() const { return tree.size(); }
  int total_decoration() const;
  bool is_loose_leaf(Vertex v) const {
    return ell[v] == 0 && tree.degree(v) == 1;
  }
  std::vector<Vertex> loose_leaves() const;
  /// True for the single vertex with decoration 0 or 1, and the bare edge.
  bool is_base() const;
  /// Sum of decorations plus number of loose leaves; 1 for base trees.
  int weight() const;

  bool operator==(const DecoratedTree& other) const = default;
};

/// Target host degree per pattern vertex; all entries >= 1.
using DegreeDecoration = std::vector<int>;

/// Plane tree with a coloured corner structure.
///
/// order[v] is the cyclic (counter-clockwise) list of neighbours of v.
/// Corner j of v is the sector between order[v][j] and order[v][j+1 mod deg].
/// red[v] is the index of the unique red corner of v.
struct PlaneTree {
  std::vector<std::vector<Vertex>> order;
  std::vector<int> red;

  int size() const { return static_cast<int>(order.size()); }
  int degree(Vertex v) const { return static_cast<int>(order[v].size()); }
  int red_corner_count() const;
  int blue_corner_count() const;
  /// Throws PreconditionError if adjacency is not a tree or a vertex lacks
  /// exactly one valid red corner.
  void validate() const;
  /// Forget the embedding; edges listed as (min, max) sorted.
  Tree to_tree() const;
  /// Default embedding: neighbours in adjacency order, red corner 0.
  static PlaneTree from_tree(const Tree& t);

  bool operator==(const PlaneTree& other) const = default;
};

enum class Flavor { kRed, kBlue };

/// Planted plane tree. Vertex 0 is the root; the half-edge appears in the
/// root's cyclic order as kHalfEdge. A red planted tree has its root's red
/// corner starting at the half-edge; a blue one has no red root corner
/// (red[0] == -1).
struct PlantedPlaneTree {
  static constexpr Vertex kHalfEdge = -1;

  std::vector<std::vector<Vertex>> order;
  std::vector<int> red;
  Flavor flavor = Flavor::kRed;
  /// Optional host vertex id per local vertex (filled by decompose and the
  /// coupled grower so that grafting reproduces host ids).
  std::vector<Vertex> origin;

  static PlantedPlaneTree single(Flavor flavor);

  int size() const { return static_cast<int>(order.size()); }
  int corner_count() const;
  int red_corner_count() const;
  int blue_corner_count() const;
  int half_edge_slot() const;
  void validate() const;

  bool operator==(const PlantedPlaneTree& other) const = default;
};

}  // namespace seedrec
