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

#include "seedrec/tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "seedrec/errors.hpp"

namespace seedrec {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

Tree::Tree() : n_(1) { build_csr(); }

Tree::Tree(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  require(n >= 1, "tree needs at least one vertex");
  require(static_cast<int>(edges_.size()) == n - 1,
          "tree on " + std::to_string(n) + " vertices needs " +
              std::to_string(n - 1) + " edges");
  for (const auto& [u, v] : edges_) {
    require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
    require(u != v, "self-loop");
  }
  build_csr();
  // n-1 edges plus connectivity implies acyclic and no multi-edges.
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  require(reached == n, "edges do not form a connected tree");
}

Tree Tree::from_parents(std::span<const Vertex> parent) {
  const int n = static_cast<int>(parent.size());
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (int v = 1; v < n; ++v) edges.emplace_back(parent[v], v);
  return Tree(n, std::move(edges));
}

Tree Tree::path(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Tree(n, std::move(edges));
}

Tree Tree::star(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Tree(n, std::move(edges));
}

void Tree::build_csr() {
  offsets_.assign(n_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (int i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  nbrs_.assign(offsets_[n_], 0);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    nbrs_[fill[u]++] = v;
    nbrs_[fill[v]++] = u;
  }
}

bool Tree::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

int Tree::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<int> Tree::degrees() const {
  std::vector<int> out(n_);
  for (int v = 0; v < n_; ++v) out[v] = degree(v);
  return out;
}

Tree Tree::relabeled(std::span<const Vertex> new_id) const {
  require(static_cast<int>(new_id.size()) == n_, "relabeling size mismatch");
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& [u, v] : edges_) edges.emplace_back(new_id[u], new_id[v]);
  return Tree(n_, std::move(edges));
}

Tree Tree::induced(std::span<const Vertex> vertices) const {
  std::vector<int> local(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : edges_) {
    if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  }
  return Tree(static_cast<int>(vertices.size()), std::move(edges));
}

Tree Tree::with_leaf(Vertex u) const {
  require(u >= 0 && u < n_, "attachment vertex out of range");
  auto edges = edges_;
  edges.emplace_back(u, n_);
  return Tree(n_ + 1, std::move(edges));
}

Tree Tree::without_leaf(Vertex v) const {
  require(n_ >= 2 && degree(v) == 1, "vertex is not a leaf");
  std::vector<Edge> edges;
  auto shift = [v](Vertex x) { return x > v ? x - 1 : x; };
  for (const auto& [a, b] : edges_) {
    if (a == v || b == v) continue;
    edges.emplace_back(shift(a), shift(b));
  }
  return Tree(n_ - 1, std::move(edges));
}

bool Tree::operator==(const Tree& other) const {
  if (n_ != other.n_) return false;
  auto norm = [](std::vector<Edge> e) {
    for (auto& [a, b] : e) {
      if (a > b) std::swap(a, b);
    }
    std::sort(e.begin(), e.end());
    return e;
  };
  return norm(edges_) == norm(other.edges_);
}

DecoratedTree::DecoratedTree(Tree t, std::vector<int> decoration)
    : tree(std::move(t)), ell(std::move(decoration)) {
  require(static_cast<int>(ell.size()) == tree.size(),
          "decoration length differs from tree size");
  for (int x : ell) require(x >= 0, "decorations must be non-negative");
}

DecoratedTree::DecoratedTree(Tree t)
    : tree(std::move(t)), ell(tree.size(), 0) {}

int DecoratedTree::total_decoration() const {
  return std::accumulate(ell.begin(), ell.end(), 0);
}

std::vector<Vertex> DecoratedTree::loose_leaves() const {
  std::vector<Vertex> out;
  if (tree.size() < 2) return out;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (is_loose_leaf(v)) out.push_back(v);
  }
  return out;
}

bool DecoratedTree::is_base() const {
  if (tree.size() == 1) return ell[0] <= 1;
  return tree.size() == 2 && ell[0] == 0 && ell[1] == 0;
}

int DecoratedTree::weight() const {
  if (is_base()) return 1;
  return total_decoration() + static_cast<int>(loose_leaves().size());
}

int PlaneTree::red_corner_count() const {
  int c = 0;
  for (int r : red) c += r >= 0 ? 1 : 0;
  return c;
}

int PlaneTree::blue_corner_count() const {
  int c = 0;
  for (Vertex v = 0; v < size(); ++v) c += degree(v);
  return c - red_corner_count();
}

void PlaneTree::validate() const {
  const int n = size();
  require(n >= 1, "plane tree needs a vertex");
  require(static_cast<int>(red.size()) == n, "one red entry per vertex");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    const auto& ord = order[v];
    for (Vertex w : ord) {
      require(w >= 0 && w < n && w != v, "bad neighbour in cyclic order");
      require(std::count(ord.begin(), ord.end(), w) == 1,
              "repeated neighbour in cyclic order");
      const auto& back = order[w];
      require(std::find(back.begin(), back.end(), v) != back.end(),
              "cyclic orders are not symmetric");
      if (v < w) edges.emplace_back(v, w);
    }
    if (n == 1) {
      require(red[v] == 0 || red[v] == -1, "bad red corner on lone vertex");
    } else {
      require(red[v] >= 0 && red[v] < static_cast<int>(ord.size()),
              "red corner index out of range");
    }
  }
  Tree check(n, std::move(edges));
  (void)check;
}

Tree PlaneTree::to_tree() const {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < size(); ++v) {
    for (Vertex w : order[v]) {
      if (v < w) edges.emplace_back(v, w);
    }
  }
  std::sort(edges.begin(), edges.end());
  return Tree(size(), std::move(edges));
}

PlaneTree PlaneTree::from_tree(const Tree& t) {
  PlaneTree p;
  p.order.resize(t.size());
  p.red.assign(t.size(), 0);
  for (Vertex v = 0; v < t.size(); ++v) {
    auto nb = t.neighbors(v);
    p.order[v].assign(nb.begin(), nb.end());
  }
  return p;
}

PlantedPlaneTree PlantedPlaneTree::single(Flavor flavor) {
  PlantedPlaneTree p;
  p.order = {{kHalfEdge}};
  p.red = {flavor == Flavor::kRed ? 0 : -1};
  p.flavor = flavor;
  return p;
}

int PlantedPlaneTree::corner_count() const {
  int c = 0;
  for (const auto& ord : order) c += static_cast<int>(ord.size());
  return c;
}

int PlantedPlaneTree::red_corner_count() const {
  int c = 0;
  for (int r : red) c += r >= 0 ? 1 : 0;
  return c;
}

int PlantedPlaneTree::blue_corner_count() const {
  return corner_count() - red_corner_count();
}

int PlantedPlaneTree::half_edge_slot() const {
  const auto& ord = order.at(0);
  return static_cast<int>(std::find(ord.begin(), ord.end(), kHalfEdge) -
                          ord.begin());
}

void PlantedPlaneTree::validate() const {
  const int n = size();
  require(n >= 1, "planted tree needs a root");
  require(static_cast<int>(red.size()) == n, "one red entry per vertex");
  require(std::count(order[0].begin(), order[0].end(), kHalfEdge) == 1,
          "root must carry exactly one half-edge");
  if (flavor == Flavor::kRed) {
    require(red[0] == half_edge_slot(),
            "red planted root: red corner must start at the half-edge");
  } else {
    require(red[0] == -1, "blue planted root has no red corner");
  }
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : order[v]) {
      if (w == kHalfEdge) {
        require(v == 0, "half-edge away from the root");
        continue;
      }
      require(w >= 0 && w < n && w != v, "bad neighbour in cyclic order");
      if (v < w) edges.emplace_back(v, w);
    }
    if (v > 0) {
      require(red[v] >= 0 && red[v] < static_cast<int>(order[v].size()),
              "non-root vertex needs one red corner");
    }
  }
  Tree check(n, std::move(edges));
  (void)check;
}

}  // namespace seedrec
