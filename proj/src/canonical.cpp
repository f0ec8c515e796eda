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

#include "seedrec/canonical.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "seedrec/errors.hpp"

namespace seedrec {

namespace {

std::vector<Vertex> centroids(const Tree& t) {
  const int n = t.size();
  if (n == 1) return {0};
  // Iterative DFS from 0 to get subtree sizes.
  std::vector<Vertex> parent(n, -1), order;
  order.reserve(n);
  std::vector<Vertex> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (Vertex w : t.neighbors(u)) {
      if (parent[w] == -1) {
        parent[w] = u;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> sub(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) sub[parent[*it]] += sub[*it];
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    int biggest = n - sub[v];
    for (Vertex w : t.neighbors(v)) {
      if (parent[w] == v) biggest = std::max(biggest, sub[w]);
    }
    if (2 * biggest <= n) out.push_back(v);
  }
  return out;
}

struct Rooted {
  std::vector<std::string> code;            // code of each vertex's subtree
  std::vector<std::vector<Vertex>> kids;    // children sorted by code
  Vertex root = 0;
};

Rooted encode_rooted(const DecoratedTree& t, Vertex root) {
  const int n = t.size();
  Rooted r;
  r.root = root;
  r.code.assign(n, {});
  r.kids.assign(n, {});
  std::vector<Vertex> parent(n, -1), order;
  order.reserve(n);
  std::vector<Vertex> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (Vertex w : t.tree.neighbors(u)) {
      if (parent[w] == -1) {
        parent[w] = u;
        r.kids[u].push_back(w);
        stack.push_back(w);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex u = *it;
    auto& kids = r.kids[u];
    std::sort(kids.begin(), kids.end(), [&](Vertex a, Vertex b) {
      return r.code[a] < r.code[b];
    });
    std::string s = "(" + std::to_string(t.ell[u]) + ":";
    for (Vertex k : kids) s += r.code[k];
    s += ")";
    r.code[u] = std::move(s);
  }
  return r;
}

Rooted best_rooting(const DecoratedTree& t) {
  auto cs = centroids(t.tree);
  Rooted best = encode_rooted(t, cs[0]);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    Rooted other = encode_rooted(t, cs[i]);
    if (other.code[other.root] < best.code[best.root]) best = std::move(other);
  }
  return best;
}

}  // namespace

CanonicalCode canonical_code(const DecoratedTree& t) {
  Rooted r = best_rooting(t);
  return {std::move(r.code[r.root])};
}

CanonicalCode canonical_code(const Tree& t) {
  return canonical_code(DecoratedTree(t));
}

std::vector<Vertex> canonical_order(const DecoratedTree& t) {
  Rooted r = best_rooting(t);
  std::vector<Vertex> out;
  out.reserve(t.size());
  std::vector<Vertex> stack{r.root};
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    out.push_back(u);
    const auto& kids = r.kids[u];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<int> canonical_rank(const DecoratedTree& t) {
  auto order = canonical_order(t);
  std::vector<int> rank(t.size());
  for (int i = 0; i < t.size(); ++i) rank[order[i]] = i;
  return rank;
}

DecoratedTree canonical_form(const DecoratedTree& t) {
  auto rank = canonical_rank(t);
  std::vector<Edge> edges;
  for (auto [u, v] : t.tree.edges()) {
    int a = rank[u], b = rank[v];
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  // Child-ordered edge list: sort by the later endpoint.
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return x.second < y.second; });
  std::vector<int> ell(t.size());
  for (int v = 0; v < t.size(); ++v) ell[rank[v]] = t.ell[v];
  return DecoratedTree(Tree(t.size(), std::move(edges)), std::move(ell));
}

Tree canonical_form(const Tree& t) {
  return canonical_form(DecoratedTree(t)).tree;
}

std::vector<Tree> enumerate_trees(int size, int cap) {
  if (size < 1) throw PreconditionError("tree size must be at least 1");
  if (size > cap) {
    throw CapExceeded("enumerate_trees: size " + std::to_string(size) +
                      " exceeds cap " + std::to_string(cap));
  }
  std::map<CanonicalCode, Tree> level{{canonical_code(Tree()), Tree()}};
  for (int s = 2; s <= size; ++s) {
    std::map<CanonicalCode, Tree> next;
    for (const auto& [code, t] : level) {
      for (Vertex u = 0; u < t.size(); ++u) {
        Tree grown = t.with_leaf(u);
        auto c = canonical_code(grown);
        if (!next.contains(c)) next.emplace(std::move(c), canonical_form(grown));
      }
    }
    level = std::move(next);
  }
  std::vector<Tree> out;
  out.reserve(level.size());
  for (auto& [code, t] : level) out.push_back(std::move(t));
  return out;
}

}  // namespace seedrec
