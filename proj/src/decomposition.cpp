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

#include "seedrec/decomposition.hpp"

#include <algorithm>
#include <string>

#include "seedrec/canonical.hpp"
#include "seedrec/errors.hpp"

namespace seedrec {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

// Plane-corner index of seed corner (v, i).
int plane_corner(const PlaneTree& seed, SeedCorner c) {
  return (seed.red[c.v] + c.i - 1) % seed.degree(c.v);
}

}  // namespace

std::vector<SeedCorner> seed_corners(const PlaneTree& seed) {
  std::vector<SeedCorner> out;
  for (Vertex v = 0; v < seed.size(); ++v) out.push_back({v, 1});
  for (Vertex v = 0; v < seed.size(); ++v) {
    for (int i = 2; i <= seed.degree(v); ++i) out.push_back({v, i});
  }
  return out;
}

Rational UrnState::weight(std::size_t c) const {
  Rational x = (1 + alpha) * sizes[c] - (red[c] ? Rational(1) : alpha);
  x.canonicalize();
  return x;
}

std::vector<Rational> UrnState::weights() const {
  std::vector<Rational> out;
  for (std::size_t c = 0; c < sizes.size(); ++c) out.push_back(weight(c));
  return out;
}

Rational UrnState::total() const {
  Rational t = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) t += weight(c);
  return t;
}

void UrnState::validate() const {
  require(k >= 2 && n >= k, "urn needs k >= 2 and n >= k");
  require(static_cast<int>(sizes.size()) == 2 * k - 2 &&
              red.size() == sizes.size(),
          "urn needs 2k-2 coordinates");
  int reds = 0, sum = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    require(sizes[c] >= 1, "urn sizes are positive");
    reds += red[c] ? 1 : 0;
    sum += sizes[c];
  }
  require(reds == k, "urn needs k red coordinates");
  require(sum == n + k - 2, "urn sizes do not add up to n + k - 2");
  require(total() == (1 + alpha) * n - 2, "urn total differs from (1+a)n-2");
}

UrnState urn_initial(int k, const AlphaParam& alpha) {
  require(k >= 2, "urn needs k >= 2");
  UrnState u;
  u.alpha = alpha.exact();
  u.k = k;
  u.n = k;
  u.sizes.assign(2 * k - 2, 1);
  u.red.assign(2 * k - 2, 0);
  std::fill(u.red.begin(), u.red.begin() + k, 1);
  return u;
}

UrnState urn_sample(int k, const AlphaParam& alpha, int n_target, Rng& rng) {
  UrnState u = urn_initial(k, alpha);
  require(n_target >= k, "urn target below k");
  const double a = alpha.value();
  const std::size_t m = u.sizes.size();
  std::vector<double> w(m);
  for (std::size_t c = 0; c < m; ++c) w[c] = u.red[c] ? a : 1.0;
  double total = (1 + a) * k - 2;
  for (; u.n < n_target; ++u.n) {
    double x = uniform01(rng) * total;
    std::size_t c = 0;
    while (c + 1 < m && x >= w[c]) x -= w[c++];
    ++u.sizes[c];
    w[c] += 1 + a;
    total += 1 + a;
  }
  return u;
}

std::vector<int> SubtreeForest::sizes() const {
  std::vector<int> out;
  for (const auto& e : entries) out.push_back(e.tree.size());
  return out;
}

int SubtreeForest::host_size() const {
  int n = seed.size();
  for (const auto& e : entries) n += e.tree.size() - 1;
  return n;
}

SubtreeForest decompose(const PlaneTree& t, int k) {
  const int n = t.size();
  require(k >= 2 && k <= n, "seed size out of range");
  require(static_cast<int>(t.red.size()) == n, "plane tree without colouring");
  SubtreeForest f;
  f.seed.order.resize(k);
  f.seed.red.assign(k, -1);
  for (Vertex w = k; w < n; ++w) {
    require(t.degree(w) >= 1 && t.order[w][0] < w,
            "vertex " + std::to_string(w) + " does not follow the growth ids");
  }
  // Per seed vertex: its seed neighbours, and the non-seed neighbours in
  // each seed sector.
  std::vector<std::vector<std::vector<Vertex>>> sector(k);
  std::vector<int> red_piece(k, -1);
  for (Vertex v = 0; v < k; ++v) {
    const auto& ord = t.order[v];
    require(!ord.empty() && ord[0] < k,
            "seed vertex " + std::to_string(v) + " must start at a seed edge");
    int j = -1;
    for (int p = 0; p < static_cast<int>(ord.size()); ++p) {
      if (ord[p] < k) {
        f.seed.order[v].push_back(ord[p]);
        sector[v].emplace_back();
        ++j;
        if (p == t.red[v]) red_piece[v] = j;
      } else {
        sector[v][j].push_back(ord[p]);
      }
    }
    require(red_piece[v] >= 0,
            "red corner of seed vertex " + std::to_string(v) +
                " does not start at a seed edge");
    f.seed.red[v] = red_piece[v];
  }
  f.seed.validate();

  std::vector<char> used(n, 0);
  for (const SeedCorner& c : seed_corners(f.seed)) {
    const int j = plane_corner(f.seed, c);
    const auto& roots = sector[c.v][j];
    // Collect the subtree below these edges.
    std::vector<Vertex> members;
    std::vector<Vertex> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      require(!used[u], "subtrees overlap");
      used[u] = 1;
      members.push_back(u);
      for (std::size_t p = 1; p < t.order[u].size(); ++p) {
        stack.push_back(t.order[u][p]);
      }
    }
    std::sort(members.begin(), members.end());
    PlantedPlaneTree p;
    p.flavor = c.red() ? Flavor::kRed : Flavor::kBlue;
    p.origin.push_back(c.v);
    p.origin.insert(p.origin.end(), members.begin(), members.end());
    auto local = [&](Vertex host) {
      if (host == c.v) return 0;
      auto it = std::lower_bound(members.begin(), members.end(), host);
      return static_cast<int>(it - members.begin()) + 1;
    };
    p.order.resize(p.origin.size());
    p.red.resize(p.origin.size());
    p.order[0].push_back(PlantedPlaneTree::kHalfEdge);
    for (Vertex r : roots) p.order[0].push_back(local(r));
    p.red[0] = c.red() ? 0 : -1;
    for (std::size_t l = 1; l < p.origin.size(); ++l) {
      for (Vertex w : t.order[p.origin[l]]) p.order[l].push_back(local(w));
      p.red[l] = t.red[p.origin[l]];
    }
    p.validate();
    f.entries.push_back({c, std::move(p)});
  }
  for (Vertex w = k; w < n; ++w) require(used[w], "vertex outside every subtree");
  return f;
}

PlaneTree recompose(const SubtreeForest& forest) {
  const PlaneTree& seed = forest.seed;
  const int k = seed.size();
  const int n = forest.host_size();
  PlaneTree t;
  t.order.resize(n);
  t.red.assign(n, -1);
  // Planted tree by (vertex, plane corner).
  std::vector<std::vector<const PlantedPlaneTree*>> at(k);
  for (Vertex v = 0; v < k; ++v) at[v].assign(seed.degree(v), nullptr);
  for (const auto& e : forest.entries) {
    require(e.tree.origin.size() == static_cast<std::size_t>(e.tree.size()),
            "planted tree without origin ids");
    require(e.tree.origin[0] == e.corner.v, "planted root is not its corner");
    at[e.corner.v][plane_corner(seed, e.corner)] = &e.tree;
  }
  for (Vertex v = 0; v < k; ++v) {
    for (int j = 0; j < seed.degree(v); ++j) {
      if (j == seed.red[v]) t.red[v] = static_cast<int>(t.order[v].size());
      t.order[v].push_back(seed.order[v][j]);
      const PlantedPlaneTree* p = at[v][j];
      require(p != nullptr, "missing planted tree for a seed corner");
      const auto& root = p->order[0];
      const int h = p->half_edge_slot();
      for (std::size_t q = 1; q < root.size(); ++q) {
        t.order[v].push_back(p->origin[root[(h + q) % root.size()]]);
      }
    }
  }
  for (const auto& e : forest.entries) {
    const auto& p = e.tree;
    for (int l = 1; l < p.size(); ++l) {
      Vertex host = p.origin[l];
      require(host >= k && host < n && t.order[host].empty(),
              "bad origin id " + std::to_string(host));
      for (Vertex w : p.order[l]) t.order[host].push_back(p.origin[w]);
      t.red[host] = p.red[l];
    }
  }
  return t;
}

namespace {

// Corners of `seed` matched to slots: red by canonical rank of the vertex,
// then blue by (rank, i).
std::vector<SeedCorner> slot_layout(const PlaneTree& seed) {
  auto rank = canonical_rank(DecoratedTree(seed.to_tree()));
  auto corners = seed_corners(seed);
  std::stable_sort(corners.begin(), corners.end(),
                   [&](const SeedCorner& a, const SeedCorner& b) {
                     if (a.red() != b.red()) return a.red();
                     if (rank[a.v] != rank[b.v]) return rank[a.v] < rank[b.v];
                     return a.i < b.i;
                   });
  return corners;
}

}  // namespace

CoupledGrower::CoupledGrower(const PlaneTree& seed1, const PlaneTree& seed2,
                             const AlphaParam& alpha)
    : alpha_(alpha.exact()), alpha_value_(alpha.value()) {
  require(seed1.size() == seed2.size(), "coupled seeds must have equal size");
  require(seed1.size() >= 2, "coupled seeds need at least 2 vertices");
  seed1.validate();
  seed2.validate();
  k_ = n_ = seed1.size();
  seeds_[0] = seed1;
  seeds_[1] = seed2;
  slot_corner_[0] = slot_layout(seed1);
  slot_corner_[1] = slot_layout(seed2);
  for (int c = 0; c < 2 * k_ - 2; ++c) {
    Flavor f = c < k_ ? Flavor::kRed : Flavor::kBlue;
    slots_.emplace_back(PlantedPlaneTree::single(f), alpha);
    global_ids_.push_back({-1});
  }
}

Rational CoupledGrower::slot_weight(int c) const {
  const auto& g = slots_[c];
  Rational w = alpha_ * static_cast<long>(g.red_slots()) +
               static_cast<long>(g.blue_slots());
  w.canonicalize();
  return w;
}

void CoupledGrower::step(Rng& rng) {
  double total = 0;
  for (const auto& g : slots_) total += g.total_weight();
  double x = uniform01(rng) * total;
  int c = 0;
  while (c + 1 < slots() && x >= slots_[c].total_weight()) {
    x -= slots_[c++].total_weight();
  }
  slots_[c].step(rng);
  global_ids_[c].push_back(n_++);
}

void CoupledGrower::attach(int c, Vertex local, int corner) {
  slots_.at(c).attach(local, corner);
  global_ids_[c].push_back(n_++);
}

UrnState CoupledGrower::urn() const {
  UrnState u = urn_initial(k_, AlphaParam(alpha_));
  u.n = n_;
  for (int c = 0; c < slots(); ++c) u.sizes[c] = slots_[c].size();
  return u;
}

SubtreeForest CoupledGrower::forest(int which) const {
  SubtreeForest f;
  f.seed = seeds_[which];
  auto order = seed_corners(f.seed);
  f.entries.resize(order.size());
  for (int c = 0; c < slots(); ++c) {
    const SeedCorner sc = slot_corner_[which][c];
    auto pos = std::find(order.begin(), order.end(), sc) - order.begin();
    PlantedPlaneTree p = slots_[c].planted();
    p.origin = global_ids_[c];
    p.origin[0] = sc.v;
    f.entries[pos] = {sc, std::move(p)};
  }
  return f;
}

CoupledOutcome coupled_grow(const PlaneTree& seed1, const PlaneTree& seed2,
                            const AlphaParam& alpha, int n_target, Rng& rng) {
  CoupledGrower g(seed1, seed2, alpha);
  require(n_target >= seed1.size(), "n_target below the seed size");
  while (g.size() < n_target) g.step(rng);
  return {g.first(), g.second(), g.urn()};
}

}  // namespace seedrec
