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

#include "seedrec/growth.hpp"

#include <map>
#include <string>
#include <utility>

#include "seedrec/canonical.hpp"
#include "seedrec/errors.hpp"

namespace seedrec {

namespace {

void check_positive(const Rational& a) {
  if (a <= 0) throw ConfigError("alpha must be positive, got " + to_string(a));
}

}  // namespace

AlphaParam::AlphaParam(Rational value) : exact_(std::move(value)) {
  exact_.canonicalize();
  check_positive(exact_);
  value_ = to_double(exact_);
}

AlphaParam::AlphaParam(long num, long den) : AlphaParam(Rational(num, den)) {}

AlphaParam AlphaParam::parse(std::string_view text) {
  return AlphaParam(parse_rational(text));
}

std::string GrowthStep::str() const {
  return "step " + std::to_string(step) + ": vertex " + std::to_string(vertex) +
         " corner " + std::to_string(corner) + " color " + (red ? "r" : "b");
}

CornerGrower::CornerGrower(const PlaneTree& seed, const AlphaParam& alpha,
                           bool track_order)
    : alpha_(alpha.value()), track_order_(track_order) {
  seed.validate();
  if (seed.size() < 2) throw PreconditionError("seed needs at least 2 vertices");
  seed_size_ = seed.size();
  seed_edges_ = seed.to_tree().edges();
  degree_.resize(seed_size_);
  parent_.assign(seed_size_, -1);
  for (Vertex v = 0; v < seed_size_; ++v) {
    degree_[v] = seed.degree(v);
    red_slots_.push_back(v);
    for (int j = 1; j < degree_[v]; ++j) blue_owner_.push_back(v);
  }
  if (track_order_) {
    order_ = seed.order;
    red_ = seed.red;
  }
}

CornerGrower::CornerGrower(const PlantedPlaneTree& seed,
                           const AlphaParam& alpha)
    : alpha_(alpha.value()), track_order_(true), planted_(true),
      flavor_(seed.flavor) {
  seed.validate();
  seed_size_ = seed.size();
  order_ = seed.order;
  red_ = seed.red;
  parent_.assign(seed_size_, -1);
  degree_.resize(seed_size_);
  for (Vertex v = 0; v < seed_size_; ++v) {
    int corners = static_cast<int>(order_[v].size());
    degree_[v] = corners - (v == 0 ? 1 : 0);
    if (red_[v] >= 0) red_slots_.push_back(v);
    for (int j = red_[v] >= 0 ? 1 : 0; j < corners; ++j) {
      blue_owner_.push_back(v);
    }
    for (Vertex w : order_[v]) {
      if (w > v) seed_edges_.emplace_back(v, w);
    }
  }
}

CornerGrower::CornerGrower(const Tree& seed, const AlphaParam& alpha)
    : alpha_(alpha.value()), track_order_(false) {
  if (seed.size() < 2) throw PreconditionError("seed needs at least 2 vertices");
  seed_size_ = seed.size();
  seed_edges_ = seed.edges();
  degree_ = seed.degrees();
  parent_.assign(seed_size_, -1);
  for (Vertex v = 0; v < seed_size_; ++v) {
    red_slots_.push_back(v);
    for (int j = 1; j < degree_[v]; ++j) blue_owner_.push_back(v);
  }
}

void CornerGrower::reserve(int n) {
  degree_.reserve(n);
  parent_.reserve(n);
  red_slots_.reserve(n);
  blue_owner_.reserve(n);
  if (track_order_) {
    order_.reserve(n);
    red_.reserve(n);
  }
}

double CornerGrower::total_weight() const {
  return alpha_ * static_cast<double>(red_slots_.size()) +
         static_cast<double>(blue_owner_.size());
}

GrowthStep CornerGrower::step(Rng& rng) {
  // One uniform on [0, total): the red block [0, alpha*#red) maps to slots
  // of width alpha, the rest to blue slots of width 1.
  const double red_mass = alpha_ * static_cast<double>(red_slots_.size());
  const double x = uniform01(rng) * (red_mass + blue_owner_.size());
  GrowthStep s;
  s.step = size() - seed_size_ + 1;
  if (x < red_mass || blue_owner_.empty()) {
    auto i = static_cast<std::size_t>(x / alpha_);
    if (i >= red_slots_.size()) i = red_slots_.size() - 1;
    s.vertex = red_slots_[i];
    s.red = true;
    s.corner = track_order_ ? red_[s.vertex] : 0;
  } else {
    auto i = static_cast<std::size_t>(x - red_mass);
    if (i >= blue_owner_.size()) i = blue_owner_.size() - 1;
    s.vertex = blue_owner_[i];
    s.red = false;
    if (track_order_) {
      const int r0 = red_[s.vertex];
      const int blues =
          static_cast<int>(order_[s.vertex].size()) - (r0 >= 0 ? 1 : 0);
      int r = static_cast<int>(uniform_index(rng, blues));
      s.corner = (r0 >= 0 && r >= r0) ? r + 1 : r;
    } else {
      s.corner = -1;
    }
  }
  add_vertex(s.vertex, s.corner, s.red);
  return s;
}

void CornerGrower::attach(Vertex vertex, int corner) {
  if (!track_order_) throw PreconditionError("attach needs a planar grower");
  if (vertex < 0 || vertex >= size() || corner < 0 ||
      corner >= static_cast<int>(order_[vertex].size())) {
    throw PreconditionError("corner out of range");
  }
  add_vertex(vertex, corner, corner == red_[vertex]);
}

void CornerGrower::add_vertex(Vertex parent, int corner, bool red_corner) {
  const auto w = static_cast<Vertex>(degree_.size());
  degree_.push_back(1);
  ++degree_[parent];
  parent_.push_back(parent);
  red_slots_.push_back(w);
  blue_owner_.push_back(parent);
  if (!track_order_) return;
  // The new edge enters between order[corner] and order[corner+1]. A split
  // red corner keeps its index (the part after its first half-edge); any
  // corner before the red one pushes it up by one.
  auto& ord = order_[parent];
  ord.insert(ord.begin() + corner + 1, w);
  if (!red_corner && red_[parent] >= 0 && corner < red_[parent]) {
    ++red_[parent];
  }
  order_.push_back({parent});
  red_.push_back(0);
}

Tree CornerGrower::tree() const {
  std::vector<Edge> edges = seed_edges_;
  edges.reserve(degree_.size() - 1);
  for (Vertex v = seed_size_; v < size(); ++v) edges.emplace_back(parent_[v], v);
  return Tree(size(), std::move(edges));
}

PlaneTree CornerGrower::plane() const {
  if (!track_order_ || planted_) {
    throw PreconditionError("no plane tree available from this grower");
  }
  return PlaneTree{order_, red_};
}

PlantedPlaneTree CornerGrower::planted() const {
  if (!planted_) throw PreconditionError("grower is not planted");
  PlantedPlaneTree p;
  p.order = order_;
  p.red = red_;
  p.flavor = flavor_;
  return p;
}

namespace {

void check_target(int seed_size, int n_target) {
  if (n_target < seed_size) {
    throw PreconditionError("n_target " + std::to_string(n_target) +
                            " is below the seed size " +
                            std::to_string(seed_size));
  }
}

// Prefix sums over doubles with O(log n) point update and inverse lookup.
class Fenwick {
 public:
  explicit Fenwick(int n) : n_(n), bit_(n + 1, 0.0) {
    while ((1 << (log_ + 1)) <= n_) ++log_;
  }
  void add(int i, double x) {
    for (++i; i <= n_; i += i & -i) bit_[i] += x;
  }
  // Smallest i with prefix(i+1) > target.
  int find(double target) const {
    int pos = 0;
    for (int step = 1 << log_; step > 0; step >>= 1) {
      if (pos + step <= n_ && bit_[pos + step] <= target) {
        pos += step;
        target -= bit_[pos];
      }
    }
    return pos;
  }

 private:
  int n_;
  int log_ = 0;
  std::vector<double> bit_;
};

}  // namespace

Tree grow_abstract(const Tree& seed, const AlphaParam& alpha, int n_target,
                   Rng& rng) {
  if (seed.size() < 2) throw PreconditionError("seed needs at least 2 vertices");
  check_target(seed.size(), n_target);
  CornerGrower g(seed, alpha);
  g.reserve(n_target);
  while (g.size() < n_target) g.step(rng);
  return g.tree();
}

Tree grow_abstract_weighted(const Tree& seed, const AlphaParam& alpha,
                            int n_target, Rng& rng) {
  if (seed.size() < 2) throw PreconditionError("seed needs at least 2 vertices");
  check_target(seed.size(), n_target);
  const double a = alpha.value();
  Fenwick fw(n_target);
  std::vector<int> deg = seed.degrees();
  deg.reserve(n_target);
  double total = 0.0;
  for (Vertex v = 0; v < seed.size(); ++v) {
    fw.add(v, deg[v] - 1 + a);
    total += deg[v] - 1 + a;
  }
  std::vector<Edge> edges = seed.edges();
  for (int n = seed.size(); n < n_target; ++n) {
    int u = fw.find(uniform01(rng) * total);
    if (u >= n) u = n - 1;
    edges.emplace_back(u, n);
    ++deg[u];
    fw.add(u, 1.0);
    deg.push_back(1);
    fw.add(n, a);
    total += 1.0 + a;
  }
  return Tree(n_target, std::move(edges));
}

PlaneTree grow_planar(const PlaneTree& seed, const AlphaParam& alpha,
                      int n_target, Rng& rng,
                      std::vector<GrowthStep>* trajectory) {
  CornerGrower g(seed, alpha, true);
  check_target(seed.size(), n_target);
  g.reserve(n_target);
  while (g.size() < n_target) {
    GrowthStep s = g.step(rng);
    if (trajectory) trajectory->push_back(s);
  }
  return g.plane();
}

PlantedPlaneTree grow_planted(Flavor flavor, const AlphaParam& alpha,
                              int n_target, Rng& rng) {
  if (n_target < 1) throw PreconditionError("planted tree needs n >= 1");
  CornerGrower g(PlantedPlaneTree::single(flavor), alpha);
  g.reserve(n_target);
  while (g.size() < n_target) g.step(rng);
  return g.planted();
}

namespace {

// Number of attachment sequences from size k to size n: k (k+1) ... (n-1).
void check_sequence_cap(int k, int n, std::uint64_t cap) {
  BigInt count = 1;
  for (int m = k; m < n; ++m) {
    count *= m;
    if (count > BigInt(std::to_string(cap))) {
      throw CapExceeded("growth enumeration from size " + std::to_string(k) +
                        " to " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap) + " sequences");
    }
  }
}

Rational step_denominator(const Rational& alpha, int n) {
  return (1 + alpha) * n - 2;
}

void enumerate_labeled(const Tree& t, const Rational& alpha, int n_target,
                       const Rational& p, std::vector<GrowthOutcome>& out) {
  if (t.size() == n_target) {
    out.push_back({t, p});
    return;
  }
  const Rational den = step_denominator(alpha, t.size());
  for (Vertex u = 0; u < t.size(); ++u) {
    Rational q = p * (t.degree(u) - 1 + alpha) / den;
    q.canonicalize();
    enumerate_labeled(t.with_leaf(u), alpha, n_target, q, out);
  }
}

}  // namespace

std::vector<GrowthOutcome> enumerate_growth(const Tree& seed,
                                            const Rational& alpha,
                                            int n_target, bool canonicalize,
                                            std::uint64_t cap) {
  check_positive(alpha);
  if (seed.size() < 2) throw PreconditionError("seed needs at least 2 vertices");
  check_target(seed.size(), n_target);
  check_sequence_cap(seed.size(), n_target, cap);
  if (!canonicalize) {
    std::vector<GrowthOutcome> out;
    enumerate_labeled(seed, alpha, n_target, Rational(1), out);
    return out;
  }
  // The attachment law is isomorphism invariant, so classes can be merged
  // after every step.
  std::map<CanonicalCode, GrowthOutcome> level;
  level.emplace(canonical_code(seed), GrowthOutcome{canonical_form(seed), 1});
  for (int n = seed.size(); n < n_target; ++n) {
    const Rational den = step_denominator(alpha, n);
    std::map<CanonicalCode, GrowthOutcome> next;
    for (const auto& [code, o] : level) {
      for (Vertex u = 0; u < n; ++u) {
        Tree grown = o.tree.with_leaf(u);
        Rational q = o.probability * (o.tree.degree(u) - 1 + alpha) / den;
        auto c = canonical_code(grown);
        auto it = next.find(c);
        if (it == next.end()) {
          next.emplace(std::move(c), GrowthOutcome{canonical_form(grown), q});
        } else {
          it->second.probability += q;
        }
      }
    }
    level = std::move(next);
  }
  std::vector<GrowthOutcome> out;
  out.reserve(level.size());
  for (auto& [code, o] : level) {
    o.probability.canonicalize();
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

void enumerate_planar(const CornerGrower& g, const Rational& alpha,
                      int n_target, const Rational& p,
                      std::vector<PlaneGrowthOutcome>& out) {
  if (g.size() == n_target) {
    out.push_back({g.plane(), p});
    return;
  }
  const Rational den = step_denominator(alpha, g.size());
  const PlaneTree cur = g.plane();
  for (Vertex v = 0; v < g.size(); ++v) {
    for (int j = 0; j < cur.degree(v); ++j) {
      Rational q = p * (j == cur.red[v] ? alpha : Rational(1)) / den;
      q.canonicalize();
      CornerGrower next = g;
      next.attach(v, j);
      enumerate_planar(next, alpha, n_target, q, out);
    }
  }
}

}  // namespace

std::vector<PlaneGrowthOutcome> enumerate_planar_growth(
    const PlaneTree& seed, const Rational& alpha, int n_target,
    std::uint64_t cap) {
  check_positive(alpha);
  CornerGrower g(seed, AlphaParam(alpha), true);
  check_target(seed.size(), n_target);
  // Corner sequences: 2(m-1) choices at size m.
  BigInt count = 1;
  for (int m = seed.size(); m < n_target; ++m) {
    count *= 2 * (m - 1);
    if (count > BigInt(std::to_string(cap))) {
      throw CapExceeded("planar growth enumeration exceeds cap " +
                        std::to_string(cap));
    }
  }
  std::vector<PlaneGrowthOutcome> out;
  enumerate_planar(g, alpha, n_target, Rational(1), out);
  return out;
}

}  // namespace seedrec
