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

#include "seedrec/seedtest.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "seedrec/canonical.hpp"
#include "seedrec/errors.hpp"
#include "seedrec/moments.hpp"
#include "seedrec/observables.hpp"

namespace seedrec {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

bool isomorphic(const Tree& a, const Tree& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

std::map<DegreeDecoration, Rational> profile_difference(const Tree& tau,
                                                        const Tree& s1,
                                                        const Tree& s2) {
  std::map<DegreeDecoration, Rational> delta;
  for (const auto& [d, c] : perfect_profile(tau, s1)) delta[d] += Rational(c);
  for (const auto& [d, c] : perfect_profile(tau, s2)) delta[d] -= Rational(c);
  std::erase_if(delta, [](const auto& kv) { return kv.second == 0; });
  return delta;
}

// Picks ell(u_r), ell(u_{r-1}), ... by doubling until the terms whose first
// difference from d_max sits at that coordinate are at most |delta(d_max)|/2r
// relative to the d_max term. Their total is then at most half of it.
void choose_ell(DistinguishPlan& plan, const Rational& alpha, int cap) {
  const int r = plan.tau.size();
  const auto& dmax = plan.d_max;
  const Rational& top = plan.delta.at(dmax);
  const Rational threshold = abs(top) / (2 * r);

  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), Rational(1 + alpha).get_num_mpz_t(),
             Rational(1 + alpha).get_den_mpz_t());
  const int first = std::max<int>(2, static_cast<int>(fl.get_si()) + 1);

  plan.ell.assign(r, 2);
  for (int j = r - 1; j >= 0; --j) {
    std::vector<std::pair<const DegreeDecoration*, const Rational*>> group;
    for (const auto& [d, v] : plan.delta) {
      auto it = std::mismatch(d.begin(), d.end(), dmax.begin()).first;
      if (it != d.end() && it - d.begin() == j) group.emplace_back(&d, &v);
    }
    plan.ell[j] = j == r - 1 ? first : 2;
    for (;;) {
      if (plan.ell[j] > cap)
        throw CapExceeded("decoration search passed ell = " + std::to_string(cap));
      const Rational fmax = f_infinity(dmax, plan.ell, alpha);
      Rational sum = 0;
      for (auto [d, v] : group) sum += f_infinity(*d, plan.ell, alpha) * *v;
      if (abs(sum / fmax) <= threshold) break;
      plan.ell[j] *= 2;
    }
  }

  plan.closed_form_sum = 0;
  for (const auto& [d, v] : plan.delta)
    plan.closed_form_sum += f_infinity(d, plan.ell, alpha) * v;
  // Cannot happen given the bound above; kept as a guard.
  if (plan.closed_form_sum == 0)
    throw std::logic_error("closed-form sum vanished");
}

double single_vertex_F(const std::vector<int>& degrees, int ell) {
  if (ell == 0) return static_cast<double>(degrees.size());
  double s = 0;
  for (int d : degrees) s += falling_factorial_approx(d - 1, ell);
  return s;
}

McEstimate summarize(int n, const std::vector<double>& x) {
  McEstimate e;
  e.n = n;
  e.replicates = x.size();
  const double R = static_cast<double>(x.size());
  if (x.empty()) return e;
  double m1 = 0, m2 = 0;
  for (double v : x) {
    m1 += v;
    m2 += v * v;
  }
  m1 /= R;
  m2 /= R;
  e.mean = m1;
  e.second_moment = m2;
  if (x.size() < 2) return e;
  double s11 = 0, s22 = 0, s12 = 0;
  for (double v : x) {
    const double a = v - m1, b = v * v - m2;
    s11 += a * a;
    s22 += b * b;
    s12 += a * b;
  }
  e.var_mean = s11 / (R - 1) / R;
  e.var_m2 = s22 / (R - 1) / R;
  e.cov_mean_m2 = s12 / (R - 1) / R;
  e.std_error = std::sqrt(e.var_mean);
  return e;
}

nlohmann::json edges_json(const Tree& t) {
  nlohmann::json out = nlohmann::json::array();
  for (auto [a, b] : t.edges()) out.push_back({a, b});
  return out;
}

nlohmann::json estimate_json(const McEstimate& e) {
  return {{"mean", e.mean},
          {"second_moment", e.second_moment},
          {"std_error", e.std_error}};
}

}  // namespace

BlindReport is_blind(const Tree& tau, const Tree& s1, const Tree& s2) {
  require(s1.size() == s2.size(), "blindness needs seeds of equal size");
  BlindReport rep;
  rep.tau = tau;
  auto p1 = perfect_profile(tau, s1);
  auto p2 = perfect_profile(tau, s2);
  std::set<DegreeDecoration> keys;
  for (const auto& kv : p1) keys.insert(kv.first);
  for (const auto& kv : p2) keys.insert(kv.first);
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
    BigInt a = p1.count(*it) ? p1[*it] : BigInt(0);
    BigInt b = p2.count(*it) ? p2[*it] : BigInt(0);
    if (a != b) {
      rep.is_blind = false;
      rep.witness = *it;
      rep.count1 = a;
      rep.count2 = b;
      break;
    }
  }
  return rep;
}

Tree minimal_nonblind(const Tree& s1, const Tree& s2) {
  require(s1.size() == s2.size(), "blindness needs seeds of equal size");
  require(!isomorphic(s1, s2), "isomorphic seeds have no non-blind tree");
  for (int m = 1; m <= s1.size(); ++m) {
    if (m > kMaxBlindSearchSize)
      throw CapExceeded("blind search passed size " +
                        std::to_string(kMaxBlindSearchSize));
    for (const Tree& tau :
         enumerate_trees(m, std::max(kDefaultEnumerationCap, m))) {
      if (!is_blind(tau, s1, s2).is_blind) return tau;
    }
  }
  // s1 itself is never blind against a non-isomorphic s2.
  throw std::logic_error("no non-blind tree found");
}

Rational f_infinity(const DegreeDecoration& d, const std::vector<int>& ell,
                    const Rational& alpha) {
  require(d.size() == ell.size(), "decorations of different length");
  Rational out = 1;
  for (std::size_t u = 0; u < d.size(); ++u)
    out *= falling_factorial(Rational(d[u] + ell[u] - 2) + alpha,
                             static_cast<std::uint64_t>(ell[u]));
  return out;
}

DistinguishPlan distinguishing_decoration(const Tree& tau, const Tree& s1,
                                          const Tree& s2, const Rational& alpha,
                                          int cap) {
  require(alpha > 0, "alpha must be positive");
  require(s1.size() == s2.size(), "seeds must have equal size");
  DistinguishPlan plan;
  plan.tau = canonical_form(tau);
  plan.delta = profile_difference(plan.tau, s1, s2);
  require(!plan.delta.empty(), "pattern is blind for these seeds");
  plan.d_max = plan.delta.rbegin()->first;
  choose_ell(plan, alpha, cap);
  return plan;
}

DistinguishPlan distinguishing_decoration_unequal(const Tree& s1, const Tree& s2,
                                                  const Rational& alpha, int cap) {
  require(alpha > 0, "alpha must be positive");
  require(s2.size() >= 3 && s2.size() < s1.size(),
          "need 3 <= |s2| < |s1|");
  DistinguishPlan plan;
  plan.tau = Tree();
  for (int d : s1.degrees()) plan.delta[{d}] += 1;
  for (const auto& o : enumerate_growth(s2, alpha, s1.size(), true))
    for (int d : o.tree.degrees()) plan.delta[{d}] -= o.probability;
  std::erase_if(plan.delta, [](const auto& kv) { return kv.second == 0; });
  require(!plan.delta.empty(), "degree profiles agree in law");
  plan.d_max = plan.delta.rbegin()->first;
  choose_ell(plan, alpha, cap);
  return plan;
}

double tv_lower_bound(double mean1, double mean2, double m2_1, double m2_2) {
  auto ok = [](double m, double m2) {
    return std::isfinite(m) && std::isfinite(m2) &&
           m2 >= m * m * (1 - 1e-12) - 1e-300;
  };
  require(ok(mean1, m2_1) && ok(mean2, m2_2), "invalid moments");
  const double delta = mean1 - mean2;
  if (delta == 0) return 0;
  const double d2 = delta * delta;
  return d2 / (d2 + 2 * (m2_1 + m2_2));
}

TvBoundReport tv_bound_report(const McEstimate& a, const McEstimate& b) {
  TvBoundReport r;
  r.mean1 = a.mean;
  r.mean2 = b.mean;
  r.m2_1 = a.second_moment;
  r.m2_2 = b.second_moment;
  r.bound = tv_lower_bound(a.mean, b.mean, a.second_moment, b.second_moment);
  // Delta method; the two seeds are sampled independently.
  const double delta = a.mean - b.mean;
  const double s = a.second_moment + b.second_moment;
  const double m = delta * delta + 2 * s;
  double var = 0;
  if (m > 0) {
    const double g_mean = 4 * delta * s / (m * m);
    const double g_m2 = -2 * delta * delta / (m * m);
    auto quad = [&](const McEstimate& e, double gm) {
      return gm * gm * e.var_mean + g_m2 * g_m2 * e.var_m2 +
             2 * gm * g_m2 * e.cov_mean_m2;
    };
    var = quad(a, g_mean) + quad(b, -g_mean);
  }
  const double half = 1.959963984540054 * std::sqrt(std::max(0.0, var));
  r.ci_low = r.bound - half;
  r.ci_high = r.bound + half;
  return r;
}

std::vector<McEstimate> mc_curve(const DecoratedTree& tau, const Tree& seed,
                                 const AlphaParam& alpha,
                                 const std::vector<int>& ns,
                                 std::uint64_t replicates, std::uint64_t master,
                                 int threads,
                                 std::vector<std::vector<double>>* samples) {
  require(!ns.empty(), "empty n list");
  require(seed.size() >= 2, "seed needs at least two vertices");
  require(ns.front() >= seed.size(), "n below the seed size");
  for (std::size_t i = 1; i < ns.size(); ++i)
    require(ns[i] > ns[i - 1], "n list must be strictly increasing");

  const bool vertex = tau.size() == 1;
  std::vector<std::vector<double>> values(
      ns.size(), std::vector<double>(replicates));
  parallel_for(replicates, threads, [&](std::uint64_t r) {
    Rng rng = make_stream(master, r);
    CornerGrower g(seed, alpha);
    g.reserve(ns.back());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      while (g.size() < ns[i]) g.step(rng);
      values[i][r] = vertex ? single_vertex_F(g.degrees(), tau.ell[0])
                            : count_F_approx(tau, g.tree());
    }
  });

  std::vector<McEstimate> out;
  for (std::size_t i = 0; i < ns.size(); ++i)
    out.push_back(summarize(ns[i], values[i]));
  if (samples) *samples = std::move(values);
  return out;
}

McEstimate mc_moments(const DecoratedTree& tau, const Tree& seed,
                      const AlphaParam& alpha, int n, std::uint64_t replicates,
                      std::uint64_t master, int threads) {
  return mc_curve(tau, seed, alpha, {n}, replicates, master, threads).front();
}

std::vector<double> martingale_track(const Tree& grown, int k,
                                     const std::vector<Vertex>& region,
                                     const std::vector<int>& ell,
                                     const AlphaParam& alpha) {
  const int n = grown.size();
  require(k >= 2 && k <= n, "seed size out of range");
  require(!region.empty() && region.size() == ell.size(),
          "region and decoration must match");
  std::vector<char> in(k, 0);
  for (std::size_t i = 0; i < region.size(); ++i) {
    require(region[i] >= 0 && region[i] < k, "region leaves the seed");
    require(!in[region[i]], "repeated region vertex");
    require(ell[i] >= 0, "negative decoration");
    in[region[i]] = 1;
  }
  // Region connected inside the seed.
  std::vector<Vertex> stack{region[0]};
  std::vector<char> seen(k, 0);
  seen[region[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : grown.neighbors(v)) {
      if (w < k && in[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  require(reached == region.size(), "region is not a subtree");

  std::vector<int> deg(n, 0);
  for (Vertex v = 0; v < k; ++v)
    for (Vertex w : grown.neighbors(v)) deg[v] += w < k ? 1 : 0;
  const double a = alpha.value();
  int total = 0;
  for (int l : ell) total += l;
  auto m_value = [&] {
    double m = 1;
    for (std::size_t i = 0; i < region.size(); ++i)
      m *= falling_factorial_approx(deg[region[i]] + a + ell[i] - 2, ell[i]);
    return m;
  };

  std::vector<double> out;
  out.reserve(n - k + 1);
  double w = 1;
  out.push_back(m_value());
  for (Vertex v = k; v < n; ++v) {
    auto nb = grown.neighbors(v);
    Vertex parent = *std::min_element(nb.begin(), nb.end());
    require(parent < v, "tree is not in growth order");
    ++deg[parent];
    deg[v] = 1;
    w /= 1 + total / ((1 + a) * v - 2);
    out.push_back(m_value() * w);
  }
  return out;
}

double empirical_tv(const std::vector<double>& a, const std::vector<double>& b) {
  require(!a.empty() && !b.empty(), "empty sample");
  auto integral = [](const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [](double v) {
      return std::abs(v) < 0x1.0p53 && v == std::floor(v);
    });
  };
  auto tv_of = [&](auto key) {
    std::map<long long, std::pair<double, double>> mass;
    for (double v : a) mass[key(v)].first += 1.0 / a.size();
    for (double v : b) mass[key(v)].second += 1.0 / b.size();
    double tv = 0;
    for (const auto& [k, p] : mass) tv += std::abs(p.first - p.second);
    return std::pair(tv / 2, mass.size());
  };

  if (integral(a) && integral(b)) {
    auto [tv, support] = tv_of([](double v) { return static_cast<long long>(v); });
    if (support <= kExactTvSupport) return tv;
  }
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  const double lo = pooled.front(), hi = pooled.back();
  if (lo == hi) return 0;
  auto quantile = [&](double q) {
    return pooled[static_cast<std::size_t>(q * (pooled.size() - 1))];
  };
  double h = 2 * (quantile(0.75) - quantile(0.25)) /
             std::cbrt(static_cast<double>(pooled.size()));
  if (h <= 0) h = (hi - lo) / std::sqrt(static_cast<double>(pooled.size()));
  return tv_of([&](double v) {
           return static_cast<long long>(std::floor((v - lo) / h));
         }).first;
}

std::string DistinguishReport::to_json() const {
  using nlohmann::json;
  json delta = json::array();
  for (const auto& [d, v] : plan.delta)
    delta.push_back({{"d", d}, {"value", to_string(v)}});
  json pts = json::array();
  for (const auto& p : points) {
    pts.push_back({{"n", p.n},
                   {"seed1", estimate_json(p.first)},
                   {"seed2", estimate_json(p.second)},
                   {"tv_bound", p.bound.bound},
                   {"tv_bound_ci", {p.bound.ci_low, p.bound.ci_high}},
                   {"empirical_tv", p.empirical_tv},
                   {"exact_difference", to_string(p.exact_difference)},
                   {"normalized_difference", p.normalized_difference}});
  }
  json out = {{"schema", 1},
              {"alpha", alpha},
              {"seed1", {{"size", seed1.size()}, {"edges", edges_json(seed1)}}},
              {"seed2", {{"size", seed2.size()}, {"edges", edges_json(seed2)}}},
              {"equal_sizes", equal_sizes},
              {"plan",
               {{"tau", {{"size", plan.tau.size()}, {"edges", edges_json(plan.tau)}}},
                {"ell", plan.ell},
                {"delta", delta},
                {"d_max", plan.d_max},
                {"closed_form_sum", to_string(plan.closed_form_sum)}}},
              {"replicates", replicates},
              {"master_seed", master},
              {"points", pts}};
  return out.dump(2) + "\n";
}

DistinguishReport distinguish(const Tree& s1, const Tree& s2,
                              const AlphaParam& alpha, const std::vector<int>& ns,
                              std::uint64_t replicates, std::uint64_t master,
                              int threads) {
  require(s1.size() >= 3 && s2.size() >= 3, "seeds need at least 3 vertices");
  require(!isomorphic(s1, s2), "seeds are isomorphic");
  const Rational& a = alpha.exact();

  DistinguishReport rep;
  rep.alpha = alpha.str();
  rep.seed1 = s1;
  rep.seed2 = s2;
  rep.replicates = replicates;
  rep.master = master;
  rep.equal_sizes = s1.size() == s2.size();
  if (rep.equal_sizes) {
    rep.plan = distinguishing_decoration(minimal_nonblind(s1, s2), s1, s2, a);
  } else if (s1.size() > s2.size()) {
    rep.plan = distinguishing_decoration_unequal(s1, s2, a);
  } else {
    rep.plan = distinguishing_decoration_unequal(s2, s1, a);
    for (auto& kv : rep.plan.delta) kv.second = -kv.second;
    rep.plan.closed_form_sum = -rep.plan.closed_form_sum;
  }

  const DecoratedTree tau = rep.plan.decorated();
  std::vector<std::vector<double>> x1, x2;
  auto e1 = mc_curve(tau, s1, alpha, ns, replicates, stream_seed(master, 1),
                     threads, &x1);
  auto e2 = mc_curve(tau, s2, alpha, ns, replicates, stream_seed(master, 2),
                     threads, &x2);
  auto exact1 = exact_expectation(tau, s1, a, ns);
  auto exact2 = exact_expectation(tau, s2, a, ns);
  const double power = tau.total_decoration() / (1 + alpha.value());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    DistinguishPoint p;
    p.n = ns[i];
    p.first = e1[i];
    p.second = e2[i];
    p.bound = tv_bound_report(e1[i], e2[i]);
    p.empirical_tv = empirical_tv(x1[i], x2[i]);
    p.exact_difference = exact1[i] - exact2[i];
    p.normalized_difference =
        to_double(p.exact_difference) * std::pow(static_cast<double>(ns[i]), -power);
    rep.points.push_back(std::move(p));
  }
  return rep;
}

}  // namespace seedrec
