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

#include "seedrec/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <set>

namespace seedrec {

double chi_square_sf(double x, int dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

ChiSquareResult chi_square_homogeneity(
    const std::map<std::vector<int>, long>& a,
    const std::map<std::vector<int>, long>& b, double min_expected) {
  double na = 0, nb = 0;
  for (const auto& [k, c] : a) na += c;
  for (const auto& [k, c] : b) nb += c;
  std::set<std::vector<int>> keys;
  for (const auto& [k, c] : a) keys.insert(k);
  for (const auto& [k, c] : b) keys.insert(k);
  auto count = [](const std::map<std::vector<int>, long>& m,
                  const std::vector<int>& k) -> double {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : static_cast<double>(it->second);
  };
  // Bins as (count in a, count in b); sparse ones go to the tail.
  std::vector<std::pair<double, double>> bins;
  double tail_a = 0, tail_b = 0;
  const double frac = std::min(na, nb) / (na + nb);
  for (const auto& k : keys) {
    double ca = count(a, k), cb = count(b, k);
    if ((ca + cb) * frac < min_expected) {
      tail_a += ca;
      tail_b += cb;
    } else {
      bins.emplace_back(ca, cb);
    }
  }
  if (tail_a + tail_b > 0) bins.emplace_back(tail_a, tail_b);
  ChiSquareResult r;
  const double n = na + nb;
  for (auto [ca, cb] : bins) {
    double row = ca + cb;
    double ea = row * na / n, eb = row * nb / n;
    if (ea > 0) r.statistic += (ca - ea) * (ca - ea) / ea;
    if (eb > 0) r.statistic += (cb - eb) * (cb - eb) / eb;
  }
  r.dof = static_cast<int>(bins.size()) - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace seedrec
