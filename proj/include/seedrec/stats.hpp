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

#include <map>
#include <vector>

namespace seedrec {

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

/// Two-sample chi-square test of homogeneity over integer-coded categories.
/// Categories whose pooled expected count falls below `min_expected` are
/// merged into one tail bin.
ChiSquareResult chi_square_homogeneity(const std::map<std::vector<int>, long>& a,
                                       const std::map<std::vector<int>, long>& b,
                                       double min_expected = 5.0);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double x, int dof);

/// Least-squares slope of y on x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace seedrec
