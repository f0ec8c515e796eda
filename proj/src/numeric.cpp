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

#include "seedrec/numeric.hpp"

#include <cmath>

#include "seedrec/errors.hpp"

namespace seedrec {

BigInt falling_factorial(std::uint64_t n, std::uint64_t d) {
  if (d > n) return 0;
  BigInt out = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    out *= static_cast<unsigned long>(n - i);
  }
  return out;
}

Rational falling_factorial(const Rational& x, std::uint64_t d) {
  Rational out = 1;
  Rational term = x;
  for (std::uint64_t i = 0; i < d; ++i) {
    out *= term;
    term -= 1;
  }
  out.canonicalize();
  return out;
}

double falling_factorial_approx(double x, std::uint64_t d) {
  double out = 1.0;
  for (std::uint64_t i = 0; i < d; ++i) out *= x - static_cast<double>(i);
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  if (!digits(num) || !digits(den)) {
    throw ConfigError("not a rational: '" + s + "'");
  }
  BigInt p(num), q(den);
  if (q == 0) throw ConfigError("zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) {
  // mpq_get_d truncates; good enough for reporting, but keep exponent range
  // safe for very large numerators and denominators.
  long num_exp = 0, den_exp = 0;
  double num = mpz_get_d_2exp(&num_exp, r.get_num_mpz_t());
  double den = mpz_get_d_2exp(&den_exp, r.get_den_mpz_t());
  if (num == 0.0) return 0.0;
  return std::ldexp(num / den, static_cast<int>(num_exp - den_exp));
}

}  // namespace seedrec
