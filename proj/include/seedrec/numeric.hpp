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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace seedrec {

using BigInt = mpz_class;
using Rational = mpq_class;

/// [n]_d = n (n-1) ... (n-d+1), with [n]_0 = 1 and [n]_d = 0 for d > n.
BigInt falling_factorial(std::uint64_t n, std::uint64_t d);

/// Falling factorial with a rational first argument: x (x-1) ... (x-d+1).
Rational falling_factorial(const Rational& x, std::uint64_t d);

/// Same product evaluated in floating point.
double falling_factorial_approx(double x, std::uint64_t d);

/// Parses "p/q" or "p" into a canonical rational. Throws ConfigError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Nearest double to an arbitrary-size rational.
double to_double(const Rational& r);

}  // namespace seedrec
