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

#include <iosfwd>
#include <string>

#include "seedrec/tree.hpp"

namespace seedrec {

// Text formats (ASCII, LF line endings):
//
//   tree:       "n" then n-1 lines "u v"
//   decorated:  tree block, then "ell: x0 x1 ... x(n-1)"
//   plane:      tree block, then for every vertex "order v: a b c ..." and
//               "red v: i"
//
// Readers throw ConfigError on malformed input. Writers emit exactly what
// the readers accept, so files round-trip byte for byte.

Tree read_tree(std::istream& in);
DecoratedTree read_decorated(std::istream& in);
PlaneTree read_plane(std::istream& in);

void write_tree(std::ostream& out, const Tree& t);
void write_decorated(std::ostream& out, const DecoratedTree& t);
void write_plane(std::ostream& out, const PlaneTree& t);

std::string to_text(const Tree& t);
std::string to_text(const DecoratedTree& t);
std::string to_text(const PlaneTree& t);

Tree load_tree(const std::string& path);
/// Accepts plain tree files too (all decorations 0).
DecoratedTree load_decorated(const std::string& path);
/// Accepts plain tree files too (default embedding from PlaneTree::from_tree).
PlaneTree load_plane(const std::string& path);

}  // namespace seedrec
