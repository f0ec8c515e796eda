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

#include "seedrec/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "seedrec/errors.hpp"

namespace seedrec {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::string require_line(const char* what) {
    std::string line;
    if (!next(line)) fail(std::string("unexpected end of input, expected ") + what);
    return line;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("line " + std::to_string(lineno_) + ": " + msg);
  }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

std::vector<long> parse_ints(const std::string& text, const LineReader& r) {
  std::istringstream ss(text);
  std::vector<long> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      r.fail("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) r.fail("not an integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

// Splits "key v: rest" style prefixes; returns rest.
std::string after_prefix(const std::string& line, const std::string& key,
                         long* index, const LineReader& r) {
  if (line.rfind(key, 0) != 0) r.fail("expected '" + key + "'");
  auto colon = line.find(':');
  if (colon == std::string::npos) r.fail("missing ':'");
  std::string head = line.substr(key.size(), colon - key.size());
  if (index != nullptr) {
    auto v = parse_ints(head, r);
    if (v.size() != 1) r.fail("expected one vertex id before ':'");
    *index = v[0];
  } else if (head.find_first_not_of(' ') != std::string::npos) {
    r.fail("unexpected text before ':'");
  }
  return line.substr(colon + 1);
}

Tree read_tree_block(LineReader& r) {
  auto head = parse_ints(r.require_line("vertex count"), r);
  if (head.size() != 1 || head[0] < 1) r.fail("expected a positive vertex count");
  const int n = static_cast<int>(head[0]);
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    auto e = parse_ints(r.require_line("edge"), r);
    if (e.size() != 2) r.fail("edge line needs two ids");
    edges.emplace_back(static_cast<int>(e[0]), static_cast<int>(e[1]));
  }
  try {
    return Tree(n, std::move(edges));
  } catch (const PreconditionError& e) {
    r.fail(e.what());
  }
}

std::vector<int> read_ell(LineReader& r, const std::string& line, int n) {
  auto v = parse_ints(after_prefix(line, "ell", nullptr, r), r);
  if (static_cast<int>(v.size()) != n) r.fail("ell needs one value per vertex");
  std::vector<int> ell;
  for (long x : v) {
    if (x < 0) r.fail("decorations must be non-negative");
    ell.push_back(static_cast<int>(x));
  }
  return ell;
}

PlaneTree read_plane_rest(LineReader& r, const Tree& t) {
  const int n = t.size();
  PlaneTree p;
  p.order.assign(n, {});
  p.red.assign(n, -2);
  std::vector<char> have_order(n, 0);
  for (int i = 0; i < 2 * n; ++i) {
    std::string line = r.require_line("order/red line");
    long v = -1;
    if (line.rfind("order", 0) == 0) {
      auto rest = after_prefix(line, "order", &v, r);
      if (v < 0 || v >= n || have_order[v]) r.fail("bad or repeated order line");
      for (long w : parse_ints(rest, r)) p.order[v].push_back(static_cast<int>(w));
      have_order[v] = 1;
    } else {
      auto rest = after_prefix(line, "red", &v, r);
      if (v < 0 || v >= n || p.red[v] != -2) r.fail("bad or repeated red line");
      auto x = parse_ints(rest, r);
      if (x.size() != 1) r.fail("red line needs one corner index");
      p.red[v] = static_cast<int>(x[0]);
    }
  }
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    r.fail(e.what());
  }
  if (!(p.to_tree() == t)) r.fail("cyclic orders disagree with the edge list");
  return p;
}

void expect_end(LineReader& r) {
  std::string extra;
  if (r.next(extra)) r.fail("trailing content: '" + extra + "'");
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

}  // namespace

Tree read_tree(std::istream& in) {
  LineReader r(in);
  Tree t = read_tree_block(r);
  expect_end(r);
  return t;
}

DecoratedTree read_decorated(std::istream& in) {
  LineReader r(in);
  Tree t = read_tree_block(r);
  auto ell = read_ell(r, r.require_line("ell line"), t.size());
  expect_end(r);
  return DecoratedTree(std::move(t), std::move(ell));
}

PlaneTree read_plane(std::istream& in) {
  LineReader r(in);
  Tree t = read_tree_block(r);
  PlaneTree p = read_plane_rest(r, t);
  expect_end(r);
  return p;
}

void write_tree(std::ostream& out, const Tree& t) {
  out << t.size() << '\n';
  for (const auto& [u, v] : t.edges()) out << u << ' ' << v << '\n';
}

void write_decorated(std::ostream& out, const DecoratedTree& t) {
  write_tree(out, t.tree);
  out << "ell:";
  for (int x : t.ell) out << ' ' << x;
  out << '\n';
}

void write_plane(std::ostream& out, const PlaneTree& t) {
  write_tree(out, t.to_tree());
  for (Vertex v = 0; v < t.size(); ++v) {
    out << "order " << v << ':';
    for (Vertex w : t.order[v]) out << ' ' << w;
    out << '\n';
    out << "red " << v << ": " << t.red[v] << '\n';
  }
}

std::string to_text(const Tree& t) {
  std::ostringstream s;
  write_tree(s, t);
  return s.str();
}

std::string to_text(const DecoratedTree& t) {
  std::ostringstream s;
  write_decorated(s, t);
  return s.str();
}

std::string to_text(const PlaneTree& t) {
  std::ostringstream s;
  write_plane(s, t);
  return s.str();
}

Tree load_tree(const std::string& path) {
  auto in = open(path);
  return read_tree(in);
}

DecoratedTree load_decorated(const std::string& path) {
  auto in = open(path);
  LineReader r(in);
  Tree t = read_tree_block(r);
  std::string line;
  if (!r.next(line)) return DecoratedTree(std::move(t));
  auto ell = read_ell(r, line, t.size());
  expect_end(r);
  return DecoratedTree(std::move(t), std::move(ell));
}

PlaneTree load_plane(const std::string& path) {
  auto in = open(path);
  LineReader r(in);
  Tree t = read_tree_block(r);
  std::string line;
  if (!r.next(line)) return PlaneTree::from_tree(t);
  // Push the peeked line back by re-parsing from a buffer.
  std::ostringstream rest;
  rest << line << '\n' << in.rdbuf();
  std::istringstream again(rest.str());
  LineReader r2(again);
  PlaneTree p = read_plane_rest(r2, t);
  expect_end(r2);
  return p;
}

}  // namespace seedrec
