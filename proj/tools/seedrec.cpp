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

// Command-line front end: one subcommand per pipeline stage.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "seedrec/decomposition.hpp"
#include "seedrec/errors.hpp"
#include "seedrec/growth.hpp"
#include "seedrec/io.hpp"
#include "seedrec/moments.hpp"
#include "seedrec/observables.hpp"
#include "seedrec/seedtest.hpp"

namespace {

using namespace seedrec;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCap = 3;
constexpr int kExitPrecondition = 4;

const char* kFooter =
    "Exit codes:\n"
    "  0  success\n"
    "  1  other failure\n"
    "  2  configuration error (bad flags, unreadable or malformed input)\n"
    "  3  cap exceeded (enumeration or search limit)\n"
    "  4  precondition violation (inputs outside an operation's domain)\n";

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad n list entry '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("bad n list entry '" + item + "'");
    if (!out.empty() && v <= out.back())
      throw ConfigError("n list must be strictly increasing");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty n list");
  return out;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string edges_text(const Tree& t) {
  std::string s;
  for (auto [a, b] : t.edges()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(a) + '-' + std::to_string(b);
  }
  return s;
}

struct Options {
  int threads = 1;
  std::string seed, seed1, seed2, tau, tree, alpha = "1/1", n_list, out;
  std::string trajectory, model = "abstract", region = "all", prefix;
  int n = 0, k = 0;
  std::uint64_t seed_rng = 0, reps = 1000;
  bool labeled = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed recognition for alpha-PA trees"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker cap for Monte Carlo stages")
      ->check(CLI::PositiveNumber);

  auto* grow = app.add_subcommand("grow", "Grow one alpha-PA tree from a seed");
  grow->add_option("--seed", o.seed, "Seed tree file")->required()->check(CLI::ExistingFile);
  grow->add_option("--alpha", o.alpha, "Alpha as p/q");
  grow->add_option("--n", o.n, "Target size")->required();
  grow->add_option("--seed-rng", o.seed_rng, "Master RNG seed");
  grow->add_option("--model", o.model, "abstract or planar")
      ->check(CLI::IsMember({"abstract", "planar"}));
  grow->add_option("--trajectory", o.trajectory, "Write planar corner choices here");
  grow->add_option("--out", o.out, "Output file (default stdout)");

  auto* observe = app.add_subcommand("observe", "Evaluate F_tau on a tree");
  observe->add_option("--tau", o.tau, "Decorated pattern file")->required()->check(CLI::ExistingFile);
  observe->add_option("--tree", o.tree, "Host tree file")->required()->check(CLI::ExistingFile);
  observe->add_option("--region", o.region, "all, intersects, inside or outside")
      ->check(CLI::IsMember({"all", "intersects", "inside", "outside"}));
  observe->add_option("--k", o.k, "Seed size for --region");
  observe->add_option("--out", o.out, "Output file (default stdout)");

  auto* moments = app.add_subcommand("moments", "Exact E[F_tau(T_n)] as CSV");
  moments->add_option("--tau", o.tau, "Decorated pattern file")->required()->check(CLI::ExistingFile);
  moments->add_option("--seed", o.seed, "Seed tree file")->required()->check(CLI::ExistingFile);
  moments->add_option("--alpha", o.alpha, "Alpha as p/q");
  moments->add_option("--n-list", o.n_list, "Comma separated sizes")->required();
  moments->add_option("--out", o.out, "Output file (default stdout)");

  auto* exponents = app.add_subcommand("exponents", "Growth exponent of E[F_tau]");
  exponents->add_option("--tau", o.tau, "Decorated pattern file")->required()->check(CLI::ExistingFile);
  exponents->add_option("--alpha", o.alpha, "Alpha as p/q");
  exponents->add_option("--out", o.out, "Output file (default stdout)");

  auto* blind = app.add_subcommand("blind", "Blindness of a pattern for two seeds");
  blind->add_option("--seed1", o.seed1, "First seed")->required()->check(CLI::ExistingFile);
  blind->add_option("--seed2", o.seed2, "Second seed")->required()->check(CLI::ExistingFile);
  blind->add_option("--tau", o.tau, "Pattern (default: minimal non-blind)")->check(CLI::ExistingFile);
  blind->add_option("--out", o.out, "Output file (default stdout)");

  auto* dist = app.add_subcommand("distinguish", "End-to-end distinguishing report (JSON)");
  dist->add_option("--seed1", o.seed1, "First seed")->required()->check(CLI::ExistingFile);
  dist->add_option("--seed2", o.seed2, "Second seed")->required()->check(CLI::ExistingFile);
  dist->add_option("--alpha", o.alpha, "Alpha as p/q");
  dist->add_option("--n-list", o.n_list, "Comma separated sizes")->required();
  dist->add_option("--reps", o.reps, "Replicates per seed and size");
  dist->add_option("--seed-rng", o.seed_rng, "Master RNG seed");
  dist->add_option("--out", o.out, "Output file (default stdout)");

  auto* couple = app.add_subcommand("couple", "Coupled growth of two equal-size seeds");
  couple->add_option("--seed1", o.seed1, "First seed (tree or plane file)")->required()->check(CLI::ExistingFile);
  couple->add_option("--seed2", o.seed2, "Second seed (tree or plane file)")->required()->check(CLI::ExistingFile);
  couple->add_option("--alpha", o.alpha, "Alpha as p/q");
  couple->add_option("--n", o.n, "Target size")->required();
  couple->add_option("--seed-rng", o.seed_rng, "Master RNG seed");
  couple->add_option("--out-prefix", o.prefix,
                     "Writes PREFIX.first.plane, PREFIX.second.plane, PREFIX.sizes.csv")
      ->required();

  auto* oracle = app.add_subcommand("oracle", "Exact law of T_n by enumeration (CSV)");
  oracle->add_option("--seed", o.seed, "Seed tree file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--alpha", o.alpha, "Alpha as p/q");
  oracle->add_option("--n", o.n, "Target size")->required();
  oracle->add_flag("--labeled", o.labeled, "Keep labeled outcomes (no merging)");
  oracle->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const AlphaParam alpha = AlphaParam::parse(o.alpha);
    std::ostringstream os;

    if (*grow) {
      Rng rng = make_stream(o.seed_rng, 0);
      if (o.model == "planar") {
        std::vector<GrowthStep> steps;
        PlaneTree t = grow_planar(load_plane(o.seed), alpha, o.n, rng, &steps);
        write_plane(os, t);
        if (!o.trajectory.empty()) {
          std::string lines;
          for (const auto& s : steps) lines += s.str() + "\n";
          emit(o.trajectory, lines);
        }
      } else {
        if (!o.trajectory.empty())
          throw ConfigError("--trajectory needs --model planar");
        write_tree(os, grow_abstract(load_tree(o.seed), alpha, o.n, rng));
      }
    } else if (*observe) {
      DecoratedTree tau = load_decorated(o.tau);
      Tree t = load_tree(o.tree);
      if (o.region == "all") {
        os << count_F(tau, t).get_str() << "\n";
      } else {
        Region r = o.region == "inside"   ? Region::kInsideSeed
                   : o.region == "outside" ? Region::kOutsideSeed
                                           : Region::kIntersectsSeed;
        os << count_F_region(tau, t, o.k, r).get_str() << "\n";
      }
    } else if (*moments) {
      DecoratedTree tau = load_decorated(o.tau);
      auto ns = parse_n_list(o.n_list);
      auto values = exact_expectation(tau, load_tree(o.seed), alpha.exact(), ns);
      os << "n,expectation_num,expectation_den,float\n";
      for (std::size_t i = 0; i < ns.size(); ++i) {
        os << ns[i] << ',' << values[i].get_num().get_str() << ','
           << values[i].get_den().get_str() << ',' << fmt_double(to_double(values[i]))
           << "\n";
      }
    } else if (*exponents) {
      auto rep = gamma_exponent(load_decorated(o.tau), alpha.exact());
      os << "weight: " << rep.weight << "\tpower: " << to_string(rep.power)
         << "\tlog_power: " << rep.log_power
         << "\tcritical: " << (rep.critical ? "true" : "false") << "\n";
    } else if (*blind) {
      Tree s1 = load_tree(o.seed1), s2 = load_tree(o.seed2);
      Tree tau = o.tau.empty() ? minimal_nonblind(s1, s2) : load_tree(o.tau);
      auto rep = is_blind(tau, s1, s2);
      os << "is_blind: " << (rep.is_blind ? "true" : "false") << "\twitness: ";
      if (rep.witness) {
        os << "d=";
        for (std::size_t i = 0; i < rep.witness->size(); ++i)
          os << (i ? "," : "") << (*rep.witness)[i];
        os << "\tcount1: " << rep.count1.get_str()
           << "\tcount2: " << rep.count2.get_str();
      } else {
        os << "none";
      }
      os << "\ttau_size: " << tau.size() << "\ttau_edges: " << edges_text(tau) << "\n";
    } else if (*dist) {
      auto rep = distinguish(load_tree(o.seed1), load_tree(o.seed2), alpha,
                             parse_n_list(o.n_list), o.reps, o.seed_rng, o.threads);
      os << rep.to_json();
    } else if (*couple) {
      Rng rng = make_stream(o.seed_rng, 0);
      auto res = coupled_grow(load_plane(o.seed1), load_plane(o.seed2), alpha, o.n, rng);
      emit(o.prefix + ".first.plane", to_text(res.first));
      emit(o.prefix + ".second.plane", to_text(res.second));
      std::string csv = "corner,red,size\n";
      for (std::size_t c = 0; c < res.urn.sizes.size(); ++c)
        csv += std::to_string(c) + ',' + (res.urn.red[c] ? "1" : "0") + ',' +
               std::to_string(res.urn.sizes[c]) + "\n";
      emit(o.prefix + ".sizes.csv", csv);
      return kExitOk;
    } else if (*oracle) {
      auto law = enumerate_growth(load_tree(o.seed), alpha.exact(), o.n, !o.labeled);
      os << "index,probability_num,probability_den,float,edges\n";
      for (std::size_t i = 0; i < law.size(); ++i) {
        const auto& p = law[i].probability;
        os << i << ',' << p.get_num().get_str() << ',' << p.get_den().get_str()
           << ',' << fmt_double(to_double(p)) << ',' << edges_text(law[i].tree) << "\n";
      }
    }
    emit(o.out, os.str());
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
