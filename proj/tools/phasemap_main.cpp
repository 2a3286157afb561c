// Copyright 2026 The phasemap Authors
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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phasemap/commands.hpp"

namespace {

std::optional<std::string> opt_string(const std::string &s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char **argv) {
  namespace cli = phasemap::cli;
  CLI::App app{"Phase-set map analysis: factorization, positivity, cloning cases"};
  app.require_subcommand(1);

  double tol = phasemap::kDefaultTol;
  app.add_option("--tol", tol, "Comparison tolerance")->capture_default_str();

  std::string file;
  std::string out_path;
  std::string block;
  std::vector<std::size_t> entry{0, 0};
  std::size_t samples = phasemap::kDefaultGrid;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::optional<double> q;
  std::string name;

  auto *factor = app.add_subcommand("factor", "Decomposition form of one entry");
  factor->add_option("file", file, "PMAP file")->required();
  factor->add_option("--entry", entry, "Row and column index")->expected(2);
  factor->add_option("--block", block, "Block name (default lambda1)");

  auto *check = app.add_subcommand("check", "Relation, hermiticity and positivity");
  check->add_option("file", file, "PMAP file")->required();

  auto *classify = app.add_subcommand("classify", "Case label and phase dependence");
  classify->add_option("file", file, "PMAP file")->required();

  auto *profile = app.add_subcommand("profile", "Minimum-eigenvalue profile as CSV");
  profile->add_option("file", file, "PMAP file")->required();
  profile->add_option("--samples", samples, "Number of phases")->capture_default_str();
  profile->add_option("--out", out_path, "Output path (default stdout)");

  auto *search = app.add_subcommand("search", "Randomized search for counterexamples");
  search->add_option("--trials", trials, "Number of samples")->capture_default_str();
  search->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto *catalog = app.add_subcommand("catalog", "Write a built-in map as PMAP");
  catalog->add_option("name", name, "Entry name")->required();
  catalog->add_option("--q", q, "State parameter for projective-discard, phase-state");
  catalog->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitBadInput;
  }

  try {
    if (*factor) {
      return cli::command_factor(file, entry[0], entry[1], opt_string(block),
                                 std::cout, std::cerr);
    }
    if (*check) return cli::command_check(file, tol, std::cout, std::cerr);
    if (*classify) return cli::command_classify(file, tol, std::cout, std::cerr);
    if (*profile) {
      return cli::command_profile(file, samples, opt_string(out_path), tol,
                                  std::cout, std::cerr);
    }
    if (*search) return cli::command_search(trials, seed, tol, std::cout, std::cerr);
    if (*catalog) {
      return cli::command_catalog(name, q, opt_string(out_path), std::cout,
                                  std::cerr);
    }
  } catch (const phasemap::Error &e) {
    std::cerr << "error: " << phasemap::to_string(e.code()) << ": " << e.what()
              << "\n";
    return cli::kExitBadInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitBadInput;
  }
  return cli::kExitBadInput;
}
