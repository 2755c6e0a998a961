#pragma once

// Command implementations behind the C API: every command returns a JSON
// report with a stable key order, an optional CSV curve and an exit code
// (0 accepted, 1 rejected, 2 inconclusive). Errors are thrown.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "setcalc/dsl.hpp"

namespace setcalc::app {

using Json = nlohmann::ordered_json;

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> grid;
  std::optional<double> tol_accept;
  std::optional<double> tol_reject;
  std::optional<double> lipschitz;  // sum-lim: K-Lipschitz constant of F2
  bool upper = false;               // check-subgradient: upper subgradient
};

struct Report {
  Json json;
  std::string csv;
  int exit_code = 0;
};

struct LoadedProblem {
  ProblemFile pf;
  std::string hash;  // "fnv1a64:<16 hex digits>" of the input bytes
};

std::string fnv1a64(const std::string& bytes);
LoadedProblem load_problem_text(const std::string& text);

Report check_subgradient(const LoadedProblem& p, const std::string& map, const std::optional<Point>& point,
                         const std::string& candidate, const Options& opt);
/// `p` may be null for the randomized property suites.
Report verify(const LoadedProblem* p, const std::string& lemma, const Options& opt);
Report solve(const LoadedProblem& p, bool penalize, const Options& opt);

/// Runs the golden corpus (embedded, or every *.json of `store_dir`).
Report goldens(const Options& opt, const std::optional<std::string>& store_dir);
Report goldens_list(const std::optional<std::string>& store_dir);

const std::vector<std::string>& lemma_names();
const char* version();

}  // namespace setcalc::app
