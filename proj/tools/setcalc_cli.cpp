// setcalc: command-line front end over the C API.
//
// Exit codes: 0 accepted, 1 rejected, 2 inconclusive, 3 usage or runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "setcalc/setcalc.h"

namespace {

constexpr int kErrorExit = 3;

int report_error(sc_status s) {
  std::cerr << "setcalc: error: " << sc_status_name(s) << ": " << sc_last_error() << "\n";
  return kErrorExit;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

bool parse_point(const std::string& text, std::vector<double>& out) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      return false;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) return false;
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for subdifferentials of set-valued maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sc_version());

  std::string out_path, csv_path;
  std::uint64_t seed = 0;
  int trials = 0, grid = 0, threads = 1;
  double tol_accept = 0, tol_reject = 0, lipschitz = 0;
  auto* o_seed = app.add_option("--seed", seed, "Sampling seed (unsigned 64-bit)");
  auto* o_trials = app.add_option("--trials", trials, "Random trials for verify");
  auto* o_grid = app.add_option("--grid", grid, "Grid points per axis");
  auto* o_acc = app.add_option("--tol-accept", tol_accept, "Acceptance threshold");
  auto* o_rej = app.add_option("--tol-reject", tol_reject, "Rejection threshold");
  auto* o_lip = app.add_option("--lipschitz", lipschitz, "K-Lipschitz constant for sum-lim");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "Write the ratio curve (check-subgradient)");

  auto* check = app.add_subcommand("check-subgradient", "Test T against the Frechet subdifferential of a map");
  check->fallthrough();
  std::string check_file, map_name, candidate, point_text;
  bool upper = false;
  check->add_option("file", check_file, "Problem file")->required();
  check->add_option("--map", map_name, "Map name")->required();
  check->add_option("--candidate", candidate, "Candidate operator name")->required();
  check->add_option("--point", point_text, "Base point, comma separated (default: base_point)");
  check->add_flag("--upper", upper, "Test the upper subdifferential");

  auto* verify = app.add_subcommand("verify", "Check a calculus rule on a problem file or random instances");
  verify->fallthrough();
  std::string lemma, verify_file;
  verify->add_option("lemma", lemma, "radstrom, rez-incl, sum-conv, sum-lim, diff-rule, iscusc, scalarization")
      ->required();
  verify->add_option("file", verify_file, "Problem file (omit for the randomized suite)");

  auto* solve = app.add_subcommand("solve", "Ideal minima on the grid, optionally with penalization");
  solve->fallthrough();
  std::string solve_file;
  bool penalize = false;
  solve->add_option("file", solve_file, "Problem file")->required();
  solve->add_flag("--penalize", penalize, "Run the penalization clauses and the necessary-condition table");

  auto* goldens = app.add_subcommand("goldens", "Run the golden corpus");
  goldens->fallthrough();
  bool list = false;
  std::string store;
  goldens->add_flag("--list", list, "List the corpus instead of running it");
  goldens->add_option("--store", store, "Directory of golden files (default: the built-in corpus)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kErrorExit;
  }

  sc_options opt;
  sc_options_init(&opt);
  if (*o_seed) opt.has_seed = 1, opt.seed = seed;
  if (*o_trials) opt.has_trials = 1, opt.trials = trials;
  if (*o_grid) opt.has_grid = 1, opt.grid_points = grid;
  if (*o_acc) opt.has_tol_accept = 1, opt.tol_accept = tol_accept;
  if (*o_rej) opt.has_tol_reject = 1, opt.tol_reject = tol_reject;
  if (*o_lip) opt.has_lipschitz = 1, opt.lipschitz = lipschitz;
  opt.upper = upper ? 1 : 0;
  if (!csv_path.empty() && !check->parsed()) {
    std::cerr << "setcalc: error: --csv applies to check-subgradient only\n";
    return kErrorExit;
  }

  sc_status st = sc_set_threads(threads);
  if (st != SC_OK) return report_error(st);

  sc_problem* problem = nullptr;
  const std::string& file = check->parsed() ? check_file : verify->parsed() ? verify_file : solve_file;
  if (!goldens->parsed() && !file.empty()) {
    st = sc_problem_load(file.c_str(), &problem);
    if (st != SC_OK) return report_error(st);
  }

  sc_report* report = nullptr;
  if (check->parsed()) {
    std::vector<double> pt;
    if (!point_text.empty() && !parse_point(point_text, pt)) {
      sc_problem_free(problem);
      std::cerr << "setcalc: error: --point expects comma separated numbers, got '" << point_text << "'\n";
      return kErrorExit;
    }
    st = sc_check_subgradient(problem, map_name.c_str(), candidate.c_str(), pt.empty() ? nullptr : pt.data(),
                              pt.size(), &opt, &report);
  } else if (verify->parsed()) {
    st = sc_verify(problem, lemma.c_str(), &opt, &report);
  } else if (solve->parsed()) {
    st = sc_solve(problem, penalize ? 1 : 0, &opt, &report);
  } else {
    const char* dir = store.empty() ? nullptr : store.c_str();
    st = list ? sc_goldens_list(dir, &report) : sc_goldens_run(dir, &opt, &report);
  }
  sc_problem_free(problem);
  if (st != SC_OK) return report_error(st);

  const int code = sc_report_exit_code(report);
  bool io_ok = true;
  if (out_path.empty()) {
    std::fputs(sc_report_json(report), stdout);
  } else {
    io_ok = write_file(out_path, sc_report_json(report));
  }
  if (io_ok && !csv_path.empty()) io_ok = write_file(csv_path, sc_report_csv(report));
  sc_report_free(report);
  if (!io_ok) {
    std::cerr << "setcalc: error: cannot write output file\n";
    return kErrorExit;
  }
  return code;
}
