// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: one PASS/FAIL line per acceptance criterion.
// Usage: tubelab_acceptance <config.json> [work-dir]
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tubelab/cli.hpp"
#include "tubelab/config.hpp"
#include "tubelab/report.hpp"

using namespace tubelab;
namespace fs = std::filesystem;

namespace {

struct Run {
  std::vector<Report> reports;
  double seconds = 0.0;
};

Run timed(const std::string& name, const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.reports = run_subcommand(name, cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

const Criterion* find(const Run& run, const std::string& name) {
  for (const Report& rep : run.reports)
    for (const Criterion& c : rep.criteria)
      if (c.name == name) return &c;
  return nullptr;
}

struct Line {
  bool pass = true;
  std::ostringstream detail;

  void need(const Run& run, const std::string& name) {
    const Criterion* c = find(run, name);
    if (!c) {
      pass = false;
      detail << " " << name << "=missing";
      return;
    }
    pass = pass && c->pass;
    detail << " " << name << "=" << c->value << (c->pass ? "" : "(fail)");
  }

  void time_limit(const Run& run, double limit) {
    bool ok = run.seconds < limit;
    pass = pass && ok;
    detail << " runtime=" << run.seconds << "s/<" << limit << "s" << (ok ? "" : "(fail)");
  }
};

int g_failed = 0;

void emit(int index, const std::string& title, Line& line) {
  if (!line.pass) ++g_failed;
  std::printf("[%s] criterion %d %s:%s\n", line.pass ? "PASS" : "FAIL", index, title.c_str(),
              line.detail.str().c_str());
  std::fflush(stdout);
}

std::map<std::string, std::string> csv_files(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), root).generic_string()] = ss.str();
  }
  return out;
}

int cli(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: tubelab_acceptance <config.json> [work-dir]\n";
    return 2;
  }
  const std::string cfg_path = argv[1];
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "tubelab_acceptance";
  RunConfig cfg = load_config(cfg_path);

  Run sym = timed("symplectic-check", cfg);
  Run gauss = timed("gaussian-check", cfg);
  Run scaling = timed("scaling", cfg);
  Run rapid = timed("rapid-decay", cfg);
  Run qsym = timed("qsymbol", cfg);
  Run weyl = timed("weyl", cfg);
  Run husimi = timed("husimi", cfg);

  {
    Line l;
    for (const char* n : {"reassembly", "p_expansion", "psi_identity", "property_passes"}) l.need(sym, n);
    l.time_limit(sym, 5.0);
    emit(1, "symplectic identities", l);
  }
  {
    Line l;
    l.need(gauss, "engine_vs_quadrature");
    l.need(gauss, "a_chi_unitary");
    l.time_limit(gauss, 30.0);
    emit(2, "Gaussian engine", l);
  }
  {
    Line l;
    l.need(sym, "reproducing_identity");
    l.time_limit(sym, 30.0);
    emit(3, "metaplectic reproducing identity", l);
  }
  {
    Line l;
    for (const char* n : {"diag_z3/diagonal_ratio", "diag_z3/diagonal_monotone", "diag_z3/diagonal_residual_order"})
      l.need(scaling, n);
    l.time_limit(scaling, 120.0);
    emit(4, "diagonal scaling law", l);
  }
  {
    Line l;
    l.need(scaling, "transverse_s1/transverse_slope");
    emit(5, "transverse Gaussian decay", l);
  }
  {
    Line l;
    l.need(scaling, "near_graph_shear/near_graph_ratio");
    emit(6, "near-graph shear", l);
  }
  {
    Line l;
    for (const char* n : {"off_locus_order", "on_locus_order", "order_trend", "resolved_above_truncation"})
      l.need(rapid, n);
    emit(7, "rapid decay", l);
  }
  {
    Line l;
    l.need(qsym, "normalized_at_top");
    l.need(qsym, "monotone");
    emit(8, "Q symbol", l);
  }
  {
    Line l;
    l.need(weyl, "exponent");
    l.need(weyl, "coefficient_ratio");
    l.time_limit(weyl, 300.0);
    emit(9, "Poisson Weyl law", l);
  }
  {
    Line l;
    l.need(husimi, "d2_dg0/sup_exponent");
    l.need(husimi, "d2_dg1/sup_exponent");
    emit(10, "Husimi sup exponent", l);
  }
  {
    Line l;
    fs::remove_all(work);
    const fs::path a = work / "run_a", b = work / "run_b";
    int ca = cli({"tubelab", "all", cfg_path, "-o", a.string(), "-q"});
    int cb = cli({"tubelab", "all", cfg_path, "-o", b.string(), "-q"});
    auto fa = csv_files(a), fb = csv_files(b);
    bool same = !fa.empty() && fa == fb && ca == cb && (ca == kExitOk || ca == kExitCriterion);
    l.pass = same;
    l.detail << " csv_files=" << fa.size() << " identical=" << (fa == fb ? "yes" : "no") << " exit=" << ca << "/"
             << cb;
    emit(11, "determinism", l);
  }

  std::printf("%d of 11 acceptance criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
