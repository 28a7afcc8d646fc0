// Runs every verification suite and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algchar/experiments.hpp"

using namespace algchar;

namespace {

struct Criterion {
  int number;
  const char* suite;
  const char* summary;
};

const std::vector<Criterion> kCriteria = {
    {1, "orthonormality", "theta basis orthonormal; Kirillov and supercharacter inner products"},
    {2, "regular", "regular character as a weighted sum of supercharacters"},
    {3, "stabilizers", "|S|/|L| = |G lambda cap lambda G| = <chi,chi>; stabilizers match scans"},
    {4, "xi-structure", "xi formula vs pointwise induction; Xi-cell sizes and partition; regular identity"},
    {5, "oracle", "Irr certified by degree sum and class count on every fixture"},
    {6, "counts", "constituent counts and degree histograms vs the oracle"},
    {7, "xi-bijection", "induction from S-bar is a bijection onto Irr(G, xi)"},
    {8, "span", "polynomial Kirillov functions lie in span Irr(G, xi)"},
    {9, "exp-irreducibles", "exponential Kirillov functions are exactly Irr(G)"},
    {10, "examples", "quaternion and odd-q u_5 examples"},
    {11, "ut13", "u_13(2) functional: orbit size 65536 and 98 constituents"},
    {12, "inflation", "constructions commute with inflation from u_4(2)/n^3"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run over all verification suites"};
  SuiteOptions opts;
  std::vector<int> only;
  app.add_flag("--slow", opts.slow, "include the slower fixtures");
  app.add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--only", only, "run just these criterion numbers");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const Criterion& c : kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    std::string error;
    try {
      r = run_suite(c.suite, opts);
    } catch (const std::exception& e) {
      r.ok = false;
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-4s %-16s checks=%-8llu %8.1fs  %s\n", c.number, r.ok ? "PASS" : "FAIL", c.suite,
                static_cast<unsigned long long>(r.checks), secs, c.summary);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
    if (!r.ok && r.details.contains("flags"))
      for (const auto& f : r.details["flags"]) std::printf("    note: %s\n", f.get<std::string>().c_str());
    if (!r.ok) ++failed;
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
