#pragma once

// Named fixtures, reproducible worked examples, and verification suites that
// check the character-theoretic identities exhaustively on small algebras.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algchar/analysis.hpp"
#include "algchar/io.hpp"

namespace algchar {

/// The 3-dimensional algebra over F_2 spanned by A = e12+e24, B = e13+e24+e34,
/// C = e14 inside u_4(2); its group is the quaternion group.
Algebra q8_algebra();

/// n in u_5(q) cut out by x12 = x45 and x23 = -x34, the subalgebra h of n where
/// additionally x23 = x34 = 0 (in n coordinates), and lambda = e*13 + e*24 + e*35
/// restricted to n. Odd q only.
struct Ut5Example {
  Algebra n;
  Subspace h;
  Vec lambda;
};
Ut5Example ut5_example(unsigned q);

/// {X in u_6(2) : x12 = x56}.
Algebra ut6_constrained();

struct NamedAlgebra {
  std::string name;
  Algebra algebra;
};

/// Algebra by name: "u<n>(<q>)", "q8", "ut5(<q>)", "ut6c".
Algebra algebra_by_name(const std::string& name);

struct SuiteOptions {
  unsigned threads = 1;
  /// Include the slower members of each family (u_4(3) and the like).
  bool slow = false;
  std::optional<Cache> cache;
  PartitionOptions partition;
};

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::uint64_t checks = 0;
  /// The first failures, sorted.
  std::vector<std::string> failures;
  Json details = Json::object();
};

/// Suites: orthonormality, regular, stabilizers, xi-structure, oracle, counts,
/// xi-bijection, span, exp-irreducibles, examples, ut13, inflation.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

struct ExperimentResult {
  std::string id;
  bool ok = true;
  std::vector<std::string> failures;
  Json report = Json::object();
};

struct ExperimentParams {
  std::size_t n = 0;  // 0 = the experiment's default
  unsigned q = 0;
};

/// q8, ut5-odd, ut13-98, ut6-tensor, sangroniz-u3q3.
std::vector<std::string> experiment_ids();
ExperimentResult run_experiment(const std::string& id, const ExperimentParams& params = {},
                                const SuiteOptions& opts = {});

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// "xi = 2*psi" style relation when a = c b for a rational c, otherwise nullopt.
std::optional<mpq_class> rational_ratio(const ClassFunction& a, const ClassFunction& b);

}  // namespace algchar
