#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shtrim/share_abs.hpp"
#include "shtrim/term.hpp"

namespace shtrim {

struct SelftestOptions {
  std::string corpus_dir = "corpus";
  /// Deliberately corrupts one operation inside the check harness so the
  /// harness itself can be tested: "extend" or "amgu".
  std::string mutate;
  /// Smaller enumerations (|domain| <= 3) for fast unit-test runs.
  bool quick = false;
};

struct SelftestReport {
  bool ok = true;
  uint64_t checks = 0;
  std::vector<std::string> failures;  // verbatim failing instances
  std::string summary() const;
};

/// Full self-check: amgu against the naive reference, clique commutation,
/// trim-vs-classic equality over the bundled corpus, golden trace bytes.
SelftestReport run_selftest(const SelftestOptions& options);

/// Exhaustive amgu == amgu_reference sweep: every abstraction over
/// max_domain variables (<= 4), every bound variable, and a term family
/// of depth <= 2 covering every variable subset with several shapes.
/// Returns mismatch descriptions (empty = pass) and counts checks.
std::vector<std::string> amgu_oracle_sweep(int max_domain, uint64_t& checks);

/// Clique commutation sweep: decompress(op_c(compress(a))) == op_plain(a)
/// for every implemented operation; unary ops exhaustive up to max_domain,
/// binary ops exhaustive up to 3 variables plus deterministic samples at 4.
std::vector<std::string> clique_commutation_sweep(int max_domain, uint64_t& checks);

/// Term family used by the oracle sweeps (exposed for tests).
std::vector<Term> term_family(const VarList& vars);

}  // namespace shtrim
