#pragma once

// Algebra files, the built-in catalog, and the check suite with its JSON
// report.
//
//   # comment
//   algebra iwasawa n=3
//   meta source heisenberg
//   d a3 = -a1^a2
//   d a2 = (0+1i) a1^~a1
//
// Indices missing a `d` line have d a<j> = 0.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hforms/lie_complex.hpp"
#include "hforms/obstructions.hpp"

namespace hforms {

extern const char* const kEngineVersion;

struct Equation {
  int index = 0;
  RForm rhs;
  int line = 0;
};

struct AlgebraFile {
  std::string name;
  int n = 0;
  std::vector<Equation> equations;
  std::map<std::string, std::string> metadata;
  /// non-fatal input problems (vanishing monomials); they make validate() fail
  std::vector<std::string> diagnostics;

  ComplexLieAlgebra to_algebra() const;
};

/// Throws Error(Parse) with "line L, column C: ..." on syntax errors,
/// duplicate definitions and out-of-range indices.
AlgebraFile parse_algebra(const std::string& text);
AlgebraFile read_algebra_file(const std::string& path);

std::string print_algebra(const ComplexLieAlgebra& g, const std::map<std::string, std::string>& metadata = {});
/// Right-hand side in file syntax, "0" for zero.
std::string print_expression(const RForm& rhs);

/// FNV-1a 64 of the printed algebra, as 16 hex digits.
std::string algebra_hash(const ComplexLieAlgebra& g);

struct CatalogEntry {
  std::string name;
  std::string description;
  ComplexLieAlgebra algebra;
};

const std::vector<CatalogEntry>& catalog();
/// Throws Error(Domain) for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

/// Parameters when g is literally a member of the abelian-ideal family.
std::optional<CseabidParams> match_cseabid(const ComplexLieAlgebra& g);

/// Check names in suite order.
const std::vector<std::string>& suite_checks();

struct SuiteConfig {
  std::vector<std::string> checks;  // empty: all
  std::uint64_t seed = 20240601;
  int budget = 64;  // cone search restarts
  int iterations = 500;
  bool timing = false;
  bool parallel = true;
};

struct CheckOutcome {
  std::string name;
  /// "proven", "refuted", "inconclusive", "skipped" or "error"
  std::string status;
  std::string detail;
  json evidence = json::object();
  double seconds = 0;
};

struct Report {
  std::string algebra;
  std::string hash;
  int n = 0;
  std::vector<CheckOutcome> checks;
  /// summary on Hodge-Riemann balanced structures with invariant F
  Verdict conclusion;
  SuiteConfig config;
  json extra = json::object();

  const CheckOutcome* find(const std::string& name) const;
  json to_json() const;
  /// 0 clear, 2 refuted or obstructed, 3 inconclusive
  int exit_code() const;
};

/// Never throws for a failing check; unknown check names throw Error(Domain).
Report run_suite(const ComplexLieAlgebra& g, const SuiteConfig& config = {});

}  // namespace hforms
