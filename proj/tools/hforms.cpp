// hforms: command line front end.
//
// Exit codes: 0 all clear, 1 usage or parse error, 2 refuted/obstructed,
// 3 inconclusive.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hforms/catalog_io.hpp"
#include "hforms/hodge_riemann.hpp"
#include "hforms/iwasawa_c.hpp"
#include "hforms/obstructions.hpp"

using namespace hforms;

namespace {

struct Globals {
  std::uint64_t seed = 20240601;
  int budget = 64;
  std::string out;
  bool json_out = false;
  bool timing = false;
};

json envelope(json body) {
  body["schema"] = 1;
  body["engine"] = kEngineVersion;
  return body;
}

void emit(const Globals& g, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (!g.out.empty()) {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::Domain, "cannot write " + g.out);
    f << text;
  }
  if (g.json_out) std::cout << text;
}

int exit_for(Status s) {
  switch (s) {
    case Status::Proven:
      return 0;
    case Status::Refuted:
      return 2;
    default:
      return 3;
  }
}

void print_report(const Report& r) {
  std::cout << "algebra " << r.algebra << " n=" << r.n << " hash " << r.hash << "\n";
  for (const auto& c : r.checks) std::cout << "  " << c.name << ": " << c.status << "  " << c.detail << "\n";
  std::cout << "conclusion: " << to_string(r.conclusion.status) << "  " << r.conclusion.detail << "\n";
}

SuiteConfig suite_config(const Globals& g) {
  SuiteConfig c;
  c.seed = g.seed;
  c.budget = g.budget;
  c.timing = g.timing;
  return c;
}

int run_report(const Globals& g, const ComplexLieAlgebra& alg, SuiteConfig cfg) {
  Report r = run_suite(alg, cfg);
  if (!g.json_out) print_report(r);
  emit(g, r.to_json());
  return r.exit_code();
}

int cmd_validate(const Globals& g, const std::string& file) {
  AlgebraFile f = read_algebra_file(file);
  auto alg = f.to_algebra();
  Verdict v = alg.validate();
  if (!g.json_out) {
    std::cout << "algebra " << alg.name() << " n=" << alg.dim() << ": " << to_string(v.status) << "  " << v.detail << "\n";
    for (const auto& d : f.diagnostics) std::cout << "  " << d << "\n";
  }
  emit(g, envelope({{"algebra", {{"name", alg.name()}, {"n", alg.dim()}, {"hash", algebra_hash(alg)}}},
                    {"validate", v.to_json()},
                    {"diagnostics", f.diagnostics}}));
  return exit_for(v.status);
}

int cmd_obstruct(const Globals& g, const std::string& file, const std::string& mode_name, int p) {
  auto alg = read_algebra_file(file).to_algebra();
  Verdict valid = alg.validate();
  if (!valid.is_proven()) {
    std::cerr << "invalid structure equations: " << valid.detail << "\n";
    return 2;
  }
  ConeMode mode = cone_mode_from_string(mode_name);
  if (p < 0) p = alg.dim() - 2;
  std::optional<RForm> F;
  if (mode == ConeMode::PrimitivePSD_hrt) F = standard_kahler(alg.dim());
  ConeSearchConfig cfg{g.budget, 500, g.seed};
  auto r = cone_image_search(alg, mode, p, F, cfg);
  if (!g.json_out) {
    std::cout << "cone search " << to_string(mode) << " p=" << p << ": " << to_string(r.verdict.status) << "  "
              << r.verdict.detail << "\n";
    if (r.witness) std::cout << "  gamma = " << r.witness->gamma.str() << "\n  image = " << r.witness->image.str() << "\n";
  }
  emit(g, envelope({{"algebra", {{"name", alg.name()}, {"n", alg.dim()}, {"hash", algebra_hash(alg)}}},
                    {"mode", to_string(mode)},
                    {"p", p},
                    {"config", {{"seed", g.seed}, {"budget", g.budget}}},
                    {"result", r.to_json()}}));
  return exit_for(r.verdict.status);
}

int cmd_iwasawa(const Globals& g, int samples) {
  auto rep = verify_all(samples, g.seed);
  if (!g.json_out) {
    for (const auto& c : rep.checks) {
      std::cout << (c.passed ? "ok    " : "FAIL  ") << c.name << "  " << c.detail;
      if (!c.passed) std::cout << "  [" << c.identity << "]";
      std::cout << "\n";
    }
    std::cout << "coefficients depend on U: " << (rep.depends_on_U ? "yes" : "no") << "\n";
    std::cout << "invariant core rejected: " << (rep.core_rejected ? "yes" : "no") << "\n";
  }
  emit(g, envelope({{"iwasawa_c", rep.to_json()}}));
  return rep.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge-Riemann balanced structures on Lie algebras with complex structure"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized searches and sampling");
  app.add_option("--budget", g.budget, "cone search restarts")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write the JSON report to this path");
  app.add_flag("--json", g.json_out, "print the JSON report instead of text");
  app.add_flag("--timing", g.timing, "include per-check timings in reports");

  std::string file;
  auto* validate = app.add_subcommand("validate", "parse and validate an algebra file");
  validate->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "run the check suite on an algebra file");
  check->add_option("file", file)->required();
  bool all = false;
  std::vector<std::string> selected;
  check->add_flag("--all", all, "run every check (default)");
  check->add_option("--check", selected, "run only the named checks")->check(CLI::IsMember(suite_checks()));

  auto* cat = app.add_subcommand("catalog", "list or run the built-in algebras");
  std::vector<std::string> cat_args;
  cat->add_option("action", cat_args, "list | run <name>");

  auto* iw = app.add_subcommand("iwasawa-c", "verify the Hodge-Riemann balanced structure on Iwasawa x C");
  int samples = 32;
  iw->add_option("--samples", samples, "numeric sample points")->check(CLI::NonNegativeNumber);

  auto* obs = app.add_subcommand("obstruct", "search the image of d in a positive cone");
  std::string mode = "pk";
  int p = -1;
  obs->add_option("file", file)->required();
  obs->add_option("--mode", mode, "pk | cpd | hrt")->check(CLI::IsMember({"pk", "cpd", "hrt"}));
  obs->add_option("--p", p, "degree p of the (p,p)-forms (default n-2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(g, file);
    if (*check) {
      if (all && !selected.empty()) {
        std::cerr << "--all and --check are exclusive\n";
        return 1;
      }
      SuiteConfig cfg = suite_config(g);
      cfg.checks = selected;
      return run_report(g, read_algebra_file(file).to_algebra(), cfg);
    }
    if (*cat) {
      if (cat_args.empty() || (cat_args.size() == 1 && cat_args[0] == "list")) {
        for (const auto& e : catalog()) std::cout << e.name << "  n=" << e.algebra.dim() << "  " << e.description << "\n";
        return 0;
      }
      if (cat_args.size() == 2 && cat_args[0] == "run") return run_report(g, catalog_entry(cat_args[1]).algebra, suite_config(g));
      if (cat_args.size() == 2 && cat_args[0] == "print") {
        std::cout << print_algebra(catalog_entry(cat_args[1]).algebra);
        return 0;
      }
      std::cerr << "usage: hforms catalog [list | run <name> | print <name>]\n";
      return 1;
    }
    if (*iw) return cmd_iwasawa(g, samples);
    if (*obs) return cmd_obstruct(g, file, mode, p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Parse || e.code() == ErrorCode::Domain ? 1 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
