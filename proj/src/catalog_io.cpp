#include "hforms/catalog_io.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "hforms/hodge_riemann.hpp"

namespace hforms {

const char* const kEngineVersion = "hforms 0.1.0";

namespace {

constexpr int kMaxDim = 16;

[[noreturn]] void parse_fail(int line, std::size_t col, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// One line of an algebra file, comment already removed. Columns are 1-based.
class LineScanner {
 public:
  LineScanner(int line, std::string s) : line_(line), s_(std::move(s)) {}

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::size_t col() const { return pos_ + 1; }
  [[noreturn]] void fail(const std::string& msg) const { parse_fail(line_, col(), msg); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& msg) const { parse_fail(line_, col, msg); }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  std::string word() {
    skip();
    std::string w;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+')
        w += get();
      else
        break;
    }
    return w;
  }
  long integer() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d += get();
    if (d.size() > 6) fail("integer too large");
    return std::stol(d);
  }
  std::string rest() {
    skip();
    std::string r = s_.substr(pos_);
    while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
    pos_ = s_.size();
    return r;
  }

  Rational rational() {
    bool neg = false;
    skip();
    if (peek() == '-' || peek() == '+') {
      neg = get() == '-';
      skip();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digit");
    std::string num;
    while (std::isdigit(static_cast<unsigned char>(peek()))) num += get();
    Rational r{mpz_class(num)};
    if (peek() == '/') {
      get();
      std::size_t c = col();
      std::string den;
      while (std::isdigit(static_cast<unsigned char>(peek()))) den += get();
      if (den.empty()) fail("expected denominator");
      if (mpz_class(den) == 0) fail_at(c, "zero denominator");
      r /= Rational(mpz_class(den));
    }
    return neg ? Rational(-r) : r;
  }

  // p/q or (p/q) or (p/q+r/s i)
  GaussRational scalar() {
    skip();
    if (peek() != '(') return GaussRational(rational());
    get();
    Rational re = rational();
    skip();
    if (peek() == ')') {
      get();
      return GaussRational(re);
    }
    if (peek() != '+' && peek() != '-') fail("expected '+' or '-' in complex literal");
    bool neg = get() == '-';
    skip();
    Rational im = rational();
    skip();
    if (peek() != 'i') fail("expected 'i'");
    get();
    expect(')');
    return GaussRational(re, neg ? Rational(-im) : im);
  }

  // a<j> or ~a<j>; returns 0-based frame slot (hol j-1, anti n+j-1)
  int factor(int n) {
    skip();
    bool bar = false;
    if (peek() == '~') {
      get();
      bar = true;
      skip();
    }
    if (peek() != 'a') fail("expected coframe element 'a<j>'");
    get();
    std::size_t c = col();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected index after 'a'");
    long j = integer();
    if (j < 1 || j > n) fail_at(c, "index " + std::to_string(j) + " out of range 1.." + std::to_string(n));
    return bar ? n + static_cast<int>(j) - 1 : static_cast<int>(j) - 1;
  }

 private:
  int line_;
  std::string s_;
  std::size_t pos_ = 0;
};

RForm frame_form(int n, int slot) {
  return slot < n ? holo(n, slot + 1) : antiholo(n, slot - n + 1);
}

std::string factor_text(int n, int slot) {
  return slot < n ? "a" + std::to_string(slot + 1) : "~a" + std::to_string(slot - n + 1);
}

RForm parse_expression(LineScanner& sc, int n, int line, std::vector<std::string>& diagnostics) {
  RForm rhs(n);
  sc.skip();
  if (sc.peek() == '0') {
    // a bare 0 right-hand side
    LineScanner probe = sc;
    probe.get();
    if (probe.done()) {
      sc = probe;
      return rhs;
    }
  }
  bool first = true;
  while (!sc.done()) {
    std::size_t term_col = sc.col();
    int sign = 1;
    if (sc.peek() == '+' || sc.peek() == '-') {
      sign = sc.get() == '-' ? -1 : 1;
      sc.skip();
    } else if (!first) {
      sc.fail("expected '+' or '-'");
    }
    first = false;
    GaussRational c(1);
    char p = sc.peek();
    if (p == '(' || std::isdigit(static_cast<unsigned char>(p))) {
      c = sc.scalar();
      sc.skip();
      if (sc.peek() == '*') sc.get();
      sc.skip();
    }
    if (sc.peek() != 'a' && sc.peek() != '~') sc.fail("expected monomial");
    std::vector<int> slots{sc.factor(n)};
    sc.skip();
    while (sc.peek() == '^') {
      sc.get();
      slots.push_back(sc.factor(n));
      sc.skip();
    }
    if (slots.size() != 2) sc.fail_at(term_col, "monomial of degree " + std::to_string(slots.size()) + ", expected 2");
    RForm m = wedge(frame_form(n, slots[0]), frame_form(n, slots[1]));
    if (m.is_zero()) {
      diagnostics.push_back("line " + std::to_string(line) + ", column " + std::to_string(term_col) + ": monomial " +
                            factor_text(n, slots[0]) + "^" + factor_text(n, slots[1]) + " vanishes");
      continue;
    }
    rhs += m * (sign < 0 ? -c : c);
  }
  if (first) sc.fail("empty right-hand side");
  return rhs;
}

}  // namespace

ComplexLieAlgebra AlgebraFile::to_algebra() const {
  std::vector<RForm> d(n, RForm(n));
  for (const auto& e : equations) d[e.index - 1] = e.rhs;
  return ComplexLieAlgebra(name, n, std::move(d), diagnostics);
}

AlgebraFile parse_algebra(const std::string& text) {
  AlgebraFile f;
  bool have_header = false;
  std::set<int> defined;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    LineScanner sc(line, raw);
    if (sc.done()) continue;
    std::size_t kw_col = sc.col();
    std::string kw = sc.word();
    if (kw == "algebra") {
      if (have_header) sc.fail_at(kw_col, "duplicate header");
      f.name = sc.word();
      if (f.name.empty()) sc.fail("expected algebra name");
      sc.skip();
      if (sc.peek() != 'n') sc.fail("expected 'n=<int>'");
      sc.get();
      sc.expect('=');
      sc.skip();
      std::size_t c = sc.col();
      long n = sc.integer();
      if (n < 1 || n > kMaxDim) sc.fail_at(c, "dimension must be in 1.." + std::to_string(kMaxDim));
      f.n = static_cast<int>(n);
      if (!sc.done()) sc.fail("unexpected text after header");
      have_header = true;
    } else if (kw == "meta") {
      if (!have_header) sc.fail_at(kw_col, "'meta' before 'algebra' header");
      std::string key = sc.word();
      if (key.empty()) sc.fail("expected metadata key");
      if (f.metadata.count(key)) sc.fail_at(kw_col, "duplicate metadata key '" + key + "'");
      f.metadata[key] = sc.rest();
    } else if (kw == "d") {
      if (!have_header) sc.fail_at(kw_col, "equation before 'algebra' header");
      sc.skip();
      std::size_t c = sc.col();
      if (sc.peek() == '~') sc.fail("left-hand side must be a (1,0) coframe element");
      int slot = sc.factor(f.n);
      int j = slot + 1;
      if (!defined.insert(j).second) sc.fail_at(c, "duplicate definition of d a" + std::to_string(j));
      sc.expect('=');
      RForm rhs = parse_expression(sc, f.n, line, f.diagnostics);
      f.equations.push_back({j, std::move(rhs), line});
    } else if (kw.empty()) {
      sc.fail("unexpected character");
    } else {
      sc.fail_at(kw_col, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_header) parse_fail(line == 0 ? 1 : line, 1, "missing 'algebra <name> n=<int>' header");
  return f;
}

AlgebraFile read_algebra_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string print_expression(const RForm& rhs) {
  if (rhs.is_zero()) return "0";
  const int n = rhs.dim();
  std::string out;
  bool first = true;
  for (const auto& [key, c] : rhs.terms()) {
    std::vector<std::string> f;
    for (int i : mask_indices(key.hol)) f.push_back(factor_text(n, i - 1));
    for (int j : mask_indices(key.anti)) f.push_back(factor_text(n, n + j - 1));
    if (f.size() != 2) throw Error(ErrorCode::Domain, "print_expression: expected a 2-form");
    std::string mono = f[0] + "^" + f[1];
    bool neg = c.is_real() && sgn(c.re()) < 0;
    GaussRational shown = neg ? -c : c;
    std::string coef = shown == GaussRational(1) ? "" : shown.str() + " ";
    if (first)
      out += (neg ? "-" : "") + coef + mono;
    else
      out += std::string(neg ? " - " : " + ") + coef + mono;
    first = false;
  }
  return out;
}

std::string print_algebra(const ComplexLieAlgebra& g, const std::map<std::string, std::string>& metadata) {
  std::string out = "algebra " + g.name() + " n=" + std::to_string(g.dim()) + "\n";
  for (const auto& [k, v] : metadata) out += "meta " + k + " " + v + "\n";
  for (int j = 1; j <= g.dim(); ++j) out += "d a" + std::to_string(j) + " = " + print_expression(g.d_alpha(j)) + "\n";
  return out;
}

std::string algebra_hash(const ComplexLieAlgebra& g) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : print_algebra(g)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// catalog

namespace {

RForm mono(int n, std::vector<int> h, std::vector<int> a, GaussRational c = 1) {
  return RForm::from_indices(n, h, a, c);
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  for (int n = 2; n <= 5; ++n) {
    std::string name = "torus" + std::to_string(n);
    c.push_back({name, "abelian, complex dimension " + std::to_string(n),
                 ComplexLieAlgebra(name, n, std::vector<RForm>(n, RForm(n)))});
  }
  c.push_back({"iwasawa", "complex Heisenberg group, d a3 = -a1^a2",
               ComplexLieAlgebra("iwasawa", 3, {RForm(3), RForm(3), -mono(3, {1, 2}, {})})});
  c.push_back({"iwasawa_x_c", "Iwasawa times C, invariant core of the non-invariant example",
               ComplexLieAlgebra("iwasawa_x_c", 4, {RForm(4), RForm(4), -mono(4, {1, 2}, {}), RForm(4)})});
  c.push_back({"cseabid_kahler", "abelian-ideal family at v = 0, lambda = (0,1,1)",
               cseabid({{0, 0, 0}, {0, 1, 1}}, "cseabid_kahler")});
  c.push_back({"cseabid_obstructed", "abelian-ideal family at v = (0,1), lambda = (1,0)",
               cseabid({{0, 1}, {1, 0}}, "cseabid_obstructed")});
  c.push_back({"commutator_not_j", "solvable, [g,g] not J-invariant",
               ComplexLieAlgebra("commutator_not_j", 3,
                                 {mono(3, {2}, {2}, GaussRational::i()), RForm(3), mono(3, {1, 2}, {})})});
  c.push_back({"abelian_j", "nilpotent with abelian complex structure, d a3 = i a1^~a1",
               ComplexLieAlgebra("abelian_j", 3, {RForm(3), RForm(3), mono(3, {1}, {1}, GaussRational::i())})});
  c.push_back({"two_step", "complex parallelizable, d a3 = a1^a2, d a4 = a1^a3",
               ComplexLieAlgebra("two_step", 4, {RForm(4), RForm(4), mono(4, {1, 2}, {}), mono(4, {1, 3}, {})})});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw Error(ErrorCode::Domain, "unknown catalog entry '" + name + "'");
}

std::optional<CseabidParams> match_cseabid(const ComplexLieAlgebra& g) {
  const int n = g.dim();
  if (n < 2 || !g.d_alpha(1).is_zero()) return std::nullopt;
  CseabidParams p;
  for (int j = 2; j <= n; ++j) {
    const RForm& d = g.d_alpha(j);
    p.v.push_back(d.coefficient(mono(n, {1}, {1}).terms().begin()->first));
    p.lambda.push_back(-d.coefficient(mono(n, {j}, {1}).terms().begin()->first));
  }
  ComplexLieAlgebra c = cseabid(p);
  for (int j = 1; j <= n; ++j)
    if (c.d_alpha(j) != g.d_alpha(j)) return std::nullopt;
  return p;
}

// ---------------------------------------------------------------------------
// suite

const std::vector<std::string>& suite_checks() {
  static const std::vector<std::string> names = {
      "validate",     "unimodular", "abelian_j", "commutator_j", "nilpotent", "complex_parallelizable",
      "scan_oneform", "cone_pk",    "cone_cpd",  "cone_hrt",     "cseabid",   "hr_grid"};
  return names;
}

namespace {

const std::set<std::string> kObstructionChecks = {"nilpotent", "complex_parallelizable", "scan_oneform", "cseabid"};
const std::set<std::string> kExistenceChecks = {"hr_grid", "cseabid"};

std::string status_name(Status s) {
  switch (s) {
    case Status::Proven:
      return "proven";
    case Status::Refuted:
      return "refuted";
    default:
      return "inconclusive";
  }
}

CheckOutcome from_verdict(const std::string& name, const Verdict& v) {
  return {name, status_name(v.status), v.detail, v.evidence, 0};
}

CheckOutcome skipped(const std::string& name, const std::string& why) { return {name, "skipped", why, {}, 0}; }

Verdict predicate(bool holds, const std::string& what) {
  return holds ? Verdict::proven(what) : Verdict::refuted("not " + what);
}

// Obstruction procedures report Proven when their theorem applies; in the
// suite a witness means the Hodge-Riemann balanced question is refuted.
CheckOutcome obstruction_outcome(const std::string& name, const ObstructionResult& r) {
  CheckOutcome o = from_verdict(name, r.verdict);
  if (r.witness) {
    o.status = "refuted";
    o.evidence["witness"] = r.witness->to_json();
  }
  return o;
}

Verdict hr_from_kahler(const ComplexLieAlgebra& g, const RForm& omega) {
  const int n = g.dim();
  Rational fact = 1;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  RForm Omega = wedge_power(omega, n - 2) * GaussRational(Rational(1) / fact);
  return check_hr_balanced<GaussRational>(g, std::optional<RForm>(omega), omega, Omega);
}

CheckOutcome run_check(const std::string& name, const ComplexLieAlgebra& g, const SuiteConfig& cfg) {
  const int n = g.dim();
  ConeSearchConfig cone{cfg.budget, cfg.iterations, cfg.seed};
  if (name == "validate") return from_verdict(name, g.validate());
  if (name == "unimodular") return from_verdict(name, predicate(is_unimodular(g), "unimodular"));
  if (name == "abelian_j") return from_verdict(name, predicate(is_abelian_J(g), "abelian complex structure"));
  if (name == "commutator_j") return from_verdict(name, commutator_J_invariant(g));
  if (name == "nilpotent") return obstruction_outcome(name, nilpotent_verdict(g));
  if (name == "complex_parallelizable") return obstruction_outcome(name, complex_parallelizable_verdict(g));
  if (name == "scan_oneform") return obstruction_outcome(name, scan_oneform_obstruction(g));
  if (name == "cone_pk" || name == "cone_cpd" || name == "cone_hrt") {
    if (n < 3) return skipped(name, "needs n >= 3");
    ConeMode mode = name == "cone_pk"    ? ConeMode::Decomposable_pK
                    : name == "cone_cpd" ? ConeMode::PSD_cpd
                                         : ConeMode::PrimitivePSD_hrt;
    std::optional<RForm> F;
    if (mode == ConeMode::PrimitivePSD_hrt) {
      F = standard_kahler(n);
      if (!is_balanced(g, *F).is_proven()) return skipped(name, "standard metric is not balanced");
    }
    auto r = cone_image_search(g, mode, n - 2, F, cone);
    CheckOutcome o = from_verdict(name, r.verdict);
    if (r.witness) o.evidence["witness"] = r.witness->to_json();
    return o;
  }
  if (name == "cseabid") {
    auto p = match_cseabid(g);
    if (!p || n < 3) return skipped(name, "not in the abelian-ideal family");
    auto c = classify_cseabid(*p);
    CheckOutcome o{name, "inconclusive", c.verdict.detail, c.to_json(), 0};
    if (c.kind == CseabidKind::Obstructed) {
      o.status = "refuted";
    } else if (c.kind == CseabidKind::Kahler || c.kind == CseabidKind::Abelian) {
      RForm omega = c.kahler_form ? *c.kahler_form : standard_kahler(n);
      auto v = hr_from_kahler(g, omega);
      o.evidence["hr_balanced"] = v.to_json();
      if (v.is_proven()) o.status = "proven";
    }
    return o;
  }
  if (name == "hr_grid") {
    if (n < 3) return skipped(name, "needs n >= 3");
    return from_verdict(name, hr_candidate_grid(g));
  }
  throw Error(ErrorCode::Domain, "unknown check '" + name + "'");
}

CheckOutcome guarded(const std::string& name, const ComplexLieAlgebra& g, const SuiteConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CheckOutcome o;
  try {
    o = run_check(name, g, cfg);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NotUnimodular:
      case ErrorCode::NotNilpotent:
      case ErrorCode::NotComplexParallelizable:
        o = skipped(name, e.what());
        break;
      default:
        o = {name, "error", e.what(), {}, 0};
    }
  } catch (const std::exception& e) {
    o = {name, "error", e.what(), {}, 0};
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

Verdict conclude(const std::vector<CheckOutcome>& checks) {
  bool any_decisive = false;
  for (const auto& c : checks)
    if (c.name == "validate" && c.status == "refuted")
      return Verdict::refuted("structure equations are invalid", {{"check", "validate"}, {"detail", c.detail}});
  for (const auto& c : checks) {
    if (!kObstructionChecks.count(c.name)) continue;
    any_decisive = true;
    if (c.status == "refuted") {
      json ev = {{"check", c.name}};
      if (c.evidence.contains("witness")) ev["witness"] = c.evidence["witness"];
      return Verdict::refuted("no Hodge-Riemann balanced structure with invariant F", ev);
    }
  }
  for (const auto& c : checks) {
    if (!kExistenceChecks.count(c.name)) continue;
    any_decisive = true;
    if (c.status == "proven") return Verdict::proven("invariant Hodge-Riemann balanced structure found", {{"check", c.name}});
  }
  if (any_decisive) return Verdict::inconclusive("no obstruction and no structure found");
  // only structural checks selected
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.status == "refuted") return Verdict::refuted("check '" + c.name + "' refuted", {{"check", c.name}});
    if (c.status == "inconclusive" || c.status == "error") inconclusive = true;
  }
  return inconclusive ? Verdict::inconclusive("some checks are inconclusive") : Verdict::proven("all checks passed");
}

}  // namespace

const CheckOutcome* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name}, {"status", c.status}, {"detail", c.detail}, {"evidence", c.evidence}};
    if (config.timing) j["seconds"] = c.seconds;
    cs.push_back(std::move(j));
  }
  json j = {{"schema", 1},
            {"engine", kEngineVersion},
            {"algebra", {{"name", algebra}, {"n", n}, {"hash", hash}}},
            {"config",
             {{"seed", config.seed}, {"budget", config.budget}, {"iterations", config.iterations}, {"checks", config.checks}}},
            {"checks", cs},
            {"conclusion", conclusion.to_json()}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

int Report::exit_code() const {
  switch (conclusion.status) {
    case Status::Proven:
      return 0;
    case Status::Refuted:
      return 2;
    default:
      return 3;
  }
}

Report run_suite(const ComplexLieAlgebra& g, const SuiteConfig& config) {
  std::vector<std::string> names = config.checks.empty() ? suite_checks() : config.checks;
  for (const auto& nm : names) {
    bool known = false;
    for (const auto& s : suite_checks()) known = known || s == nm;
    if (!known) throw Error(ErrorCode::Domain, "unknown check '" + nm + "'");
  }
  Report r;
  r.algebra = g.name();
  r.hash = algebra_hash(g);
  r.n = g.dim();
  r.config = config;
  bool valid = g.validate().is_proven();
  if (!valid && std::find(names.begin(), names.end(), "validate") == names.end()) names.insert(names.begin(), "validate");
  std::vector<std::future<CheckOutcome>> jobs;
  for (const auto& nm : names) {
    if (!valid && nm != "validate") {
      std::promise<CheckOutcome> p;
      p.set_value(skipped(nm, "structure equations are invalid"));
      jobs.push_back(p.get_future());
      continue;
    }
    auto policy = config.parallel ? std::launch::async : std::launch::deferred;
    jobs.push_back(std::async(policy, guarded, nm, std::cref(g), std::cref(config)));
  }
  for (auto& j : jobs) r.checks.push_back(j.get());
  r.conclusion = conclude(r.checks);
  return r;
}

}  // namespace hforms
