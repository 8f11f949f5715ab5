#include <regex>

#include "doctest.h"
#include "hforms/catalog_io.hpp"

using namespace hforms;

namespace {

RForm mono(int n, std::vector<int> h, std::vector<int> a, GaussRational c = 1) {
  return RForm::from_indices(n, h, a, c);
}

std::string parse_error(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse the file grammar") {
  auto f = parse_algebra("# Heisenberg\nalgebra iwasawa n=3\nd a3 = -a1^a2\n");
  CHECK(f.name == "iwasawa");
  CHECK(f.n == 3);
  auto g = f.to_algebra();
  CHECK(g.d_alpha(3) == -mono(3, {1, 2}, {}));
  CHECK(g.d_alpha(1).is_zero());
  CHECK(g.validate().is_proven());

  auto h = parse_algebra("algebra x n=3\nd a2 = (0+1i) a1^~a1\n").to_algebra();
  CHECK(h.d_alpha(2) == mono(3, {1}, {1}, GaussRational::i()));

  // reordered factors pick up the sign
  auto s = parse_algebra("algebra s n=3\n  d   a3=a2 ^ a1  +  1/2*~a2^a1 - ~a1^~a2  # tail\nmeta source test file\n");
  RForm expect = -mono(3, {1, 2}, {}) - mono(3, {1}, {2}, make_rational(1, 2)) - mono(3, {}, {1, 2});
  CHECK(s.to_algebra().d_alpha(3) == expect);
  CHECK(s.metadata.at("source") == "test file");

  auto z = parse_algebra("algebra z n=2\nd a1 = a1^a1\n");
  CHECK(z.diagnostics.size() == 1);
  auto zg = z.to_algebra();
  CHECK(zg.validate().is_refuted());

  CHECK(parse_algebra("algebra t n=2\nd a1 = 0\n").to_algebra().d_alpha(1).is_zero());
}

TEST_CASE("positioned parse errors") {
  const std::regex pos("line [0-9]+, column [0-9]+: .+");
  CHECK(parse_error("algebra a n=3\nd a3 = a1^a4\n").find("line 2, column 12") != std::string::npos);
  CHECK(parse_error("algebra a n=3\nd a3 = a1^a2\nd a3 = 0\n").find("duplicate") != std::string::npos);
  CHECK(parse_error("algebra a n=3\nd a3 = a1^a2\nd a3 = 0\n").find("line 3, column 3") != std::string::npos);
  CHECK(parse_error("d a1 = 0\n").find("line 1, column 1") != std::string::npos);
  std::vector<std::string> bad = {
      "",
      "algebra a n=0\n",
      "algebra a n=x\n",
      "algebra n=3\n",
      "algebra a n=3\nalgebra b n=3\n",
      "algebra a n=3\nd a3 = a1\n",
      "algebra a n=3\nd a3 = a1^a2^a3\n",
      "algebra a n=3\nd a3 = a1^\n",
      "algebra a n=3\nd a3 = (1+2 a1^a2\n",
      "algebra a n=3\nd a3 = (1+2i a1^a2\n",
      "algebra a n=3\nd a3 = 1/0 a1^a2\n",
      "algebra a n=3\nd a3 = a1^a2 a1^a3\n",
      "algebra a n=3\nd ~a3 = a1^a2\n",
      "algebra a n=3\nd a0 = a1^a2\n",
      "algebra a n=3\nd a3 = b1^a2\n",
      "algebra a n=3\nd a3 a1^a2\n",
      "algebra a n=3\nd a3 =\n",
      "algebra a n=3\nfoo bar\n",
      "algebra a n=3 extra\n",
      "algebra a n=3\nmeta\n",
      "algebra a n=3\nd a3 = 3\n",
      "algebra a n=3\nd a3 = a1^~a\n",
  };
  for (const auto& t : bad) {
    std::string e = parse_error(t);
    CAPTURE(t);
    CHECK(std::regex_search(e, pos));
  }
}

TEST_CASE("catalog round trip and validity") {
  CHECK(catalog().size() >= 11);
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    CHECK(e.algebra.validate().is_proven());
    std::string text = print_algebra(e.algebra);
    auto back = parse_algebra(text).to_algebra();
    CHECK(back.name() == e.algebra.name());
    CHECK(back.structure() == e.algebra.structure());
    CHECK(print_algebra(back) == text);
    CHECK(algebra_hash(back) == algebra_hash(e.algebra));
  }
  CHECK(print_algebra(catalog_entry("iwasawa").algebra) == "algebra iwasawa n=3\nd a1 = 0\nd a2 = 0\nd a3 = -a1^a2\n");
  CHECK(print_expression(mono(3, {1}, {1}, GaussRational::i())) == "(0+1i) a1^~a1");
  CHECK_THROWS_AS(catalog_entry("nope"), Error);
  CHECK(match_cseabid(catalog_entry("cseabid_kahler").algebra));
  CHECK_FALSE(match_cseabid(catalog_entry("iwasawa").algebra));
}

TEST_CASE("suite verdicts") {
  auto iw = run_suite(catalog_entry("iwasawa").algebra);
  CHECK(iw.conclusion.is_refuted());
  CHECK(iw.conclusion.evidence["witness"]["kind"] == to_string(WitnessKind::OneFormDelClosed));
  CHECK(iw.exit_code() == 2);
  CHECK(iw.find("commutator_j")->status == "proven");
  CHECK(iw.find("abelian_j")->status == "refuted");

  auto t = run_suite(catalog_entry("torus3").algebra);
  CHECK(t.conclusion.is_proven());
  CHECK(t.exit_code() == 0);
  for (const auto& c : t.checks) CHECK(c.status != "refuted");

  auto c = run_suite(catalog_entry("cseabid_obstructed").algebra);
  CHECK(c.conclusion.is_refuted());
  CHECK(c.find("cseabid")->status == "refuted");
  CHECK(c.find("cseabid")->evidence["kind"] == "Obstructed");

  auto k = run_suite(catalog_entry("cseabid_kahler").algebra);
  CHECK(k.find("cseabid")->status == "proven");
  CHECK(k.conclusion.is_proven());

  SuiteConfig only;
  only.checks = {"unimodular"};
  auto u = run_suite(parse_algebra("algebra nu n=2\nd a2 = a1^a2\n").to_algebra(), only);
  CHECK(u.exit_code() == 2);
  CHECK_THROWS_AS(run_suite(iw.algebra.empty() ? ComplexLieAlgebra() : catalog_entry("torus2").algebra, {{"bogus"}}),
                  Error);

  // invalid structure equations: reported, nothing else runs
  auto bad = run_suite(parse_algebra("algebra z n=2\nd a1 = a1^a1\n").to_algebra());
  CHECK(bad.conclusion.is_refuted());
  CHECK(bad.find("validate")->status == "refuted");
  CHECK(bad.find("hr_grid")->status == "skipped");
}

TEST_CASE("reports are reproducible") {
  SuiteConfig cfg;
  auto a = run_suite(catalog_entry("iwasawa_x_c").algebra, cfg).to_json().dump();
  cfg.parallel = false;
  auto b = run_suite(catalog_entry("iwasawa_x_c").algebra, cfg).to_json().dump();
  CHECK(a == b);
  auto j = json::parse(a);
  CHECK(j["schema"] == 1);
  CHECK(j["algebra"]["hash"].get<std::string>().size() == 16);
  CHECK_FALSE(j["checks"][0].contains("seconds"));
}
