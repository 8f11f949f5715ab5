#include <random>

#include "doctest.h"
#include "hforms/hodge_riemann.hpp"
#include "hforms/obstructions.hpp"

using namespace hforms;

namespace {

RForm mono(int n, std::vector<int> h, std::vector<int> a, GaussRational c = 1) {
  return RForm::from_indices(n, h, a, c);
}

const GaussRational I = GaussRational::i();

ComplexLieAlgebra iwasawa() { return ComplexLieAlgebra("iwasawa", 3, {RForm(3), RForm(3), -mono(3, {1, 2}, {})}); }
ComplexLieAlgebra iwasawa_c() {
  return ComplexLieAlgebra("iwasawa_x_c", 4, {RForm(4), RForm(4), -mono(4, {1, 2}, {}), RForm(4)});
}
ComplexLieAlgebra torus(int n) { return ComplexLieAlgebra("torus", n, std::vector<RForm>(n, RForm(n))); }
// abelian complex structure, non-abelian algebra
ComplexLieAlgebra abelian_j() { return ComplexLieAlgebra("abelian_j", 3, {RForm(3), RForm(3), mono(3, {1}, {1}, I)}); }

CseabidParams params(std::vector<GaussRational> v, std::vector<GaussRational> l) { return {std::move(v), std::move(l)}; }

}  // namespace

TEST_CASE("1-form scan") {
  auto r = scan_oneform_obstruction(iwasawa());
  REQUIRE(r.verdict.is_refuted());
  REQUIRE(r.witness);
  CHECK(r.witness->kind == WitnessKind::OneFormDelClosed);
  CHECK(*r.witness->alpha == holo(3, 3));
  CHECK(r.witness->terms.front().eta == -mono(3, {1, 2}, {}));
  CHECK(verify_witness(iwasawa(), *r.witness).is_proven());

  CHECK(scan_oneform_obstruction(torus(3)).verdict.is_proven());
  CHECK_FALSE(scan_oneform_obstruction(torus(3)).witness);

  auto a = scan_oneform_obstruction(abelian_j());
  REQUIRE(a.verdict.is_refuted());
  CHECK(a.witness->kind == WitnessKind::OneFormDelbarClosed);
  CHECK(a.witness->invariant_F_only);
  CHECK(verify_witness(abelian_j(), *a.witness).is_proven());

  ComplexLieAlgebra nu("nu", 2, {RForm(2), mono(2, {1, 2}, {})});
  CHECK_THROWS_AS(scan_oneform_obstruction(nu), Error);
}

TEST_CASE("witness mutations are rejected") {
  auto g = iwasawa();
  auto w = *scan_oneform_obstruction(g).witness;
  auto m1 = w;
  m1.image = m1.image * GaussRational(2);
  CHECK(verify_witness(g, m1).is_refuted());
  auto m2 = w;
  m2.terms.front().c = -m2.terms.front().c;
  CHECK(verify_witness(g, m2).is_refuted());
  auto m3 = w;
  m3.terms.push_back({mono(3, {1, 3}, {}), -w.terms.front().c});
  CHECK(verify_witness(g, m3).is_refuted());
  auto m4 = w;
  m4.gamma = m4.gamma + mono(3, {1, 2}, {3});
  CHECK(verify_witness(g, m4).is_refuted());
  auto m5 = w;
  m5.alpha = holo(3, 1);
  CHECK(verify_witness(g, m5).is_refuted());
  auto m6 = w;
  m6.kind = WitnessKind::OneFormDelbarClosed;
  CHECK(verify_witness(g, m6).is_refuted());
  // a Delbar witness needs either F or an invariant metric on a unimodular algebra
  auto a = *scan_oneform_obstruction(abelian_j()).witness;
  a.invariant_F_only = false;
  CHECK(verify_witness(abelian_j(), a).is_refuted());
  CHECK(verify_witness(abelian_j(), a, standard_kahler(3)).is_refuted());
}

TEST_CASE("cone image search") {
  auto r = cone_image_search(iwasawa(), ConeMode::Decomposable_pK, 1);
  REQUIRE(r.verdict.is_refuted());
  REQUIRE(r.witness);
  CHECK(verify_witness(iwasawa(), *r.witness).is_proven());
  auto c = cone_image_search(iwasawa_c(), ConeMode::PSD_cpd, 2);
  REQUIRE(c.verdict.is_refuted());
  CHECK(verify_witness(iwasawa_c(), *c.witness).is_proven());
  auto t = cone_image_search(torus(4), ConeMode::PSD_cpd, 2);
  CHECK(t.verdict.is_inconclusive());
  CHECK_FALSE(t.witness);
  CHECK_THROWS_AS(cone_image_search(iwasawa(), ConeMode::PrimitivePSD_hrt, 1), Error);
  // every invariant metric on the Iwasawa algebra is balanced
  auto h = cone_image_search(iwasawa(), ConeMode::PrimitivePSD_hrt, 1, standard_kahler(3));
  CHECK_FALSE(h.verdict.is_proven());
  if (h.witness) CHECK(verify_witness(iwasawa(), *h.witness, standard_kahler(3)).is_proven());
  CHECK(cone_mode_from_string("hrt") == ConeMode::PrimitivePSD_hrt);
  CHECK_THROWS_AS(cone_mode_from_string("x"), Error);
}

TEST_CASE("nilpotent procedure") {
  for (const auto& g : {iwasawa(), iwasawa_c()}) {
    auto r = nilpotent_verdict(g);
    REQUIRE(r.verdict.is_proven());
    REQUIRE(r.witness);
    CHECK(*r.witness->alpha == holo(g.dim(), 3));
    // the closed alpha^4 of the product is placed before alpha^3
    CHECK(r.verdict.evidence["adapted_index"] == g.dim());
    CHECK(verify_witness(g, *r.witness).is_proven());
  }
  auto t = nilpotent_verdict(torus(3));
  CHECK(t.verdict.is_proven());
  CHECK_FALSE(t.witness);
  auto a = nilpotent_verdict(abelian_j());
  REQUIRE(a.witness);
  CHECK(a.witness->kind == WitnessKind::OneFormDelbarClosed);
  ComplexLieAlgebra nn("nn", 2, {RForm(2), mono(2, {1, 2}, {})});
  CHECK_THROWS_AS(nilpotent_verdict(nn), Error);
}

TEST_CASE("complex parallelizable algebras") {
  auto r = complex_parallelizable_verdict(iwasawa());
  REQUIRE(r.witness);
  CHECK(*r.witness->alpha == holo(3, 3));
  ComplexLieAlgebra two("two_step", 4, {RForm(4), RForm(4), mono(4, {1, 2}, {}), mono(4, {1, 3}, {})});
  REQUIRE(two.validate().is_proven());
  auto s = complex_parallelizable_verdict(two);
  REQUIRE(s.witness);
  CHECK(*s.witness->alpha == holo(4, 3));
  CHECK_FALSE(complex_parallelizable_verdict(torus(2)).witness);
  CHECK_THROWS_AS(complex_parallelizable_verdict(abelian_j()), Error);
}

TEST_CASE("abelian ideal family: Kahler points") {
  // v = 0, lambda_2 = 0, others 1: the standard form is closed
  auto k = classify_cseabid(params({0, 0, 0}, {0, 1, 1}));
  REQUIRE(k.kind == CseabidKind::Kahler);
  CHECK(k.l == 2);
  CHECK(*k.kahler_form == standard_kahler(4));
  auto k2 = classify_cseabid(params({0, 0, 3}, {0, 1, GaussRational(Rational(1), Rational(2))}));
  REQUIRE(k2.kind == CseabidKind::Kahler);
  CHECK(k2.algebra.d(*k2.kahler_form).is_zero());
  CHECK(is_positive_definite(*k2.kahler_form).status == PositivityStatus::PositiveDefinite);
  CHECK(classify_cseabid(params({0, 0, 0}, {0, 0, 0})).kind == CseabidKind::Abelian);
}

TEST_CASE("abelian ideal family: obstructed points") {
  // lambda = 0, v_2 = i: l = 4 after normalization
  auto o = classify_cseabid(params({I, 0, 0}, {0, 0, 0}));
  REQUIRE(o.kind == CseabidKind::Obstructed);
  CHECK(o.l == 4);
  REQUIRE(o.normalized_witness);
  // d(2i alpha^{2 2bar 4}) has (2,2) part 2 alpha^{12} ^ conj(alpha^{12})
  CHECK(o.normalized_witness->image == wedge(mono(4, {1, 2}, {}), mono(4, {}, {1, 2})) * GaussRational(2));
  CHECK(o.normalized_witness->kind == WitnessKind::RankOneImage);
  CHECK(verify_witness(o.algebra, *o.witness).is_proven());

  // l = 2 with v_3 != 0
  GaussRational v3(Rational(1), Rational(-2));
  GaussRational l3(Rational(3), Rational(1));
  auto q = classify_cseabid(params({1, v3, 0}, {0, l3, 1}));
  REQUIRE(q.kind == CseabidKind::Obstructed);
  CHECK(q.l == 2);
  RForm expected = wedge(mono(4, {1, 3}, {}), mono(4, {}, {1, 3})) * I;
  CHECK(q.normalized_witness->image == expected);
  CHECK(q.normalized_witness->terms.front().eta == mono(4, {1, 3}, {}));
  CHECK(q.normalized_witness->terms.front().c == I);
  CHECK(verify_witness(*q.normalized, *q.normalized_witness).is_proven());
  CHECK(verify_witness(q.algebra, *q.witness).is_proven());
  CHECK(q.verdict.is_refuted());
  CHECK(q.verdict.evidence["construction"] != "cone search fallback");
  CHECK(o.verdict.evidence["construction"] != "cone search fallback");
}
