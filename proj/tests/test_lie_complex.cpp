#include <random>

#include "doctest.h"
#include "hforms/lie_complex.hpp"

using namespace hforms;

namespace {

RForm mono(int n, std::vector<int> h, std::vector<int> a, GaussRational c = 1) {
  return RForm::from_indices(n, h, a, c);
}

ComplexLieAlgebra iwasawa() {
  return ComplexLieAlgebra("iwasawa", 3, {RForm(3), RForm(3), -mono(3, {1, 2}, {})});
}

RForm random_form(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  RForm f(n);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      for (const auto& k : monomial_basis(n, p, q))
        if (rng() % 7 == 0) f.add(k, GaussRational(Rational(coef(rng)), Rational(coef(rng))));
  return f;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(iwasawa().validate().is_proven());
  // (0,2) part in d alpha^1
  ComplexLieAlgebra bad("nonint", 2, {mono(2, {}, {1, 2}), RForm(2)});
  auto v = bad.validate();
  CHECK(v.is_refuted());
  CHECK(v.detail.find("integrable") != std::string::npos);
  // d^2 alpha^1 = alpha^{12 2bar} - alpha^2 ^ conj(alpha^{12}) != 0
  ComplexLieAlgebra jac("jacobi", 2, {mono(2, {2}, {2}), mono(2, {1, 2}, {})});
  CHECK(jac.validate().is_refuted());
  ComplexLieAlgebra diag("zero", 1, {RForm(1)}, {"line 2, column 8: a1^a1 vanishes"});
  CHECK(diag.validate().is_refuted());
}

TEST_CASE("differentials of the complex Heisenberg algebra") {
  auto g = iwasawa();
  const int n = 3;
  CHECK(g.d(holo(n, 3)) == -mono(n, {1, 2}, {}));
  CHECK(g.del(holo(n, 3)) == -mono(n, {1, 2}, {}));
  CHECK(g.delbar(holo(n, 3)).is_zero());
  CHECK(g.d(antiholo(n, 3)) == -mono(n, {}, {1, 2}));
  CHECK(g.delbar(antiholo(n, 3)) == -mono(n, {}, {1, 2}));
  // d(alpha^3 ^ conj alpha^3) = -alpha^{12} ^ conj alpha^3 + alpha^3 ^ conj alpha^{12}
  RForm t = g.d(mono(n, {3}, {3}));
  CHECK(t == -mono(n, {1, 2}, {3}) + mono(n, {3}, {1, 2}));
  // [Z1, Z2] = Z3 since d alpha^3 (Z1, Z2) = -1
  CVector b = g.bracket(0, 1);
  CHECK(b[2] == GaussRational(1));
  for (int k = 0; k < 6; ++k)
    if (k != 2) CHECK(b[k].is_zero());
  CHECK(g.bracket(3, 4)[5] == GaussRational(1));
  CHECK(g.bracket(0, 3) == CVector(6));
  for (int a = 0; a < 6; ++a) CHECK(g.trace_ad(a).is_zero());
}

TEST_CASE("structure predicates") {
  auto g = iwasawa();
  CHECK(is_unimodular(g));
  CHECK(is_nilpotent(g));
  CHECK_FALSE(is_abelian(g));
  CHECK_FALSE(is_abelian_J(g));
  CHECK(is_complex_parallelizable(g));
  ComplexLieAlgebra torus("torus3", 3, {RForm(3), RForm(3), RForm(3)});
  CHECK(is_abelian(torus));
  CHECK(is_abelian_J(torus));
  ComplexLieAlgebra aj("abelianJ", 2, {RForm(2), mono(2, {1}, {1})});
  CHECK(aj.validate().is_proven());
  CHECK(is_abelian_J(aj));
  CHECK_FALSE(is_complex_parallelizable(aj));
  // d alpha^2 = -conj(l) alpha^{12} - l alpha^{2 1bar}, l = 1: ad Z1 acts by +1 on Z2 and -1 on conj Z2
  ComplexLieAlgebra fam("family", 2, {RForm(2), -mono(2, {1, 2}, {}) - mono(2, {2}, {1})});
  CHECK(fam.validate().is_proven());
  CHECK(is_unimodular(fam));
  CHECK_FALSE(is_nilpotent(fam));
  CHECK(fam.bracket(0, 1)[1] == GaussRational(1));
  CHECK(fam.bracket(0, 3)[3] == GaussRational(-1));
  // [Z1, Z2] = -Z2 with nothing to cancel the trace
  ComplexLieAlgebra nu("nonunimodular", 2, {RForm(2), mono(2, {1, 2}, {})});
  CHECK(nu.validate().is_proven());
  CHECK_FALSE(is_unimodular(nu));
  CHECK(nu.trace_ad(0) == GaussRational(-1));
  CHECK(lower_central_series(g).size() >= 1);
}

TEST_CASE("calculus identities on random forms") {
  std::mt19937 rng(7);
  std::vector<ComplexLieAlgebra> algebras{
      iwasawa(), ComplexLieAlgebra("aj", 2, {RForm(2), mono(2, {1}, {1})}),
      ComplexLieAlgebra("cor47", 3, {mono(3, {2}, {2}, GaussRational::i()), RForm(3), mono(3, {1, 2}, {})})};
  for (const auto& g : algebras) {
    REQUIRE(g.validate().is_proven());
    for (int t = 0; t < 20; ++t) {
      RForm a = random_form(rng, g.dim());
      CHECK(g.d(g.d(a)).is_zero());
      CHECK(g.del(g.del(a)).is_zero());
      CHECK(g.delbar(g.delbar(a)).is_zero());
      CHECK((g.del(g.delbar(a)) + g.delbar(g.del(a))).is_zero());
      CHECK(g.d(conj(a)) == conj(g.d(a)));
      CHECK(g.d(a) == g.del(a) + g.delbar(a));
    }
  }
  auto g = iwasawa();
  for (int j = 1; j <= 3; ++j) CHECK(g.delbar(holo(3, j)).is_zero());
}

TEST_CASE("adapted basis puts closed forms first") {
  // Heisenberg with the non-closed element listed first
  ComplexLieAlgebra perm("perm", 3, {-mono(3, {2, 3}, {}), RForm(3), RForm(3)});
  REQUIRE(perm.validate().is_proven());
  auto ab = nilpotent_adapted_basis(perm);
  CHECK(ab.level == std::vector<int>{1, 1, 2});
  CHECK(ab.algebra.validate().is_proven());
  CHECK(ab.algebra.d(holo(3, 1)).is_zero());
  CHECK(ab.algebra.d(holo(3, 2)).is_zero());
  CHECK(ab.algebra.del(holo(3, 3)).is_homogeneous_of(2, 0));
  CHECK(ab.algebra.del(holo(3, 3)).coefficient(MultiIndexPair{0b011, 0}) != GaussRational(0));
  // last new coframe element is the old alpha^1
  CHECK(ab.P[2][0] != GaussRational(0));
  CHECK(ab.P[2][1].is_zero());
  CHECK(ab.P[2][2].is_zero());

  auto same = nilpotent_adapted_basis(iwasawa());
  CHECK(same.level == std::vector<int>{1, 1, 2});
  CHECK(same.P == identity<GaussRational>(3));

  ComplexLieAlgebra nu("nonnilpotent", 2, {RForm(2), -mono(2, {1, 2}, {}) - mono(2, {2}, {1})});
  CHECK_THROWS_AS(nilpotent_adapted_basis(nu), Error);
}

TEST_CASE("change of coframe preserves the algebra") {
  auto g = iwasawa();
  Matrix<GaussRational> P{{1, 1, 0}, {0, 1, 0}, {0, 0, GaussRational::i()}};
  auto h = g.change_coframe(P);
  CHECK(h.validate().is_proven());
  // beta^3 = i alpha^3 and alpha^1 ^ alpha^2 = (beta^1 - beta^2) ^ beta^2 = beta^{12}
  CHECK(h.d(holo(3, 3)) == -GaussRational::i() * mono(3, {1, 2}, {}));
}

TEST_CASE("J-invariance of the commutator") {
  CHECK(commutator_J_invariant(iwasawa()).is_proven());
  ComplexLieAlgebra torus("torus3", 3, {RForm(3), RForm(3), RForm(3)});
  CHECK(commutator_J_invariant(torus).is_proven());
  // d alpha^1 = i alpha^{2 2bar} is real: Re Z1 lies in [g,g] but J Re Z1 does not
  ComplexLieAlgebra s("cor47", 3, {mono(3, {2}, {2}, GaussRational::i()), RForm(3), mono(3, {1, 2}, {})});
  REQUIRE(s.validate().is_proven());
  auto v = commutator_J_invariant(s);
  REQUIRE(v.is_refuted());
  CHECK(v.evidence.contains("X"));
}

TEST_CASE("ideal from a closed (1,0)-form") {
  auto g = iwasawa();
  auto cert = ideal_from_closed_oneform(g, holo(3, 1));
  CHECK(cert.verdict.is_proven());
  CHECK(cert.basis.size() == 4);
  for (const auto& v : cert.basis) {
    CHECK(v[0].is_zero());
    CHECK(v[3].is_zero());
  }
  CHECK_THROWS_AS(ideal_from_closed_oneform(g, holo(3, 3)), Error);
  try {
    ideal_from_closed_oneform(g, holo(3, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosed);
  }
}
