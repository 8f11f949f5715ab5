#include "doctest.h"
#include "hforms/hodge_riemann.hpp"

using namespace hforms;

namespace {

RForm mono(int n, std::vector<int> h, std::vector<int> a, GaussRational c = 1) {
  return RForm::from_indices(n, h, a, c);
}

ComplexLieAlgebra iwasawa() {
  return ComplexLieAlgebra("iwasawa", 3, {RForm(3), RForm(3), -mono(3, {1, 2}, {})});
}

ComplexLieAlgebra torus(int n) { return ComplexLieAlgebra("torus", n, std::vector<RForm>(n, RForm(n))); }

}  // namespace

TEST_CASE("classical Hodge-Riemann for powers of the standard form") {
  for (int n = 3; n <= 5; ++n) {
    RForm omega = standard_kahler(n);
    auto r = check_hodge_riemann(omega, divided_power(omega, n - 2));
    CHECK(r.verdict.is_proven());
    CHECK(r.p11_dim == static_cast<std::size_t>(n * n - 1));
    auto bad = check_hodge_riemann(omega, -divided_power(omega, n - 2));
    CHECK(bad.verdict.is_refuted());
  }
  CHECK_THROWS_AS(check_hodge_riemann(standard_kahler(2), RForm::constant(2, 1)), Error);
}

TEST_CASE("primitive (1,1)-forms are Q-orthogonal to omega") {
  const int n = 4;
  RForm omega = standard_kahler(n);
  RForm Omega = divided_power(omega, n - 2);
  auto ps = primitive_space(omega, Omega, 1, 1);
  REQUIRE(ps);
  CHECK(ps->basis.size() == 15);
  for (const auto& p : ps->basis) {
    CHECK(wedges_to_zero(p, omega, Omega));
    CHECK(pairing_Q(Omega, 1, 1, omega, p).is_zero());
  }
  auto ps20 = primitive_space(omega, Omega, 2, 0);
  REQUIRE(ps20);
  CHECK(ps20->basis.size() == 6);
}

TEST_CASE("balanced metrics") {
  auto g = iwasawa();
  RForm F = standard_kahler(3);
  CHECK(is_balanced(g, F).is_proven());
  CHECK(invariant_balanced_criterion(g, F).is_proven());
  RForm F2 = F + mono(3, {1}, {3}, GaussRational::i()) + mono(3, {3}, {1}, GaussRational::i());
  CHECK(is_balanced(g, F2).is_proven());
  // d alpha^2 = alpha^{12}: not unimodular
  ComplexLieAlgebra nu("nu", 3, {RForm(3), mono(3, {1, 2}, {}), RForm(3)});
  CHECK_THROWS_AS(invariant_balanced_criterion(nu, F), Error);
  CHECK(is_balanced(torus(3), F).is_proven());
  CHECK(invariant_balanced_criterion(torus(3), F).is_proven());
}

TEST_CASE("Hodge-Riemann balanced structures") {
  for (int n = 3; n <= 4; ++n) {
    RForm omega = standard_kahler(n);
    Rational f = n == 3 ? 2 : 6;
    RForm Omega = wedge_power(omega, n - 2) * GaussRational(Rational(1) / f);
    auto v = check_hr_balanced<GaussRational>(torus(n), omega, omega, Omega);
    CHECK(v.is_proven());
    CHECK(is_balanced(torus(n), omega).is_proven());
    CHECK(check_hr_balanced<GaussRational>(torus(n), std::nullopt, omega, Omega).is_proven());
    // Omega = omega^{n-2}/(n-2)! misses the factorization by a factor n-1
    auto w = check_hr_balanced<GaussRational>(torus(n), omega, omega, divided_power(omega, n - 2));
    CHECK(w.is_refuted());
    CHECK(w.evidence.contains("residual"));
  }
  RForm omega = standard_kahler(3);
  auto v = check_hr_balanced<GaussRational>(iwasawa(), omega, omega, omega * GaussRational(make_rational(1, 2)));
  CHECK(v.is_refuted());
  CHECK(hr_candidate_grid(torus(3)).is_proven());
  CHECK(hr_candidate_grid(iwasawa()).is_inconclusive());
}
