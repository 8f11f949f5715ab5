#include <cmath>
#include <random>

#include "doctest.h"
#include "hforms/positivity.hpp"

using namespace hforms;

namespace {

RForm mono(int n, std::vector<int> h, std::vector<int> a, GaussRational c = 1) {
  return RForm::from_indices(n, h, a, c);
}

RForm ipair(int n, int j) { return mono(n, {j}, {j}, GaussRational::i()); }

}  // namespace

TEST_CASE("Gram matrices") {
  const int n = 3;
  RForm omega = standard_kahler(n);
  auto g = gram_Q(divided_power(omega, 2), 1, 0, monomial_forms<GaussRational>(n, 1, 0));
  CHECK(g.entries == identity<GaussRational>(3));
  auto z = gram_Q(RForm(n), 1, 0, monomial_forms<GaussRational>(n, 1, 0));
  for (const auto& row : z.entries)
    for (const auto& x : row) CHECK(x.is_zero());
  CHECK_THROWS_AS(gram_Q(omega, 1, 0, monomial_forms<GaussRational>(n, 1, 0)), Error);
  // non-real Omega
  CHECK_THROWS_AS(gram_Q(mono(n, {1, 2}, {1, 3}), 1, 0, monomial_forms<GaussRational>(n, 1, 0)), Error);
}

TEST_CASE("positive definiteness") {
  const int n = 4;
  RForm omega = standard_kahler(n);
  CHECK(is_positive_definite(divided_power(omega, 2)).status == PositivityStatus::PositiveDefinite);
  CHECK(is_positive_definite(omega).status == PositivityStatus::PositiveDefinite);
  auto neg = is_positive_definite(-wedge_power(omega, 2));
  REQUIRE(neg.status == PositivityStatus::NotPositive);
  REQUIRE(neg.witness);
  CHECK(*neg.witness == mono(n, {1, 2}, {}));
  // Q(psi, psi) <= 0 on the witness
  CHECK(sgn(pairing_Q(-wedge_power(omega, 2), 2, 0, *neg.witness, *neg.witness).re()) <= 0);
}

TEST_CASE("transversality") {
  const int n = 4;
  RForm omega = standard_kahler(n);
  CHECK(is_transverse(wedge_power(omega, 2)).status != PositivityStatus::NotPositive);
  CHECK(is_transverse(wedge_power(omega, 2)).status != PositivityStatus::Inconclusive);
  // flip the slot paired with phi^{34}
  RForm std2 = divided_power(omega, 2);
  RForm slot = wedge(ipair(n, 1), ipair(n, 2));
  RForm Omega = std2 - slot * GaussRational(2);
  auto g = gram_Q(Omega, 2, 0, monomial_forms<GaussRational>(n, 2, 0));
  auto b = monomial_basis(n, 2, 0);
  for (std::size_t a = 0; a < b.size(); ++a)
    CHECK(g.entries[a][a] == GaussRational(b[a] == MultiIndexPair{0b1100, 0} ? -1 : 1));
  auto t = is_transverse(Omega);
  REQUIRE(t.status == PositivityStatus::NotPositive);
  REQUIRE(t.witness);
  CHECK(plucker_decomposable(*t.witness));
  CHECK(sgn(pairing_Q(Omega, 2, 0, *t.witness, *t.witness).re()) < 0);
}

TEST_CASE("strong positivity certificates") {
  const int n = 4;
  RForm omega = standard_kahler(n);
  std::vector<RForm> ones;
  for (int j = 1; j <= n; ++j) ones.push_back(holo(n, j));
  CHECK(check_strong_positivity_certificate(omega, ones).is_proven());
  std::vector<RForm> triples;
  for (const auto& k : monomial_basis(n, 3, 0)) triples.push_back(RForm::monomial(n, k, 1));
  CHECK(check_strong_positivity_certificate(divided_power(omega, 3), triples).is_proven());
  CHECK(check_strong_positivity_certificate(omega * GaussRational(2), ones).is_refuted());
  RForm nd = mono(n, {1, 2}, {}) + mono(n, {3, 4}, {});
  CHECK(check_strong_positivity_certificate(divided_power(omega, 2), {nd}).is_refuted());
}

TEST_CASE("root metric") {
  for (int n = 3; n <= 4; ++n) {
    RForm omega = standard_kahler(n);
    auto r = root_metric(divided_power(omega, n - 1));
    REQUIRE(r.exact);
    CHECK(*r.exact == omega);
    auto r2 = root_metric(divided_power(omega * GaussRational(2), n - 1));
    REQUIRE(r2.exact);
    CHECK(*r2.exact == omega * GaussRational(2));
    CHECK(r2.residual < 1e-12);
  }
  // A = diag(2,1,1): det A = 2 has no rational square root
  const int n = 3;
  RForm Phi = wedge(ipair(n, 2), ipair(n, 3)) * GaussRational(2) + wedge(ipair(n, 1), ipair(n, 3)) +
              wedge(ipair(n, 1), ipair(n, 2));
  auto r = root_metric(Phi);
  CHECK_FALSE(r.exact);
  CHECK(r.residual <= 1e-9);
  CHECK(std::abs(r.numeric.coefficient(MultiIndexPair{1, 1}).imag() - 1 / std::sqrt(2.0)) < 1e-9);
  CHECK_THROWS_AS(root_metric(-Phi), Error);
}
