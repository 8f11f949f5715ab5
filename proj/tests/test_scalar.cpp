#include <random>

#include "doctest.h"
#include "hforms/scalar.hpp"

using namespace hforms;

namespace {

AnalyticScalar random_analytic(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2), mex(-2, 2), count(0, 4);
  AnalyticScalar x;
  int terms = count(rng);
  for (int t = 0; t < terms; ++t)
    x += AnalyticScalar::term(GaussRational(Rational(coef(rng)), Rational(coef(rng))), ex(rng), ex(rng), mex(rng));
  return x;
}

}  // namespace

TEST_CASE("gaussian rationals") {
  GaussRational a(1, 1), b(1, -1);
  CHECK(a * b == GaussRational(2));
  CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
  CHECK(i_power(-3) == GaussRational::i());
  CHECK(i_power(16) == GaussRational(1));
  CHECK((GaussRational(3) / GaussRational(1, 1)) == GaussRational(make_rational(3, 2), make_rational(-3, 2)));
  CHECK(GaussRational(make_rational(1, 2), make_rational(-3, 4)).str() == "(1/2-3/4i)");
}

TEST_CASE("analytic ring operations") {
  auto E = AnalyticScalar::E;
  CHECK(conj(AnalyticScalar::u() * E(1)) == AnalyticScalar::ubar() * E(1));
  CHECK(E(1) * (AnalyticScalar::U() * E(1)) == AnalyticScalar::U() * E(2));
  CHECK(partial_u(E(1)) == AnalyticScalar::ubar() * E(1));
  CHECK(partial_u(E(-1)) == -(AnalyticScalar::ubar() * E(-1)));
  CHECK(partial_u(AnalyticScalar::u() * E(1)) == E(1) + AnalyticScalar::U() * E(1));
}

TEST_CASE("product rule against finite differences") {
  AnalyticScalar x = AnalyticScalar::u() * AnalyticScalar::E(1);
  std::complex<double> u0(0.7, 0.3);
  double h = 1e-6;
  // d/du = (d/dx - i d/dy) / 2
  auto f = [&](std::complex<double> u) { return eval_numeric(x, u); };
  std::complex<double> dx = (f(u0 + h) - f(u0 - h)) / (2 * h);
  std::complex<double> dy = (f(u0 + std::complex<double>(0, h)) - f(u0 - std::complex<double>(0, h))) / (2 * h);
  std::complex<double> fd = 0.5 * (dx - std::complex<double>(0, 1) * dy);
  CHECK(std::abs(fd - eval_numeric(partial_u(x), u0)) < 1e-7);
}

TEST_CASE("numeric evaluation") {
  CHECK(std::abs(eval_numeric(AnalyticScalar::E(1), 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(eval_numeric(AnalyticScalar::U() * AnalyticScalar::E(2), 1.0) - std::exp(2.0)) < 1e-12);
  auto v = eval_numeric(AnalyticScalar::ubar() * AnalyticScalar::E(1), std::complex<double>(0, 1));
  CHECK(std::abs(v - std::complex<double>(0, -std::exp(1.0))) < 1e-12);
}

TEST_CASE("ring axioms and derivative identities on random elements") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-1.4, 1.4);
  for (int it = 0; it < 100; ++it) {
    auto x = random_analytic(rng), y = random_analytic(rng), z = random_analytic(rng);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(conj(conj(x)) == x);
    CHECK(partial_u(conj(x)) == conj(partial_ubar(x)));
    CHECK(partial_u(partial_ubar(x)) == partial_ubar(partial_u(x)));
    CHECK(partial_u(x * y) == partial_u(x) * y + x * partial_u(y));
    std::complex<double> u(coord(rng), coord(rng));
    auto lhs = eval_numeric(x * y + z, u);
    auto rhs = eval_numeric(x, u) * eval_numeric(y, u) + eval_numeric(z, u);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    CHECK(parse_analytic(x.str()) == x);
  }
}

TEST_CASE("analytic literal syntax") {
  auto x = parse_analytic("(0+1i)*u*E[2] - 3*~u^2");
  CHECK(x == AnalyticScalar::term(GaussRational::i(), 1, 0, 2) - AnalyticScalar::term(3, 0, 2, 0));
  CHECK_THROWS_AS(parse_analytic("3*"), Error);
  CHECK_THROWS_AS(parse_analytic("E[x]"), Error);
}

TEST_CASE("sign on the ray") {
  UPolynomial U = UPolynomial::U();
  UPolynomial f = UPolynomial::E(2) * (UPolynomial(3) * U - UPolynomial(1)) + UPolynomial(4);
  Verdict v = sign_on_ray(f);
  REQUIRE(v.is_proven());
  CHECK(v.evidence["p(0)"] == "3");
  CHECK(v.evidence["derivative"]["p"] == (UPolynomial::E(2) * (UPolynomial(6) * U + UPolynomial(1))).str());
  CHECK(sign_on_ray(UPolynomial(1)).is_proven());
  Verdict r = sign_on_ray(UPolynomial::E(2) * (UPolynomial(3) * U - UPolynomial(1)));
  REQUIRE(r.is_refuted());
  CHECK(r.evidence["U0"] == "0");
  // positive at 0, negative later: refuted at a grid point with exact bounds
  Verdict late = sign_on_ray(UPolynomial(1) - U);
  REQUIRE(late.is_refuted());
  CHECK(Rational(late.evidence["upper_bound"].get<std::string>()) < 0);
}

TEST_CASE("exp enclosures contain the value") {
  for (int k : {-7, -1, 0, 1, 3, 9}) {
    auto iv = exp_enclosure(make_rational(k, 3), 64);
    double e = std::exp(k / 3.0);
    CHECK(iv.lo.get_d() <= e * (1 + 1e-15));
    CHECK(iv.hi.get_d() >= e * (1 - 1e-15));
    CHECK(Rational(iv.hi - iv.lo).get_d() < 1e-15 * std::max(1.0, e));
  }
}
