#include "doctest.h"
#include "hforms/iwasawa_c.hpp"
#include "hforms/positivity.hpp"

using namespace hforms;

namespace {

AForm m(std::vector<int> h, std::vector<int> a, const AnalyticScalar& c = 1) {
  return AForm::from_indices(4, h, a, c);
}

MultiIndexPair key(std::vector<int> h, std::vector<int> a) { return MultiIndexPair{indices_mask(h), indices_mask(a)}; }

}  // namespace

TEST_CASE("transcribed forms") {
  const AnalyticScalar U = AnalyticScalar::U();
  AForm Omega = build_Omega();
  CHECK(Omega.coefficient(key({3, 4}, {3, 4})) == AnalyticScalar::E(1) * (1 + U));
  CHECK(build_omega0().coefficient(key({3}, {3})) == AnalyticScalar(GaussRational::i()) * AnalyticScalar::E(-1));
  auto xi = build_Xi();
  REQUIRE(xi.size() == 15);
  CHECK(xi[7] == m({2}, {3}) - m({4}, {1}, AnalyticScalar::ubar() * AnalyticScalar::E(1)));
  CHECK(xi[0].coefficient(key({1}, {1})) == AnalyticScalar(3));
  auto psi = build_Psi();
  CHECK(psi[0] == AnalyticScalar::E(1) * (m({1, 2}, {}) - m({3, 4}, {}, AnalyticScalar::ubar())));
  CHECK(is_real(Omega));
  CHECK(is_real(build_omega0()));
}

TEST_CASE("the phi^{14} coefficient of Omega") {
  const AnalyticScalar U = AnalyticScalar::U(), E1 = AnalyticScalar::E(1);
  AForm Omega = build_Omega();
  CHECK(Omega.coefficient(key({1, 4}, {1, 4})) == 1 + U * AnalyticScalar::E(2));
  // the variant with e^U is still closed but breaks the Psi^4 value and omega0 ^ Omega
  AForm variant = Omega - m({1, 4}, {1, 4}, U * AnalyticScalar::E(2)) + m({1, 4}, {1, 4}, U * E1);
  IwasawaCContext ctx;
  CHECK(ctx.d(variant).is_zero());
  auto psi = build_Psi();
  CHECK(pairing_Q(variant, 2, 0, psi[3], psi[3]) == 1 + U * E1);
  CHECK(pairing_Q(Omega, 2, 0, psi[3], psi[3]) == expected_psi_gram()[3]);
  CHECK(wedge(build_omega0(), variant) != expected_omega0_Omega());
}

TEST_CASE("differential on analytic coefficients") {
  IwasawaCContext ctx;
  // du = phi^4, so d(u) = phi^4 and d(U) = ubar phi^4 + u conj(phi^4)
  CHECK(ctx.d(AForm::constant(4, AnalyticScalar::u())) == holo<AnalyticScalar>(4, 4));
  CHECK(ctx.d(AForm::constant(4, AnalyticScalar::U())) ==
        m({4}, {}, AnalyticScalar::ubar()) + m({}, {4}, AnalyticScalar::u()));
  CHECK(ctx.d(holo<AnalyticScalar>(4, 3)) == -m({1, 2}, {}));
  // d^2 = 0 on a mixed sample
  AForm a = m({3}, {3}, AnalyticScalar::E(2) * AnalyticScalar::u()) + m({1}, {4}, AnalyticScalar::U());
  CHECK(ctx.d(ctx.d(a)).is_zero());
  CHECK(ctx.del(ctx.del(a)).is_zero());
  CHECK(ctx.delbar(ctx.delbar(a)).is_zero());
  CHECK((ctx.del(a) + ctx.delbar(a)) == ctx.d(a));
  // numeric d agrees with the exact one
  std::complex<double> u(0.7, -1.1);
  CHECK(max_abs(ctx.d_numeric(a, u) - to_numeric(ctx.d(a), u)) < 1e-12);
}

TEST_CASE("B at the origin") {
  auto B = matrix_B();
  CHECK(B[0][0].at_origin() == GaussRational(6));
  CHECK(B[0][1].at_origin() == GaussRational(3));
  CHECK(B[2][2].at_origin() == GaussRational(6));
  CHECK(expected_det_B().at_zero() == 108);
  CHECK(expected_det_B2().at_zero() == 27);
  CHECK(f_factor().at_zero() == 3);
}

TEST_CASE("verify_all") {
  auto rep = verify_all(8);
  REQUIRE(rep.checks.size() == 10);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.evidence.dump());
    CHECK(c.passed);
  }
  CHECK(rep.depends_on_U);
  CHECK(rep.core_rejected);
  CHECK(rep.passed());
  CHECK_NOTHROW(rep.require());
  auto j = rep.to_json();
  CHECK(j["quantities"]["Q_Psi_diagonal"].size() == 6);
  CHECK(j["invariant_core"]["check_hr_balanced"]["status"] != "Proven");
  CHECK(verify_all(8).to_json().dump() == j.dump());
}
