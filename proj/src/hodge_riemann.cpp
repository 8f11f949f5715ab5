#include "hforms/hodge_riemann.hpp"

namespace hforms {

namespace {

void require_metric(const RForm& F) {
  if (!F.is_homogeneous_of(1, 1) || !is_real(F)) throw Error(ErrorCode::NotReal, "F must be a real (1,1)-form");
}

}  // namespace

Verdict is_balanced(const ComplexLieAlgebra& g, const RForm& F) {
  require_metric(F);
  const int n = g.dim();
  RForm dF = g.d(wedge_power(F, n - 1));
  if (dF.is_zero()) return Verdict::proven("d(F^{n-1}) = 0");
  return Verdict::refuted("d(F^{n-1}) != 0", {{"d_F_power", dF.str()}});
}

Verdict invariant_balanced_criterion(const ComplexLieAlgebra& g, const RForm& F) {
  require_metric(F);
  if (!is_unimodular(g)) throw Error(ErrorCode::NotUnimodular, "criterion needs a unimodular algebra");
  const int n = g.dim();
  RForm Fp = wedge_power(F, n - 1);
  for (int j = 1; j <= n; ++j) {
    for (bool c : {false, true}) {
      RForm t = wedge(Fp, g.d(g.coframe(j, c)));
      if (!t.is_zero())
        return Verdict::refuted("F^{n-1} ^ d theta != 0",
                                {{"theta", g.coframe(j, c).str()}, {"product", t.str()}});
    }
  }
  return Verdict::proven("F^{n-1} ^ d theta = 0 for every coframe element");
}

Verdict hr_candidate_grid(const ComplexLieAlgebra& g) {
  const int n = g.dim();
  if (n < 3) throw Error(ErrorCode::Domain, "Hodge-Riemann balanced structures need n >= 3");
  Rational fact = 1;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  int tried = 0;
  json last_failure;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Matrix<GaussRational> h(n, std::vector<GaussRational>(n));
    for (int a = 0; a < n; ++a) h[a][a] = GaussRational((mask >> a) & 1 ? 2 : 1);
    RForm omega = hermitian_to_form(n, h);
    RForm Omega = wedge_power(omega, n - 2) * GaussRational(Rational(1) / fact);
    ++tried;
    auto v = check_hr_balanced<GaussRational>(g, std::optional<RForm>(omega), omega, Omega);
    if (v.is_proven()) {
      v.evidence["candidates_tried"] = tried;
      return v;
    }
    if (mask == 0) last_failure = v.to_json();
  }
  return Verdict::inconclusive("no candidate on the invariant grid passed",
                               {{"candidates_tried", tried}, {"standard_candidate", last_failure}});
}

}  // namespace hforms
