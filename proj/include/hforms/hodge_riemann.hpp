#pragma once

// Primitive spaces and the Hodge-Riemann conditions in degrees p+q = 2, the
// factorization identity F^{n-1}/(n-1)! = omega ^ Omega, and balanced
// checks. Templates work over GaussRational (invariant forms) and
// AnalyticScalar (forms with coefficients in the analytic ring).

#include <optional>
#include <vector>

#include "hforms/exterior.hpp"
#include "hforms/lie_complex.hpp"
#include "hforms/linalg.hpp"
#include "hforms/positivity.hpp"

namespace hforms {

template <class S>
struct PrimitiveSpace {
  int p = 0;
  int q = 0;
  std::vector<Form<S>> basis;
};

inline std::optional<Matrix<GaussRational>> ring_kernel(const Matrix<GaussRational>& m, std::size_t cols) {
  return kernel(m, cols);
}
inline std::optional<Matrix<AnalyticScalar>> ring_kernel(const Matrix<AnalyticScalar>& m, std::size_t cols) {
  return analytic_kernel(m, cols);
}

/// Matrix of a -> a ^ w from Lambda^{p,q} (monomial basis) into the monomial
/// basis of the target bidegree.
template <class S>
Matrix<S> wedge_matrix(const Form<S>& w, int n, int p, int q, int tp, int tq) {
  auto src = monomial_basis(n, p, q);
  auto dst = monomial_basis(n, tp, tq);
  Matrix<S> m(dst.size(), std::vector<S>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    auto img = coordinates(wedge(Form<S>::monomial(n, src[c], S(1)), w), dst);
    for (std::size_t r = 0; r < dst.size(); ++r) m[r][c] = img[r];
  }
  return m;
}

/// {a in Lambda^{p,q} : a ^ omega ^ Omega = 0}. Over the analytic ring the
/// elimination uses unit pivots only; nullopt when that is not possible.
template <class S>
std::optional<PrimitiveSpace<S>> primitive_space(const Form<S>& omega, const Form<S>& Omega, int p, int q) {
  const int n = omega.dim();
  if (p + q != 2) throw Error(ErrorCode::Domain, "primitive spaces are only used in degree 2");
  Form<S> w = wedge(omega, Omega);
  if (!w.is_homogeneous_of(n - 1, n - 1)) throw Error(ErrorCode::BidegreeMismatch, "omega ^ Omega must be (n-1,n-1)");
  auto src = monomial_basis(n, p, q);
  PrimitiveSpace<S> ps;
  ps.p = p;
  ps.q = q;
  if (p + n - 1 > n || q + n - 1 > n) {
    for (const auto& k : src) ps.basis.push_back(Form<S>::monomial(n, k, S(1)));
    return ps;
  }
  auto m = wedge_matrix(w, n, p, q, p + n - 1, q + n - 1);
  auto ker = ring_kernel(m, src.size());
  if (!ker) return std::nullopt;
  for (const auto& v : *ker) ps.basis.push_back(from_coordinates(n, v, src));
  return ps;
}

template <class S>
bool wedges_to_zero(const Form<S>& a, const Form<S>& omega, const Form<S>& Omega) {
  return wedge(wedge(a, omega), Omega).is_zero();
}

/// Optional bases to use instead of the monomial basis of Lambda^{2,0} and
/// the computed basis of P^{1,1}. Supplied bases are checked: elements of
/// the right space, right count, and a unit (nonzero) maximal minor.
template <class S>
struct HodgeRiemannBases {
  std::vector<Form<S>> lambda20;
  std::vector<Form<S>> p11;
};

inline bool is_invertible_scalar(const GaussRational& x) { return !x.is_zero(); }
inline bool is_invertible_scalar(const AnalyticScalar& x) { return x.is_unit(); }

template <class S>
bool spans_with_unit_minor(const std::vector<Form<S>>& forms, const std::vector<MultiIndexPair>& monos) {
  const std::size_t r = forms.size();
  if (r > monos.size()) return false;
  Matrix<S> m;
  for (const auto& f : forms) m.push_back(coordinates(f, monos));
  // try column subsets greedily: drop one column at a time when r = cols - 1
  if (r == monos.size()) return is_invertible_scalar(ring_determinant(m));
  if (r + 1 == monos.size()) {
    for (std::size_t skip = monos.size(); skip-- > 0;) {
      Matrix<S> sub(r, std::vector<S>());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < monos.size(); ++c)
          if (c != skip) sub[i].push_back(m[i][c]);
      if (is_invertible_scalar(ring_determinant(sub))) return true;
    }
    return false;
  }
  throw Error(ErrorCode::Domain, "unit-minor test needs a basis of corank at most one");
}

struct HodgeRiemannResult {
  Verdict verdict;
  json gram20;
  json gram11;
  std::size_t p11_dim = 0;
};

/// (i) Q positive definite on Lambda^{2,0}; (ii) Q positive definite on
/// P^{1,1}; (iii) omega^2 ^ Omega != 0.
template <class S>
HodgeRiemannResult check_hodge_riemann(const Form<S>& omega, const Form<S>& Omega,
                                       const HodgeRiemannBases<S>* bases = nullptr) {
  const int n = omega.dim();
  if (n < 3) throw Error(ErrorCode::Domain, "Hodge-Riemann checks need n >= 3");
  if (!Omega.is_homogeneous_of(n - 2, n - 2) || !omega.is_homogeneous_of(1, 1))
    throw Error(ErrorCode::BidegreeMismatch, "need omega (1,1) and Omega (n-2,n-2)");
  if (!is_real(Omega)) throw Error(ErrorCode::NotReal, "Omega is not real");
  HodgeRiemannResult res;
  std::vector<Form<S>> b20 = bases && !bases->lambda20.empty() ? bases->lambda20 : monomial_forms<S>(n, 2, 0);
  if (bases && !bases->lambda20.empty() && !spans_with_unit_minor(b20, monomial_basis(n, 2, 0)))
    throw Error(ErrorCode::Verification, "supplied (2,0) basis is not a basis");
  auto g20 = gram_Q(Omega, 2, 0, b20);
  res.gram20 = gram_to_json(g20.entries);
  Verdict v20 = hermitian_positive_definite(g20.entries);

  std::vector<Form<S>> b11;
  bool have_p11 = true;
  if (bases && !bases->p11.empty()) {
    b11 = bases->p11;
    for (const auto& b : b11)
      if (!wedges_to_zero(b, omega, Omega)) throw Error(ErrorCode::Verification, "supplied P^{1,1} element is not primitive");
    if (wedge(omega, Omega).is_zero() || b11.size() + 1 != static_cast<std::size_t>(n * n) ||
        !spans_with_unit_minor(b11, monomial_basis(n, 1, 1)))
      throw Error(ErrorCode::Verification, "supplied P^{1,1} basis does not span");
  } else if (auto ps = primitive_space(omega, Omega, 1, 1)) {
    b11 = ps->basis;
  } else {
    have_p11 = false;
  }
  res.p11_dim = b11.size();
  Verdict v11 = Verdict::inconclusive("P^{1,1} basis not computable with unit pivots");
  if (have_p11) {
    auto g11 = gram_Q(Omega, 1, 1, b11);
    res.gram11 = gram_to_json(g11.entries);
    v11 = hermitian_positive_definite(g11.entries);
  }
  bool split = !wedge(wedge(omega, omega), Omega).is_zero();

  json ev = {{"degree_2_0", v20.to_json()}, {"degree_1_1", v11.to_json()}, {"omega2_Omega_nonzero", split},
             {"p11_dim", res.p11_dim}, {"gram_2_0", res.gram20}, {"gram_1_1", res.gram11}};
  if (v20.is_refuted() || v11.is_refuted() || !split) {
    std::string why = v20.is_refuted() ? "Q not positive definite on Lambda^{2,0}"
                      : v11.is_refuted() ? "Q not positive definite on P^{1,1}"
                                         : "omega^2 ^ Omega = 0";
    res.verdict = Verdict::refuted(why, ev);
  } else if (v20.is_proven() && v11.is_proven()) {
    res.verdict = Verdict::proven("Hodge-Riemann in degrees (2,0), (1,1), (0,2)", ev);
  } else {
    res.verdict = Verdict::inconclusive("positivity undecided", ev);
  }
  return res;
}

Verdict is_balanced(const ComplexLieAlgebra& g, const RForm& F);
/// Unimodular algebras: balanced iff F^{n-1} ^ d(theta) = 0 for every
/// coframe element theta. Throws NotUnimodular.
Verdict invariant_balanced_criterion(const ComplexLieAlgebra& g, const RForm& F);

template <class S>
struct HRStructure {
  std::optional<Form<S>> F;
  Form<S> omega;
  Form<S> Omega;
};

/// Anything with `Form<S> d(const Form<S>&) const`.
template <class Ctx, class S>
concept DifferentialContext = requires(const Ctx& c, const Form<S>& a) {
  { c.d(a) } -> std::same_as<Form<S>>;
};

/// Factorization, closedness of Omega and omega ^ Omega, Hodge-Riemann
/// conditions, and positive definiteness of Omega. If F is absent the
/// factorization is taken implicitly: omega ^ Omega must be positive
/// definite as an (n-1,n-1)-form, which guarantees the root F.
template <class S, class Ctx>
  requires DifferentialContext<Ctx, S>
Verdict check_hr_balanced(const Ctx& ctx, const std::optional<Form<S>>& F, const Form<S>& omega, const Form<S>& Omega,
                          const HodgeRiemannBases<S>* bases = nullptr) {
  const int n = omega.dim();
  json ev = json::object();
  Form<S> phi = wedge(omega, Omega);
  if (F) {
    Form<S> residual = divided_power(*F, n - 1) - phi;
    if (!residual.is_zero())
      return Verdict::refuted("F^{n-1}/(n-1)! != omega ^ Omega", {{"residual", residual.str()}});
    ev["factorization"] = "exact";
  } else {
    auto pd = is_positive_definite(phi);
    if (pd.status != PositivityStatus::PositiveDefinite)
      return Verdict::inconclusive("omega ^ Omega not shown positive definite", {{"phi", pd.to_json()}});
    ev["factorization"] = "implicit root of a positive definite (n-1,n-1)-form";
  }
  Form<S> dO = ctx.d(Omega);
  if (!dO.is_zero()) return Verdict::refuted("Omega is not closed", {{"d_Omega", dO.str()}});
  Form<S> dphi = ctx.d(phi);
  if (!dphi.is_zero()) return Verdict::refuted("omega ^ Omega is not closed", {{"d_omega_Omega", dphi.str()}});
  ev["closed"] = true;
  auto hr = check_hodge_riemann(omega, Omega, bases);
  ev["hodge_riemann"] = hr.verdict.to_json();
  if (!hr.verdict.is_proven()) return Verdict{hr.verdict.status, hr.verdict.detail, ev};
  auto pd = is_positive_definite(Omega);
  ev["Omega_positive_definite"] = pd.to_json();
  if (pd.status == PositivityStatus::NotPositive)
    throw Error(ErrorCode::Verification, "Hodge-Riemann Omega fails positive definiteness");
  if (pd.status != PositivityStatus::PositiveDefinite)
    return Verdict::inconclusive("positive definiteness of Omega undecided", ev);
  ev["F"] = F ? F->str() : std::string("implicit");
  ev["omega"] = omega.str();
  ev["Omega"] = Omega.str();
  return Verdict::proven("Hodge-Riemann balanced structure; Omega is a closed positive definite (n-2,n-2)-form", ev);
}

/// Small grid of invariant candidates (omega diagonal with entries in {1,2},
/// Omega = omega^{n-2}/(n-1)!, F = omega). Proven with the first passing
/// structure; otherwise Inconclusive (exhausting a grid proves nothing).
Verdict hr_candidate_grid(const ComplexLieAlgebra& g);

}  // namespace hforms
