#pragma once

// Positivity cones for (k,k)-forms: strongly positive, positive definite
// (through the Hermitian pairing Q), transverse; and the (n-1)-th root of
// a positive (n-1,n-1)-form.

#include <cstdint>
#include <optional>
#include <vector>

#include "hforms/exterior.hpp"
#include "hforms/linalg.hpp"

namespace hforms {

template <class S>
struct GramMatrix {
  std::vector<Form<S>> basis;
  Matrix<S> entries;
};

/// Q(a, b) = i^{p-q} (-1)^{k(k-1)/2} vol_coefficient(a ^ conj(b) ^ Omega), k = p + q.
template <class S>
S pairing_Q(const Form<S>& Omega, int p, int q, const Form<S>& a, const Form<S>& b) {
  const int k = p + q;
  int e = p - q + 2 * ((k * (k - 1) / 2) % 2);
  Form<S> top = wedge(wedge(a, conj(b)), Omega);
  if (top.is_zero()) return S();
  return scalar_lift<S>(i_power(e)) * vol_coefficient(top);
}

template <class S>
GramMatrix<S> gram_Q(const Form<S>& Omega, int p, int q, const std::vector<Form<S>>& basis) {
  const int n = Omega.dim();
  const int k = p + q;
  if (!Omega.is_zero() && !Omega.is_homogeneous_of(n - k, n - k))
    throw Error(ErrorCode::BidegreeMismatch, "Omega must have bidegree (n-k, n-k)");
  for (const auto& b : basis)
    if (!b.is_homogeneous_of(p, q)) throw Error(ErrorCode::BidegreeMismatch, "basis form has the wrong bidegree");
  GramMatrix<S> g;
  g.basis = basis;
  const std::size_t m = basis.size();
  g.entries.assign(m, std::vector<S>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g.entries[a][b] = pairing_Q(Omega, p, q, basis[a], basis[b]);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      if (!(g.entries[a][b] == conj(g.entries[b][a])))
        throw Error(ErrorCode::NotReal, "Q is not Hermitian; Omega is not real");
  return g;
}

template <class S>
std::vector<Form<S>> monomial_forms(int n, int p, int q) {
  std::vector<Form<S>> out;
  for (const auto& k : monomial_basis(n, p, q)) out.push_back(Form<S>::monomial(n, k, S(1)));
  return out;
}

json gram_to_json(const Matrix<GaussRational>& m);
json gram_to_json(const Matrix<AnalyticScalar>& m);

/// G positive definite as a Hermitian form (exact). Refuted evidence holds
/// x with sum conj(x_a) G_ab x_b <= 0.
Verdict hermitian_positive_definite(const Matrix<GaussRational>& G);
/// Analytic entries: block split by the off-diagonal pattern, leading minors
/// as UPolynomials decided by sign_on_ray. Inconclusive when a minor is not
/// a function of U alone or its sign is undecided.
Verdict hermitian_positive_definite(const Matrix<AnalyticScalar>& G);

enum class PositivityStatus { StronglyPositive, PositiveDefinite, Transverse, NotPositive, Inconclusive };
std::string to_string(PositivityStatus s);

struct PositivityVerdict {
  PositivityStatus status = PositivityStatus::Inconclusive;
  std::string detail;
  /// NotPositive: the form psi with Q(psi, psi) <= 0 recomputed exactly.
  std::optional<RForm> witness;
  json evidence = json::object();
  json to_json() const;
};

/// Omega (k,k) real: positive definite iff Q on Lambda^{n-k,0} is.
PositivityVerdict is_positive_definite(const RForm& Omega);
/// Analytic coefficients: positivity for all U >= 0. Refuted carries U0.
PositivityVerdict is_positive_definite(const AForm& Omega);

struct TransverseConfig {
  int samples = 10000;
  int refinements = 50;
  std::uint64_t seed = 20240601;
};

PositivityVerdict is_transverse(const RForm& Omega, const TransverseConfig& cfg = {});
/// PD shortcut only; analytic transversality is never refuted here.
PositivityVerdict is_transverse(const AForm& Omega);

/// (iota_xi psi) ^ psi = 0 for all frame (k-1)-vectors xi.
template <class S>
bool plucker_decomposable(const Form<S>& psi) {
  auto bd = psi.bidegree();
  if (!bd) return psi.is_zero();
  if (bd->second != 0) return false;
  const int k = bd->first;
  if (k <= 1) return true;
  for (const auto& key : monomial_basis(psi.dim(), k - 1, 0)) {
    Form<S> c = psi;
    auto idx = mask_indices(key.hol);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) c = contract_frame(false, *it, c);
    if (!wedge(c, psi).is_zero()) return false;
  }
  return true;
}

/// Exact check of Omega = i^{k^2} sum_j psi_j ^ conj(psi_j) with each psi_j
/// decomposable.
Verdict check_strong_positivity_certificate(const RForm& Omega, const std::vector<RForm>& psis);
Verdict check_strong_positivity_certificate(const AForm& Omega, const std::vector<AForm>& psis);

/// Hermitian matrix h with F = i sum h_{ab} phi^a ^ conj(phi)^b.
template <class S>
Form<S> hermitian_to_form(int n, const Matrix<S>& h) {
  Form<S> f(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!is_zero(h[a][b])) f += Form<S>::from_indices(n, {a + 1}, {b + 1}, scalar_lift<S>(GaussRational::i()) * h[a][b]);
  return f;
}

template <class S>
Matrix<S> form_to_hermitian(const Form<S>& F) {
  const int n = F.dim();
  Matrix<S> h(n, std::vector<S>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      h[a][b] = F.coefficient(MultiIndexPair{1u << a, 1u << b}) * scalar_lift<S>(-GaussRational::i());
  return h;
}

struct RootMetric {
  /// Exact F when the root stays rational.
  std::optional<RForm> exact;
  /// Always set: floating F.
  NForm numeric;
  /// max |F^{n-1}/(n-1)! - Phi|
  double residual = 0;
};

/// F with F^{n-1}/(n-1)! = Phi. Throws NotPositive if Phi is not positive
/// definite.
RootMetric root_metric(const RForm& Phi);
/// Floating version (used pointwise for analytic inputs).
RootMetric root_metric(const NForm& Phi);

/// The Hermitian matrix A_{jk} = vol_coefficient(i phi^k ^ conj(phi)^j ^ Phi)
/// of an (n-1,n-1)-form; F^{n-1}/(n-1)! has A = det(h) h^{-1}.
template <class S>
Matrix<S> root_pairing_matrix(const Form<S>& Phi) {
  const int n = Phi.dim();
  Matrix<S> A(n, std::vector<S>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      A[j][k] = vol_coefficient(wedge(Form<S>::from_indices(n, {k + 1}, {j + 1}, scalar_lift<S>(GaussRational::i())), Phi));
  return A;
}

}  // namespace hforms
