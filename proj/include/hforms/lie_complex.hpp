#pragma once

// Lie algebras with complex structure given by structure equations on a
// (1,0)-coframe alpha^1..alpha^n. The complexified frame used for bracket
// computations is W = (Z_1..Z_n, conj Z_1..conj Z_n), dual to
// theta = (alpha^1..alpha^n, conj alpha^1..conj alpha^n).

#include <string>
#include <vector>

#include "hforms/exterior.hpp"
#include "hforms/linalg.hpp"

namespace hforms {

/// Replace each coframe element by a 1-form: images[k] for alpha^{k+1},
/// images[n+k] for conj(alpha^{k+1}).
template <class S>
Form<S> substitute(const Form<S>& a, const std::vector<Form<S>>& images) {
  const int n = a.dim();
  Form<S> r(n);
  for (const auto& [key, c] : a.terms()) {
    Form<S> m = Form<S>::constant(n, c);
    for (int i : mask_indices(key.hol)) m = wedge(m, images[i - 1]);
    for (int j : mask_indices(key.anti)) m = wedge(m, images[n + j - 1]);
    r += m;
  }
  return r;
}

/// Leibniz extension of d given the differentials of the 2n coframe
/// elements (same layout as `substitute`). Coefficients are treated as
/// constants.
template <class S>
Form<S> structure_d(const std::vector<RForm>& dtheta, const Form<S>& a) {
  const int n = a.dim();
  Form<S> r(n);
  for (const auto& [key, c] : a.terms()) {
    std::vector<int> factors;
    for (int i : mask_indices(key.hol)) factors.push_back(i - 1);
    for (int j : mask_indices(key.anti)) factors.push_back(n + j - 1);
    std::uint32_t ph = 0, pa = 0;
    for (std::size_t t = 0; t < factors.size(); ++t) {
      int f = factors[t];
      std::uint32_t bit = 1u << (f % n);
      MultiIndexPair suffix{f < n ? key.hol & ~(ph | bit) : 0u, key.anti & ~(pa | (f < n ? 0u : bit))};
      MultiIndexPair prefix{ph, pa};
      for (const auto& [dk, dc] : dtheta[f].terms()) {
        auto m1 = monomial_wedge(prefix, dk);
        if (!m1) continue;
        auto m2 = monomial_wedge(m1->second, suffix);
        if (!m2) continue;
        int sign = m1->first * m2->first * (t % 2 ? -1 : 1);
        S v = c * scalar_lift<S>(dc);
        r.add(m2->second, sign > 0 ? v : S() - v);
      }
      if (f < n)
        ph |= bit;
      else
        pa |= bit;
    }
  }
  return r;
}

using CVector = std::vector<GaussRational>;

class ComplexLieAlgebra {
 public:
  ComplexLieAlgebra() = default;
  /// d_alpha[j-1] = d alpha^j. `diagnostics` records input problems found
  /// while building (for example a vanishing monomial such as a1^a1); a
  /// nonempty list makes validate() fail.
  ComplexLieAlgebra(std::string name, int n, std::vector<RForm> d_alpha, std::vector<std::string> diagnostics = {});

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  const RForm& d_alpha(int j) const { return d_alpha_.at(j - 1); }
  const std::vector<RForm>& structure() const { return d_alpha_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  /// Proven iff d^2 = 0 on the coframe and no d alpha^j has a (0,2) part.
  Verdict validate() const;

  RForm d(const RForm& a) const { return structure_d(dtheta_, a); }
  RForm del(const RForm& a) const;
  RForm delbar(const RForm& a) const;
  const std::vector<RForm>& coframe_differentials() const { return dtheta_; }

  /// 1-form alpha^k (hol) or its conjugate.
  RForm coframe(int k, bool conjugate = false) const;

  /// [W_a, W_b] in W coordinates (a, b 0-based in 0..2n-1).
  CVector bracket(int a, int b) const;
  CVector bracket(const CVector& x, const CVector& y) const;
  /// trace of ad_{W_a}.
  GaussRational trace_ad(int a) const;

  /// Isomorphic algebra in the coframe beta^j = sum_k P[j][k] alpha^k.
  ComplexLieAlgebra change_coframe(const Matrix<GaussRational>& P, std::string name = "") const;

 private:
  std::string name_;
  int n_ = 0;
  std::vector<RForm> d_alpha_;
  std::vector<RForm> dtheta_;
  std::vector<std::string> diagnostics_;
};

bool is_unimodular(const ComplexLieAlgebra& g);
/// Subspaces of g_C spanned by the lower central series, g^1 = [g, g] first.
std::vector<Matrix<GaussRational>> lower_central_series(const ComplexLieAlgebra& g);
bool is_nilpotent(const ComplexLieAlgebra& g);
bool is_abelian(const ComplexLieAlgebra& g);
/// d(Lambda^{1,0}) in Lambda^{1,1}
bool is_abelian_J(const ComplexLieAlgebra& g);
/// d(Lambda^{1,0}) in Lambda^{2,0}
bool is_complex_parallelizable(const ComplexLieAlgebra& g);

struct AdaptedBasis {
  /// rows: new coframe elements in the old coframe
  Matrix<GaussRational> P;
  /// level[j]: filtration step at which beta^{j+1} appears (1 = del-closed)
  std::vector<int> level;
  ComplexLieAlgebra algebra;
};

/// Coframe with del beta^j in Lambda^2 <beta^1..beta^{j-1}>. Throws
/// NotNilpotent.
AdaptedBasis nilpotent_adapted_basis(const ComplexLieAlgebra& g);

/// Proven iff the real derived algebra [g,g] is J-invariant; Refuted carries
/// a real X in [g,g] with JX outside it.
Verdict commutator_J_invariant(const ComplexLieAlgebra& g);

struct IdealCertificate {
  /// complex basis of ker(alpha) cap ker(conj alpha) in W coordinates
  Matrix<GaussRational> basis;
  Verdict verdict;
};

/// For closed alpha != 0 in Lambda^{1,0}: the J-invariant codimension-2
/// ideal ker alpha cap ker conj(alpha). Throws NotClosed.
IdealCertificate ideal_from_closed_oneform(const ComplexLieAlgebra& g, const RForm& alpha);

}  // namespace hforms
