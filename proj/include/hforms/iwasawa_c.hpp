#pragma once

// The non-invariant Hodge-Riemann balanced structure on Iwasawa x C.
// Coframe phi^1..phi^4 with d phi^3 = -phi^{12}, the others closed, and
// phi^4 = du for the coordinate u on C. Coefficients live in the analytic
// ring of u, ubar, U = |u|^2.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hforms/exterior.hpp"
#include "hforms/lie_complex.hpp"
#include "hforms/scalar.hpp"

namespace hforms {

class IwasawaCContext {
 public:
  IwasawaCContext();

  /// Structure part plus (dc/du) phi^4 ^ m + (dc/dubar) conj(phi^4) ^ m.
  AForm d(const AForm& a) const;
  AForm del(const AForm& a) const;
  AForm delbar(const AForm& a) const;
  /// The same derivation evaluated at u in floating point (coefficient
  /// derivatives taken exactly, everything else numeric).
  NForm d_numeric(const AForm& a, std::complex<double> u) const;

  /// Underlying Lie algebra (the invariant core).
  const ComplexLieAlgebra& core() const { return core_; }
  int dim() const { return 4; }

 private:
  ComplexLieAlgebra core_;
};

AForm build_Omega();
AForm build_omega0();
/// (2,0)-forms Psi^1..Psi^6 diagonalizing Q on Lambda^{2,0}.
std::vector<AForm> build_Psi();
/// Basis Xi_1..Xi_15 of the primitive (1,1)-forms.
std::vector<AForm> build_Xi();

/// Printed values: Q(Psi^a, Psi^a), omega0 ^ Omega, the matrix B, its
/// minors, and f(U) = e^{2U}(3U-1) + 4.
std::vector<AnalyticScalar> expected_psi_gram();
AForm expected_omega0_Omega();
Matrix<AnalyticScalar> matrix_B();
UPolynomial expected_det_B2();
UPolynomial expected_det_B();
UPolynomial f_factor();

struct IwasawaCCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  /// offending identity when failed
  std::string identity;
  double residual = 0;
  json evidence = json::object();
};

struct IwasawaCReport {
  std::vector<IwasawaCCheck> checks;
  int samples = 0;
  std::uint64_t seed = 0;
  /// the u = 0 restriction viewed as an invariant structure
  json invariant_core = json::object();
  bool core_rejected = false;
  bool depends_on_U = false;

  bool passed() const;
  /// Throws Error(Verification) naming the first failed identity.
  void require() const;
  json to_json() const;
};

constexpr double kIwasawaTolerance = 1e-9;

/// The ten checks. Exact in the analytic ring except the sampled numeric
/// cross-checks (relative tolerance kIwasawaTolerance, |u| <= 2).
IwasawaCReport verify_all(int samples = 32, std::uint64_t seed = 20240601);

}  // namespace hforms
