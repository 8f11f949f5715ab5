#pragma once

// Witnesses against positive closed forms on Lie algebras with complex
// structure: a 1-form scan, a search over the image of d in the positive
// cones, the nilpotent procedure, the abelian-ideal family, and the complex
// parallelizable check. Every witness is re-verified exactly before it is
// reported.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hforms/lie_complex.hpp"
#include "hforms/positivity.hpp"

namespace hforms {

enum class WitnessKind { OneFormDelClosed, OneFormDelbarClosed, ConePositiveImage, RankOneImage };
std::string to_string(WitnessKind k);

struct WitnessTerm {
  RForm eta;
  GaussRational c;
};

/// (d gamma)^{m,m} = image = sum_j c_j eta_j ^ conj(eta_j), the c_j sharing
/// one complex phase. The eta_j are (m,0)-forms, or primitive (1,1)-forms
/// when `primitive_terms` is set (m = 2 only).
struct ObstructionWitness {
  WitnessKind kind = WitnessKind::ConePositiveImage;
  int m = 0;
  RForm gamma;
  RForm image;
  std::vector<WitnessTerm> terms;
  bool primitive_terms = false;
  /// the 1-form behind gamma for the OneForm kinds
  std::optional<RForm> alpha;
  bool invariant_F_only = false;
  std::string sketch;

  json to_json() const;
};

/// Exact re-verification. With F given, primitive terms are checked against
/// F^{n-1}; without it they are accepted only for OneFormDelbarClosed on a
/// unimodular algebra (invariant balanced F).
Verdict verify_witness(const ComplexLieAlgebra& g, const ObstructionWitness& w,
                       const std::optional<RForm>& F = std::nullopt);

struct ObstructionResult {
  Verdict verdict;
  std::optional<ObstructionWitness> witness;
  json to_json() const;
};

/// Witness of the 1-form lemma for alpha with del(alpha) != 0 and
/// del delbar(alpha) = 0 (kind OneFormDelClosed) or delbar(alpha) != 0,
/// del delbar(alpha) = 0 (kind OneFormDelbarClosed). nullopt otherwise.
std::optional<ObstructionWitness> oneform_witness(const ComplexLieAlgebra& g, const RForm& alpha);

/// S = ker(del delbar) on Lambda^{1,0}. Refuted (no Hodge-Riemann balanced
/// metric with invariant F) when S holds a non-closed form; Proven
/// (no obstruction of this shape) when S is all closed. Throws NotUnimodular.
ObstructionResult scan_oneform_obstruction(const ComplexLieAlgebra& g);

enum class ConeMode { Decomposable_pK, PSD_cpd, PrimitivePSD_hrt };
std::string to_string(ConeMode m);
ConeMode cone_mode_from_string(const std::string& s);

struct ConeSearchConfig {
  int restarts = 64;
  int iterations = 500;
  std::uint64_t seed = 20240601;
};

/// Search for gamma in Lambda^{2n-2p-1} whose (n-p,n-p) image is a nonzero
/// semidefinite combination (simple generators for pK, primitive (1,1)
/// generators w.r.t. F for hrt, where p = n-2). Refuted means an obstruction
/// exists and carries the verified witness; otherwise Inconclusive. Never
/// Proven.
ObstructionResult cone_image_search(const ComplexLieAlgebra& g, ConeMode mode, int p,
                                    const std::optional<RForm>& F = std::nullopt, const ConeSearchConfig& cfg = {});

/// Nilpotent algebras: Proven("only abelian ones are Hodge-Riemann
/// balanced") with the witness found along the adapted basis, or vacuously
/// for abelian g. Throws NotNilpotent.
ObstructionResult nilpotent_verdict(const ComplexLieAlgebra& g);

/// Complex parallelizable algebras: Proven("only tori") with a non-closed
/// holomorphic coframe element as witness. Throws NotComplexParallelizable.
ObstructionResult complex_parallelizable_verdict(const ComplexLieAlgebra& g);

/// d alpha^1 = 0, d alpha^j = v_j alpha^{1 1bar} - conj(l_j) alpha^{1j} - l_j alpha^{j 1bar}
/// for j = 2..n; v and lambda hold entries for j = 2..n.
struct CseabidParams {
  std::vector<GaussRational> v;
  std::vector<GaussRational> lambda;
};
ComplexLieAlgebra cseabid(const CseabidParams& params, std::string name = "cseabid");

enum class CseabidKind { Kahler, Obstructed, Abelian, Inconclusive };
std::string to_string(CseabidKind k);

struct CseabidClassification {
  CseabidKind kind = CseabidKind::Inconclusive;
  ComplexLieAlgebra algebra;
  int l = 0;
  /// Kahler: closed positive definite (1,1)-form
  std::optional<RForm> kahler_form;
  /// Obstructed: the normalized coframe (rows in the original coframe), the
  /// algebra in it, and the witness in both coframes
  Matrix<GaussRational> normalization;
  std::optional<ComplexLieAlgebra> normalized;
  std::optional<ObstructionWitness> normalized_witness;
  std::optional<ObstructionWitness> witness;
  Verdict verdict;
  json to_json() const;
};

/// Requires n >= 3 (v and lambda of equal length n-1).
CseabidClassification classify_cseabid(const CseabidParams& params);

}  // namespace hforms
