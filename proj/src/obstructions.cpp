#include "hforms/obstructions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "hforms/hodge_riemann.hpp"

namespace hforms {

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::OneFormDelClosed: return "OneFormDelClosed";
    case WitnessKind::OneFormDelbarClosed: return "OneFormDelbarClosed";
    case WitnessKind::ConePositiveImage: return "ConePositiveImage";
    case WitnessKind::RankOneImage: return "RankOneImage";
  }
  return "?";
}

std::string to_string(ConeMode m) {
  switch (m) {
    case ConeMode::Decomposable_pK: return "pk";
    case ConeMode::PSD_cpd: return "cpd";
    case ConeMode::PrimitivePSD_hrt: return "hrt";
  }
  return "?";
}

ConeMode cone_mode_from_string(const std::string& s) {
  if (s == "pk") return ConeMode::Decomposable_pK;
  if (s == "cpd") return ConeMode::PSD_cpd;
  if (s == "hrt") return ConeMode::PrimitivePSD_hrt;
  throw Error(ErrorCode::Domain, "unknown cone mode '" + s + "' (expected pk, cpd or hrt)");
}

std::string to_string(CseabidKind k) {
  switch (k) {
    case CseabidKind::Kahler: return "Kahler";
    case CseabidKind::Obstructed: return "Obstructed";
    case CseabidKind::Abelian: return "Abelian";
    case CseabidKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

json ObstructionWitness::to_json() const {
  json t = json::array();
  for (const auto& term : terms) t.push_back({{"eta", term.eta.str()}, {"c", term.c.str()}});
  json j = {{"kind", to_string(kind)}, {"bidegree", {m, m}}, {"gamma", gamma.str()}, {"image", image.str()},
            {"terms", t}, {"primitive_terms", primitive_terms}, {"invariant_F_only", invariant_F_only},
            {"sketch", sketch}};
  if (alpha) j["alpha"] = alpha->str();
  return j;
}

json ObstructionResult::to_json() const {
  json j = verdict.to_json();
  if (witness) j["witness"] = witness->to_json();
  return j;
}

namespace {

/// c with a = c b, if any (b != 0).
std::optional<GaussRational> ratio(const RForm& a, const RForm& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [k, bc] = *b.terms().begin();
  GaussRational c = a.coefficient(k) / bc;
  if (a == b * c) return c;
  return std::nullopt;
}

RForm pair_product(const RForm& eta) { return wedge(eta, conj(eta)); }

Verdict reject(const std::string& why) { return Verdict::refuted("witness rejected: " + why); }

std::string sketch_for(WitnessKind kind, int m, bool primitive) {
  switch (kind) {
    case WitnessKind::OneFormDelClosed:
      return "alpha has del(alpha) != 0 and del delbar(alpha) = 0. For gamma = del(alpha) ^ conj(alpha) the (2,2) part "
             "of d gamma is c eta ^ conj(eta) with eta = del(alpha) a nonzero (2,0)-form. On a compact quotient, "
             "Omega ^ d gamma integrates to zero, while positivity of Q on (2,0)-forms makes it nonzero. So there is "
             "no Hodge-Riemann balanced structure.";
    case WitnessKind::OneFormDelbarClosed:
      return "alpha has delbar(alpha) != 0 and del delbar(alpha) = 0. For gamma = delbar(alpha) ^ conj(alpha) the "
             "(2,2) part of d gamma is c mu ^ conj(mu) with mu = delbar(alpha). On a unimodular algebra mu is "
             "primitive for every invariant balanced F, and Q is positive on primitive (1,1)-forms of a "
             "Hodge-Riemann structure. So no invariant balanced F is of Hodge-Riemann type.";
    case WitnessKind::RankOneImage:
      return "(d gamma)^{" + std::to_string(m) + "," + std::to_string(m) +
             "} is a nonzero sum c_j psi_j ^ conj(psi_j) with simple psi_j and c_j of one phase. Pairing with a "
             "closed transverse form gives a contradiction on a compact quotient, so there is no closed "
             "transverse form of the complementary degree.";
    case WitnessKind::ConePositiveImage:
      if (primitive)
        return "(d gamma)^{2,2} is a nonzero sum c_j mu_j ^ conj(mu_j) with mu_j primitive for F and c_j of one "
               "phase. Q is positive on primitive (1,1)-forms of a Hodge-Riemann structure, so F is not of "
               "Hodge-Riemann type.";
      return "(d gamma)^{" + std::to_string(m) + "," + std::to_string(m) +
             "} is a nonzero sum c_j eta_j ^ conj(eta_j) with c_j of one phase. Pairing with a closed positive "
             "definite form gives a contradiction on a compact quotient, so no closed positive definite form of the "
             "complementary degree exists.";
  }
  return "";
}

}  // namespace

Verdict verify_witness(const ComplexLieAlgebra& g, const ObstructionWitness& w, const std::optional<RForm>& F) {
  const int n = g.dim();
  const int m = w.m;
  if (m < 1 || m > n) return reject("bidegree out of range");
  if (w.image.is_zero() && !w.primitive_terms) return reject("image is zero");
  if (!w.image.is_homogeneous_of(m, m)) return reject("image is not of bidegree (m,m)");
  RForm dg = g.d(w.gamma).component(m, m);
  if (dg != w.image) return reject("(d gamma)^{m,m} differs from the stated image");
  if (w.terms.empty()) return reject("no certificate terms");
  RForm sum(n);
  for (const auto& t : w.terms) {
    if (t.c.is_zero()) return reject("zero coefficient");
    if (t.eta.is_zero()) return reject("zero generator");
    if (w.primitive_terms) {
      if (m != 2 || !t.eta.is_homogeneous_of(1, 1)) return reject("primitive generators must be (1,1)-forms");
    } else if (!t.eta.is_homogeneous_of(m, 0)) {
      return reject("generators must be (m,0)-forms");
    }
    GaussRational rel = t.c * conj(w.terms.front().c);
    if (!rel.is_real() || sgn(rel.re()) <= 0) return reject("coefficients do not share one phase");
    sum += pair_product(t.eta) * t.c;
  }
  if (sum != w.image) return reject("certificate identity fails");
  if (w.kind == WitnessKind::RankOneImage)
    for (const auto& t : w.terms)
      if (!plucker_decomposable(t.eta)) return reject("generator is not simple");
  if (w.kind == WitnessKind::OneFormDelClosed || w.kind == WitnessKind::OneFormDelbarClosed) {
    if (!w.alpha || w.alpha->is_zero() || !w.alpha->is_homogeneous_of(1, 0)) return reject("missing (1,0)-form alpha");
    const RForm& a = *w.alpha;
    if (!g.del(g.delbar(a)).is_zero()) return reject("del delbar(alpha) != 0");
    bool del_kind = w.kind == WitnessKind::OneFormDelClosed;
    RForm base = del_kind ? g.del(a) : g.delbar(a);
    if (base.is_zero()) return reject(del_kind ? "del(alpha) = 0" : "delbar(alpha) = 0");
    if (w.gamma != wedge(base, conj(a))) return reject("gamma is not built from alpha");
    if (w.terms.size() != 1 || w.terms.front().eta != base) return reject("generator is not the derivative of alpha");
    if (del_kind == w.primitive_terms) return reject("generator type does not match the kind");
  }
  if (w.primitive_terms) {
    if (F) {
      RForm Fp = wedge_power(*F, n - 1);
      for (const auto& t : w.terms)
        if (!wedge(t.eta, Fp).is_zero()) return reject("generator is not primitive for F");
    } else if (w.kind != WitnessKind::OneFormDelbarClosed || !w.invariant_F_only || !is_unimodular(g)) {
      return reject("primitivity needs F, or an invariant F on a unimodular algebra");
    }
  }
  return Verdict::proven("witness verified", {{"witness", w.to_json()}});
}

std::optional<ObstructionWitness> oneform_witness(const ComplexLieAlgebra& g, const RForm& alpha) {
  if (alpha.is_zero() || !alpha.is_homogeneous_of(1, 0)) throw Error(ErrorCode::Domain, "need a nonzero (1,0)-form");
  if (!g.del(g.delbar(alpha)).is_zero()) return std::nullopt;
  RForm da = g.del(alpha);
  RForm dba = g.delbar(alpha);
  ObstructionWitness w;
  w.m = 2;
  w.alpha = alpha;
  if (!da.is_zero()) {
    w.kind = WitnessKind::OneFormDelClosed;
    w.gamma = wedge(da, conj(alpha));
    w.terms.push_back({da, 1});
  } else if (!dba.is_zero()) {
    w.kind = WitnessKind::OneFormDelbarClosed;
    w.gamma = wedge(dba, conj(alpha));
    w.terms.push_back({dba, 1});
    w.primitive_terms = true;
    w.invariant_F_only = true;
  } else {
    return std::nullopt;
  }
  w.image = g.d(w.gamma).component(2, 2);
  RForm pp = pair_product(w.terms.front().eta);
  // mu ^ conj(mu) can vanish for a (1,1)-form mu; then Q(mu, mu) = 0 is the contradiction itself
  auto c = pp.is_zero() && w.image.is_zero() ? std::optional<GaussRational>(1) : ratio(w.image, pp);
  if (!c) throw Error(ErrorCode::Verification, "1-form witness image is not a multiple of eta ^ conj(eta)");
  w.terms.front().c = *c;
  w.sketch = sketch_for(w.kind, 2, w.primitive_terms);
  return w;
}

namespace {

ObstructionResult checked(const ComplexLieAlgebra& g, ObstructionWitness w, Status status, const std::string& detail,
                          const std::optional<RForm>& F = std::nullopt) {
  Verdict v = verify_witness(g, w, F);
  if (!v.is_proven()) throw Error(ErrorCode::Verification, "internal witness failed verification: " + v.detail);
  return {Verdict{status, detail, {{"witness", w.to_json()}}}, std::move(w)};
}

}  // namespace

ObstructionResult scan_oneform_obstruction(const ComplexLieAlgebra& g) {
  if (!is_unimodular(g)) throw Error(ErrorCode::NotUnimodular, "1-form scan needs a unimodular algebra");
  const int n = g.dim();
  auto target = monomial_basis(n, 2, 1);
  Matrix<GaussRational> cond(target.size(), std::vector<GaussRational>(n));
  for (int k = 0; k < n; ++k) {
    auto c = coordinates(g.del(g.delbar(holo(n, k + 1))), target);
    for (std::size_t r = 0; r < target.size(); ++r) cond[r][k] = c[r];
  }
  auto S = kernel(cond, n);
  auto b10 = monomial_basis(n, 1, 0);
  std::vector<RForm> forms;
  for (const auto& v : S) forms.push_back(from_coordinates(n, v, b10));
  for (bool want_del : {true, false})
    for (const auto& a : forms) {
      if ((want_del ? g.del(a) : g.delbar(a)).is_zero()) continue;
      auto w = oneform_witness(g, a);
      if (!w) continue;
      std::string detail = want_del ? "no Hodge-Riemann balanced structure (del-exact positive image)"
                                    : "no Hodge-Riemann balanced metric with invariant F (delbar-exact primitive image)";
      return checked(g, *w, Status::Refuted, detail);
    }
  return {Verdict::proven("every del delbar-closed (1,0)-form is closed; no obstruction of this shape",
                          {{"dim_S", S.size()}}),
          std::nullopt};
}

namespace {

using CMat = Eigen::MatrixXcd;

CMat to_eigen(const Matrix<GaussRational>& a) {
  CMat r(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = a[i][j].to_complex();
  return r;
}

/// Real coordinates of a Hermitian matrix: diagonal, then Re and Im above it.
std::vector<GaussRational> hermitian_coords(const Matrix<GaussRational>& h) {
  std::vector<GaussRational> out;
  const std::size_t N = h.size();
  for (std::size_t i = 0; i < N; ++i) out.push_back(h[i][i].re());
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      out.push_back(h[i][j].re());
      out.push_back(h[i][j].im());
    }
  return out;
}

Matrix<GaussRational> hermitian_from_coords(std::size_t N, const std::vector<GaussRational>& x) {
  Matrix<GaussRational> h(N, std::vector<GaussRational>(N));
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i) h[i][i] = x[k++];
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      GaussRational z(x[k].re(), x[k + 1].re());
      k += 2;
      h[i][j] = z;
      h[j][i] = conj(z);
    }
  return h;
}

bool is_hermitian(const Matrix<GaussRational>& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i; j < h.size(); ++j)
      if (h[i][j] != conj(h[j][i])) return false;
  return true;
}

bool is_zero_matrix(const Matrix<GaussRational>& h) {
  for (const auto& row : h)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

Matrix<GaussRational> combine(const std::vector<Matrix<GaussRational>>& basis, const std::vector<Rational>& t) {
  const std::size_t N = basis.front().size();
  Matrix<GaussRational> h(N, std::vector<GaussRational>(N));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (sgn(t[b]) == 0) continue;
    GaussRational c(t[b]);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (!basis[b][i][j].is_zero()) h[i][j] += c * basis[b][i][j];
  }
  return h;
}

Rational to_rational_rounded(double x, long D) { return make_rational(std::lround(x * static_cast<double>(D)), D); }

class ConeSearch {
 public:
  ConeSearch(const ComplexLieAlgebra& g, ConeMode mode, int p, const std::optional<RForm>& F, const ConeSearchConfig& cfg)
      : g_(g), mode_(mode), n_(g.dim()), m_(n_ - p), F_(F), cfg_(cfg) {}

  ObstructionResult run() {
    build_image();
    json ev = {{"mode", to_string(mode_)}, {"bidegree", {m_, m_}}, {"dim_image", ech_.rank()}};
    if (ech_.rank() == 0) return {Verdict::inconclusive("image of d in this bidegree is zero", ev), std::nullopt};
    if (mode_ == ConeMode::PrimitivePSD_hrt)
      build_primitive_space();
    else
      build_real_space();
    ev["dim_search_space"] = space_.size();
    if (space_.empty()) return {Verdict::inconclusive("search space is zero", ev), std::nullopt};
    if (auto w = exact_seeds()) return found(*w, ev, "exact seed");
    if (auto w = ascent(ev)) return found(*w, ev, "eigenvalue ascent");
    ev["restarts"] = cfg_.restarts;
    ev["iterations"] = cfg_.iterations;
    return {Verdict::inconclusive("no semidefinite element found in the image of d", ev), std::nullopt};
  }

 private:
  const ComplexLieAlgebra& g_;
  ConeMode mode_;
  int n_;
  int m_;
  std::optional<RForm> F_;
  ConeSearchConfig cfg_;

  std::vector<RForm> gens_;
  std::vector<RForm> images_;
  std::vector<MultiIndexPair> target_;
  Matrix<GaussRational> image_columns_;  // rows: target monomials, cols: generators
  Echelon<GaussRational> ech_;
  std::vector<MultiIndexPair> hol_basis_;  // Lambda^{m,0}
  std::vector<RForm> prim_;                // primitive (1,1) basis for hrt
  std::vector<Matrix<GaussRational>> space_;

  GaussRational unit() const { return i_power(m_ * m_); }

  void build_image() {
    target_ = monomial_basis(n_, m_, m_);
    for (int a = 0; a <= n_; ++a) {
      int b = 2 * m_ - 1 - a;
      if (b < 0 || b > n_) continue;
      for (const auto& k : monomial_basis(n_, a, b)) gens_.push_back(RForm::monomial(n_, k, 1));
    }
    Matrix<GaussRational> rows;
    for (const auto& gmono : gens_) {
      images_.push_back(g_.d(gmono).component(m_, m_));
      rows.push_back(coordinates(images_.back(), target_));
    }
    image_columns_ = transpose(rows);
    ech_ = row_echelon(rows, target_.size());
    ech_.cols = target_.size();
    hol_basis_ = monomial_basis(n_, m_, 0);
  }

  Matrix<GaussRational> T_of(const RForm& xi) const {
    const std::size_t N = hol_basis_.size();
    Matrix<GaussRational> T(N, std::vector<GaussRational>(N));
    GaussRational inv = GaussRational(1) / unit();
    for (std::size_t I = 0; I < N; ++I)
      for (std::size_t J = 0; J < N; ++J) T[I][J] = xi.coefficient(MultiIndexPair{hol_basis_[I].hol, hol_basis_[J].hol}) * inv;
    return T;
  }

  RForm form_of(const Matrix<GaussRational>& T) const {
    RForm f(n_);
    for (std::size_t I = 0; I < T.size(); ++I)
      for (std::size_t J = 0; J < T.size(); ++J)
        if (!T[I][J].is_zero()) f.add(MultiIndexPair{hol_basis_[I].hol, hol_basis_[J].hol}, T[I][J] * unit());
    return f;
  }

  RForm phi_of(const Matrix<GaussRational>& H) const {
    RForm f(n_);
    for (std::size_t s = 0; s < H.size(); ++s)
      for (std::size_t t = 0; t < H.size(); ++t)
        if (!H[s][t].is_zero()) f += wedge(prim_[s], conj(prim_[t])) * H[s][t];
    return f;
  }

  void build_real_space() {
    Matrix<GaussRational> coords;
    for (const auto& row : ech_.rows) {
      RForm b = from_coordinates(n_, row, target_);
      RForm re = (b + conj(b)) * GaussRational(make_rational(1, 2));
      RForm im = (b - conj(b)) * (GaussRational::i() * GaussRational(make_rational(-1, 2)));
      for (const auto& f : {re, im})
        if (!f.is_zero()) coords.push_back(hermitian_coords(T_of(f)));
    }
    auto e = row_echelon(coords, coords.empty() ? 0 : coords.front().size());
    for (const auto& r : e.rows) space_.push_back(hermitian_from_coords(hol_basis_.size(), r));
  }

  void build_primitive_space() {
    auto b11 = monomial_basis(n_, 1, 1);
    auto top = monomial_basis(n_, n_, n_);
    RForm Fp = wedge_power(*F_, n_ - 1);
    Matrix<GaussRational> cond(top.size(), std::vector<GaussRational>(b11.size()));
    for (std::size_t c = 0; c < b11.size(); ++c) {
      auto v = coordinates(wedge(RForm::monomial(n_, b11[c], 1), Fp), top);
      for (std::size_t r = 0; r < top.size(); ++r) cond[r][c] = v[r];
    }
    for (const auto& v : kernel(cond, b11.size())) prim_.push_back(from_coordinates(n_, v, b11));
    const std::size_t r = prim_.size();
    // real basis of Hermitian r x r matrices
    std::vector<Matrix<GaussRational>> herm;
    for (std::size_t k = 0; k < r * r; ++k) {
      std::vector<GaussRational> x(r * r, GaussRational(0));
      x[k] = 1;
      herm.push_back(hermitian_from_coords(r, x));
    }
    // sum t_k Phi(E_k) must reduce to zero modulo the image
    Matrix<GaussRational> cond2(2 * target_.size(), std::vector<GaussRational>(herm.size()));
    for (std::size_t k = 0; k < herm.size(); ++k) {
      auto red = ech_.reduce(coordinates(phi_of(herm[k]), target_));
      for (std::size_t t = 0; t < target_.size(); ++t) {
        cond2[2 * t][k] = red[t].re();
        cond2[2 * t + 1][k] = red[t].im();
      }
    }
    for (const auto& t : kernel(cond2, herm.size())) {
      std::vector<Rational> tr;
      for (const auto& x : t) tr.push_back(x.re());
      auto H = combine(herm, tr);
      if (!phi_of(H).is_zero()) space_.push_back(H);
    }
  }

  std::optional<RForm> solve_gamma(const RForm& xi) const {
    auto x = solve(image_columns_, coordinates(xi, target_), gens_.size());
    if (!x) return std::nullopt;
    RForm gamma(n_);
    for (std::size_t s = 0; s < gens_.size(); ++s)
      if (!(*x)[s].is_zero()) gamma += gens_[s] * (*x)[s];
    return gamma;
  }

  /// H semidefinite and nonzero (in T or primitive coordinates); phase
  /// relates the image: image = phase * (form of H).
  std::optional<ObstructionWitness> witness_from(const Matrix<GaussRational>& H) const {
    if (!is_hermitian(H) || is_zero_matrix(H)) return std::nullopt;
    LdlResult f = ldl(H);
    if (!f.psd) return std::nullopt;
    ObstructionWitness w;
    w.m = m_;
    const bool hrt = mode_ == ConeMode::PrimitivePSD_hrt;
    w.image = hrt ? phi_of(H) : form_of(H);
    if (w.image.is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < H.size(); ++j) {
      if (sgn(f.d[j]) == 0) continue;
      RForm eta(n_);
      for (std::size_t I = 0; I < H.size(); ++I) {
        if (f.L[I][j].is_zero()) continue;
        eta += hrt ? prim_[I] * f.L[I][j] : RForm::monomial(n_, hol_basis_[I], f.L[I][j]);
      }
      w.terms.push_back({eta, hrt ? GaussRational(f.d[j]) : GaussRational(f.d[j]) * unit()});
    }
    w.primitive_terms = hrt;
    w.kind = mode_ == ConeMode::Decomposable_pK ? WitnessKind::RankOneImage : WitnessKind::ConePositiveImage;
    if (w.kind == WitnessKind::RankOneImage)
      for (const auto& t : w.terms)
        if (!plucker_decomposable(t.eta)) return std::nullopt;
    auto gamma = solve_gamma(w.image);
    if (!gamma) return std::nullopt;
    w.gamma = *gamma;
    w.sketch = sketch_for(w.kind, m_, hrt);
    if (!verify_witness(g_, w, F_).is_proven()) return std::nullopt;
    return w;
  }

  std::optional<ObstructionWitness> exact_seeds() const {
    std::vector<Matrix<GaussRational>> seeds;
    if (mode_ != ConeMode::PrimitivePSD_hrt) {
      for (const auto& img : images_) {
        if (img.is_zero()) continue;
        // a complex multiple of a semidefinite element: rotate by the
        // conjugate of its first nonzero diagonal entry
        Matrix<GaussRational> T = T_of(img);
        for (std::size_t k = 0; k < T.size(); ++k)
          if (!T[k][k].is_zero()) {
            GaussRational ph = conj(T[k][k]);
            for (auto& row : T)
              for (auto& x : row) x *= ph;
            seeds.push_back(T);
            break;
          }
      }
    }
    for (const auto& b : space_) {
      seeds.push_back(b);
      Matrix<GaussRational> nb = b;
      for (auto& row : nb)
        for (auto& x : row) x = -x;
      seeds.push_back(nb);
    }
    for (const auto& s : seeds)
      if (auto w = witness_from(s)) return w;
    return std::nullopt;
  }

  std::optional<ObstructionWitness> try_round(const Eigen::VectorXd& t) const {
    double mx = t.cwiseAbs().maxCoeff();
    if (mx == 0) return std::nullopt;
    Eigen::VectorXd u = t / mx;
    for (long D : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 16L, 32L, 64L, 128L, 256L, 1024L, 4096L}) {
      std::vector<Rational> q;
      for (int i = 0; i < u.size(); ++i) q.push_back(to_rational_rounded(u(i), D));
      if (auto w = witness_from(combine(space_, q))) return w;
    }
    return std::nullopt;
  }

  std::optional<ObstructionWitness> ascent(json& ev) const {
    const int r = static_cast<int>(space_.size());
    std::vector<CMat> T;
    for (const auto& s : space_) T.push_back(to_eigen(s));
    const int N = static_cast<int>(T.front().rows());
    double best = -1e300;
    for (int restart = 0; restart < cfg_.restarts; ++restart) {
      std::mt19937_64 rng(cfg_.seed + 7919ull * static_cast<std::uint64_t>(restart));
      std::normal_distribution<double> nd;
      Eigen::VectorXd t(r);
      for (int i = 0; i < r; ++i) t(i) = nd(rng);
      t.normalize();
      double step = 0.5;
      double lam = 0;
      for (int it = 0; it < cfg_.iterations; ++it) {
        CMat M = CMat::Zero(N, N);
        for (int i = 0; i < r; ++i) M += t(i) * T[i];
        Eigen::SelfAdjointEigenSolver<CMat> es(M);
        lam = es.eigenvalues()(0);
        if (lam > -1e-9) break;
        Eigen::VectorXcd v = es.eigenvectors().col(0);
        Eigen::VectorXd grad(r);
        for (int i = 0; i < r; ++i) grad(i) = (v.adjoint() * T[i] * v)(0, 0).real();
        t += step * grad;
        t.normalize();
        step *= 0.995;
      }
      best = std::max(best, lam);
      if (lam > -1e-6)
        if (auto w = try_round(t)) {
          ev["restart"] = restart;
          return w;
        }
    }
    ev["best_min_eigenvalue"] = best;
    return std::nullopt;
  }

  ObstructionResult found(const ObstructionWitness& w, json ev, const std::string& how) const {
    ev["found_by"] = how;
    ev["witness"] = w.to_json();
    std::string claim;
    const int p = n_ - m_;
    switch (mode_) {
      case ConeMode::Decomposable_pK: claim = "obstruction: no " + std::to_string(p) + "-Kahler structure"; break;
      case ConeMode::PSD_cpd:
        claim = "obstruction: no closed positive definite (" + std::to_string(p) + "," + std::to_string(p) + ")-form";
        break;
      case ConeMode::PrimitivePSD_hrt: claim = "obstruction: F is not of Hodge-Riemann type"; break;
    }
    return {Verdict::refuted(claim, ev), w};
  }
};

}  // namespace

ObstructionResult cone_image_search(const ComplexLieAlgebra& g, ConeMode mode, int p, const std::optional<RForm>& F,
                                    const ConeSearchConfig& cfg) {
  const int n = g.dim();
  if (mode == ConeMode::PrimitivePSD_hrt) {
    if (!F) throw Error(ErrorCode::Domain, "hrt mode needs a balanced metric F");
    if (p != n - 2) throw Error(ErrorCode::Domain, "hrt mode works with p = n-2");
    if (!is_balanced(g, *F).is_proven()) throw Error(ErrorCode::Domain, "F is not balanced");
  }
  if (p < 1 || p >= n) throw Error(ErrorCode::Domain, "p must lie in 1..n-1");
  return ConeSearch(g, mode, p, F, cfg).run();
}

ObstructionResult nilpotent_verdict(const ComplexLieAlgebra& g) {
  auto ab = nilpotent_adapted_basis(g);
  const int n = g.dim();
  if (is_abelian(g)) return {Verdict::proven("abelian; nothing to obstruct", {{"abelian", true}}), std::nullopt};
  auto in_original = [&](int j) {
    RForm a(n);
    for (int k = 0; k < n; ++k)
      if (!ab.P[j][k].is_zero()) a += holo(n, k + 1) * ab.P[j][k];
    return a;
  };
  const auto& h = ab.algebra;
  int t = -1;
  for (int j = 0; j < n && t < 0; ++j)
    if (!h.del(holo(n, j + 1)).is_zero()) t = j;
  json levels = ab.level;
  // a non-closed del-closed element earlier in the basis is itself a witness
  for (int j = 0; j < (t < 0 ? n : t); ++j) {
    if (h.d(holo(n, j + 1)).is_zero()) continue;
    auto w = oneform_witness(g, in_original(j));
    if (!w) throw Error(ErrorCode::Verification, "del-closed coframe element is not del delbar-closed");
    auto r = checked(g, *w, Status::Proven, "Hodge-Riemann balanced only if abelian");
    r.verdict.evidence["adapted_index"] = j + 1;
    r.verdict.evidence["levels"] = levels;
    return r;
  }
  if (t < 0) throw Error(ErrorCode::Verification, "non-abelian nilpotent algebra without a witness");
  RForm dd = h.d(h.del(holo(n, t + 1)));
  if (!dd.is_zero()) throw Error(ErrorCode::Verification, "d del alpha^t != 0 in the adapted basis");
  auto w = oneform_witness(g, in_original(t));
  if (!w) throw Error(ErrorCode::Verification, "adapted witness is not del delbar-closed");
  auto r = checked(g, *w, Status::Proven, "Hodge-Riemann balanced only if abelian");
  r.verdict.evidence["adapted_index"] = t + 1;
  r.verdict.evidence["levels"] = levels;
  r.verdict.evidence["d_del_alpha_t"] = "0";
  return r;
}

ObstructionResult complex_parallelizable_verdict(const ComplexLieAlgebra& g) {
  if (!is_complex_parallelizable(g))
    throw Error(ErrorCode::NotComplexParallelizable, "d alpha^j must lie in Lambda^{2,0}");
  const int n = g.dim();
  for (int j = 1; j <= n; ++j) {
    RForm a = holo(n, j);
    if (g.d(a).is_zero()) continue;
    auto w = oneform_witness(g, a);
    if (!w) throw Error(ErrorCode::Verification, "holomorphic coframe element fails the 1-form lemma");
    auto r = checked(g, *w, Status::Proven, "Hodge-Riemann balanced only for tori");
    r.verdict.evidence["coframe_index"] = j;
    r.verdict.evidence["unimodular"] = is_unimodular(g);
    return r;
  }
  return {Verdict::proven("abelian; a torus", {{"abelian", true}}), std::nullopt};
}

ComplexLieAlgebra cseabid(const CseabidParams& params, std::string name) {
  if (params.v.size() != params.lambda.size()) throw Error(ErrorCode::Domain, "v and lambda need equal length");
  const int n = static_cast<int>(params.v.size()) + 1;
  std::vector<RForm> d(n, RForm(n));
  for (int j = 2; j <= n; ++j) {
    const GaussRational& v = params.v[j - 2];
    const GaussRational& l = params.lambda[j - 2];
    d[j - 1] = RForm::from_indices(n, {1}, {1}, v) - RForm::from_indices(n, {1, j}, {}, conj(l)) -
               RForm::from_indices(n, {j}, {1}, l);
  }
  return ComplexLieAlgebra(std::move(name), n, std::move(d));
}

json CseabidClassification::to_json() const {
  json j = {{"kind", to_string(kind)}, {"l", l}, {"verdict", verdict.to_json()}};
  if (kahler_form) j["kahler_form"] = kahler_form->str();
  if (witness) j["witness"] = witness->to_json();
  if (normalized_witness) j["normalized_witness"] = normalized_witness->to_json();
  if (!normalization.empty()) {
    json rows = json::array();
    for (const auto& r : normalization) rows.push_back(hforms::to_json(r));
    j["normalization"] = rows;
  }
  return j;
}

namespace {

std::optional<ObstructionWitness> witness_for(const ComplexLieAlgebra& h, RForm gamma, RForm eta) {
  ObstructionWitness w;
  w.kind = WitnessKind::RankOneImage;
  w.m = 2;
  w.gamma = std::move(gamma);
  w.image = h.d(w.gamma).component(2, 2);
  auto c = ratio(w.image, pair_product(eta));
  if (!c) return std::nullopt;
  w.terms.push_back({std::move(eta), *c});
  w.sketch = sketch_for(w.kind, 2, false);
  if (!verify_witness(h, w).is_proven()) return std::nullopt;
  return w;
}

ObstructionWitness map_witness(const ObstructionWitness& w, const std::vector<RForm>& images) {
  ObstructionWitness r = w;
  r.gamma = substitute(w.gamma, images);
  r.image = substitute(w.image, images);
  for (auto& t : r.terms) t.eta = substitute(t.eta, images);
  if (r.alpha) r.alpha = substitute(*r.alpha, images);
  return r;
}

}  // namespace

CseabidClassification classify_cseabid(const CseabidParams& params) {
  CseabidClassification out;
  out.algebra = cseabid(params);
  const auto& g = out.algebra;
  const int n = g.dim();
  if (n < 3) throw Error(ErrorCode::Domain, "the family is studied for n >= 3");
  auto val = g.validate();
  if (!val.is_proven()) throw Error(ErrorCode::Verification, "family member fails validation: " + val.detail);

  std::vector<int> zero_lambda, nonzero_lambda;
  int k = -1;
  for (int j = 2; j <= n; ++j) {
    if (params.lambda[j - 2].is_zero()) {
      zero_lambda.push_back(j);
      if (k < 0 && !params.v[j - 2].is_zero()) k = j;
    } else {
      nonzero_lambda.push_back(j);
    }
  }
  out.l = 1 + static_cast<int>(zero_lambda.size());

  if (is_abelian(g)) {
    out.kind = CseabidKind::Abelian;
    out.verdict = Verdict::proven("abelian", {{"l", out.l}});
    return out;
  }

  if (k < 0) {
    // closed positive (1,1)-form with w_j = v_j / lambda_j
    RForm F = RForm::from_indices(n, {1}, {1}, GaussRational::i());
    for (int j = 2; j <= n; ++j) {
      GaussRational w = params.lambda[j - 2].is_zero() ? GaussRational(0) : params.v[j - 2] / params.lambda[j - 2];
      GaussRational i = GaussRational::i();
      F += RForm::from_indices(n, {1}, {1}, i * GaussRational(2 * norm(w)));
      F += RForm::from_indices(n, {j}, {j}, i);
      F -= RForm::from_indices(n, {1}, {j}, i * w);
      F -= RForm::from_indices(n, {j}, {1}, i * conj(w));
    }
    RForm dF = g.d(F);
    auto pd = is_positive_definite(F);
    json ev = {{"F", F.str()}, {"dF", dF.str()}, {"positive_definite", pd.to_json()}, {"l", out.l}};
    if (dF.is_zero() && pd.status == PositivityStatus::PositiveDefinite) {
      out.kind = CseabidKind::Kahler;
      out.kahler_form = F;
      out.verdict = Verdict::proven("Kahler: F is closed and positive definite", ev);
    } else {
      out.kind = CseabidKind::Inconclusive;
      out.verdict = Verdict::inconclusive("candidate Kahler form fails; outside the dichotomy", ev);
    }
    return out;
  }

  // new coframe: alpha^1, closed combinations, (i/v_k) alpha^k, then the rest
  Matrix<GaussRational> P;
  auto unit_row = [&](int j, GaussRational c) {
    std::vector<GaussRational> r(n, GaussRational(0));
    r[j - 1] = c;
    return r;
  };
  P.push_back(unit_row(1, 1));
  const GaussRational vk = params.v[k - 2];
  for (int j : zero_lambda) {
    if (j == k) continue;
    auto r = unit_row(j, 1);
    r[k - 1] = -(params.v[j - 2] / vk);
    P.push_back(r);
  }
  P.push_back(unit_row(k, GaussRational::i() / vk));
  for (int j : nonzero_lambda) P.push_back(unit_row(j, 1));
  out.normalization = P;
  ComplexLieAlgebra h = g.change_coframe(P, g.name() + "_normalized");
  const int l = out.l;
  for (int j = 1; j < l; ++j)
    if (!h.d(holo(n, j)).is_zero()) throw Error(ErrorCode::Verification, "normalization: leading forms are not closed");
  if (h.d(holo(n, l)) != RForm::from_indices(n, {1}, {1}, GaussRational::i()))
    throw Error(ErrorCode::Verification, "normalization: d of the rescaled form is not i alpha^{1 1bar}");

  std::optional<ObstructionWitness> w;
  json ev = {{"l", l}};
  if (l > 2) {
    // 2i alpha^2 ^ conj(alpha^2) ^ alpha^l, image a multiple of alpha^{12} ^ conj(alpha^{12})
    RForm gamma = wedge(wedge(holo(n, 2), antiholo(n, 2)), holo(n, l)) * GaussRational(Rational(0), Rational(2));
    w = witness_for(h, gamma, RForm::from_indices(n, {1, 2}, {}, 1));
    ev["construction"] = "2i alpha^{2 2bar l}";
  } else {
    // alpha^{3 2bar 3bar} + conj(v_3)/conj(l_3) alpha^{3 1bar 2bar}
    const int j3 = nonzero_lambda.front();
    GaussRational coef = conj(params.v[j3 - 2]) / conj(params.lambda[j3 - 2]);
    RForm gamma = RForm::from_indices(n, {3}, {2, 3}, 1) + RForm::from_indices(n, {3}, {1, 2}, coef);
    w = witness_for(h, gamma, RForm::from_indices(n, {1, 3}, {}, 1));
    ev["construction"] = "alpha^{3 2bar 3bar} + conj(v_3)/conj(lambda_3) alpha^{3 1bar 2bar}";
  }
  if (!w) {
    auto r = cone_image_search(h, ConeMode::Decomposable_pK, n - 2);
    if (r.witness) w = r.witness;
    ev["construction"] = "cone search fallback";
  }
  out.normalized = h;
  if (!w) {
    out.kind = CseabidKind::Inconclusive;
    out.verdict = Verdict::inconclusive("no witness in the obstructed branch", ev);
    return out;
  }
  out.normalized_witness = w;
  std::vector<RForm> images(2 * n, RForm(n));
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < n; ++c)
      if (!P[j][c].is_zero()) images[j] += holo(n, c + 1) * P[j][c];
    images[n + j] = conj(images[j]);
  }
  auto back = map_witness(*w, images);
  auto check = verify_witness(g, back);
  if (!check.is_proven()) throw Error(ErrorCode::Verification, "mapped witness fails: " + check.detail);
  out.witness = back;
  out.kind = CseabidKind::Obstructed;
  ev["witness"] = back.to_json();
  ev["normalized_witness"] = w->to_json();
  out.verdict = Verdict::refuted("not (n-2)-Kahler, so not Kahler and not Hodge-Riemann balanced", ev);
  return out;
}

}  // namespace hforms
