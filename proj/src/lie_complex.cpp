#include "hforms/lie_complex.hpp"

namespace hforms {

ComplexLieAlgebra::ComplexLieAlgebra(std::string name, int n, std::vector<RForm> d_alpha,
                                     std::vector<std::string> diagnostics)
    : name_(std::move(name)), n_(n), d_alpha_(std::move(d_alpha)), diagnostics_(std::move(diagnostics)) {
  if (n < 1 || n > kMaxDimension) throw Error(ErrorCode::Domain, "algebra dimension out of range");
  if (static_cast<int>(d_alpha_.size()) != n) throw Error(ErrorCode::Domain, "need one structure equation per coframe element");
  for (auto& f : d_alpha_) {
    if (f.dim() == 0) f = RForm(n);
    if (f.dim() != n) throw Error(ErrorCode::Domain, "structure equation has wrong dimension");
    if (!f.is_zero() && f.degree() != 2) throw Error(ErrorCode::Domain, "structure equation is not a 2-form");
  }
  dtheta_.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    dtheta_[j] = d_alpha_[j];
    dtheta_[n + j] = conj(d_alpha_[j]);
  }
}

Verdict ComplexLieAlgebra::validate() const {
  if (!diagnostics_.empty()) {
    json ev = json::array();
    for (const auto& s : diagnostics_) ev.push_back(s);
    return Verdict::refuted("malformed structure equations", {{"diagnostics", ev}});
  }
  for (int j = 1; j <= n_; ++j) {
    RForm c02 = d_alpha_[j - 1].component(0, 2);
    if (!c02.is_zero())
      return Verdict::refuted("complex structure is not integrable",
                              {{"coframe", "a" + std::to_string(j)}, {"residual", c02.str()}});
  }
  for (int j = 1; j <= n_; ++j) {
    RForm dd = d(d_alpha_[j - 1]);
    if (!dd.is_zero())
      return Verdict::refuted("Jacobi identity fails", {{"coframe", "a" + std::to_string(j)}, {"residual", dd.str()}});
  }
  return Verdict::proven("d^2 = 0 and J integrable", {{"n", n_}});
}

RForm ComplexLieAlgebra::del(const RForm& a) const {
  RForm r(n_);
  for (auto [p, q] : a.bidegrees()) r += d(a.component(p, q)).component(p + 1, q);
  return r;
}

RForm ComplexLieAlgebra::delbar(const RForm& a) const {
  RForm r(n_);
  for (auto [p, q] : a.bidegrees()) r += d(a.component(p, q)).component(p, q + 1);
  return r;
}

RForm ComplexLieAlgebra::coframe(int k, bool conjugate) const {
  return conjugate ? antiholo(n_, k) : holo(n_, k);
}

namespace {

MultiIndexPair pair_key(int n, int a, int b) {
  // canonical monomial theta^a ^ theta^b for a < b
  MultiIndexPair k{};
  for (int x : {a, b}) {
    if (x < n)
      k.hol |= 1u << x;
    else
      k.anti |= 1u << (x - n);
  }
  return k;
}

}  // namespace

CVector ComplexLieAlgebra::bracket(int a, int b) const {
  CVector v(2 * n_, GaussRational(0));
  if (a == b) return v;
  int sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  MultiIndexPair key = pair_key(n_, a, b);
  // d theta(X, Y) = -theta([X, Y])
  for (int c = 0; c < 2 * n_; ++c) {
    GaussRational coef = dtheta_[c].coefficient(key);
    if (!coef.is_zero()) v[c] = sign > 0 ? -coef : coef;
  }
  return v;
}

CVector ComplexLieAlgebra::bracket(const CVector& x, const CVector& y) const {
  CVector r(2 * n_, GaussRational(0));
  for (int a = 0; a < 2 * n_; ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < 2 * n_; ++b) {
      if (y[b].is_zero() || a == b) continue;
      CVector ab = bracket(a, b);
      GaussRational f = x[a] * y[b];
      for (int c = 0; c < 2 * n_; ++c)
        if (!ab[c].is_zero()) r[c] += f * ab[c];
    }
  }
  return r;
}

GaussRational ComplexLieAlgebra::trace_ad(int a) const {
  GaussRational t(0);
  for (int c = 0; c < 2 * n_; ++c) t += bracket(a, c)[c];
  return t;
}

ComplexLieAlgebra ComplexLieAlgebra::change_coframe(const Matrix<GaussRational>& P, std::string name) const {
  auto Q = inverse(P);
  if (!Q) throw Error(ErrorCode::Domain, "coframe change is singular");
  // alpha^k = sum_l Q[k][l] beta^l
  std::vector<RForm> images(2 * n_);
  for (int k = 0; k < n_; ++k) {
    images[k] = RForm(n_);
    images[n_ + k] = RForm(n_);
    for (int l = 0; l < n_; ++l) {
      images[k] += holo(n_, l + 1, (*Q)[k][l]);
      images[n_ + k] += antiholo(n_, l + 1, conj((*Q)[k][l]));
    }
  }
  std::vector<RForm> eq(n_);
  for (int j = 0; j < n_; ++j) {
    RForm dbeta(n_);
    for (int k = 0; k < n_; ++k)
      if (!P[j][k].is_zero()) dbeta += P[j][k] * d_alpha_[k];
    eq[j] = substitute(dbeta, images);
  }
  return ComplexLieAlgebra(name.empty() ? name_ : std::move(name), n_, std::move(eq));
}

bool is_unimodular(const ComplexLieAlgebra& g) {
  for (int a = 0; a < 2 * g.dim(); ++a)
    if (!g.trace_ad(a).is_zero()) return false;
  return true;
}

std::vector<Matrix<GaussRational>> lower_central_series(const ComplexLieAlgebra& g) {
  const int m = 2 * g.dim();
  std::vector<Matrix<GaussRational>> out;
  Matrix<GaussRational> current;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) current.push_back(g.bracket(a, b));
  current = row_echelon(current, m).rows;
  while (!current.empty()) {
    out.push_back(current);
    Matrix<GaussRational> next;
    for (int a = 0; a < m; ++a) {
      CVector e(m, GaussRational(0));
      e[a] = 1;
      for (const auto& v : current) next.push_back(g.bracket(e, v));
    }
    next = row_echelon(next, m).rows;
    if (next.size() == current.size()) {
      out.push_back(next);
      break;  // stationary and nonzero
    }
    current = std::move(next);
  }
  return out;
}

bool is_nilpotent(const ComplexLieAlgebra& g) {
  auto s = lower_central_series(g);
  if (s.empty()) return true;
  // stationary nonzero term means the series does not reach zero
  return !(s.size() >= 2 && s[s.size() - 1].size() == s[s.size() - 2].size());
}

bool is_abelian(const ComplexLieAlgebra& g) {
  for (const auto& f : g.structure())
    if (!f.is_zero()) return false;
  return true;
}

bool is_abelian_J(const ComplexLieAlgebra& g) {
  for (const auto& f : g.structure())
    if (!f.component(2, 0).is_zero()) return false;
  return true;
}

bool is_complex_parallelizable(const ComplexLieAlgebra& g) {
  for (const auto& f : g.structure())
    if (!f.is_homogeneous_of(2, 0)) return false;
  return true;
}

AdaptedBasis nilpotent_adapted_basis(const ComplexLieAlgebra& g) {
  if (!is_nilpotent(g)) throw Error(ErrorCode::NotNilpotent, "algebra " + g.name() + " is not nilpotent");
  const int n = g.dim();
  auto b10 = monomial_basis(n, 1, 0);
  auto b20 = monomial_basis(n, 2, 0);
  std::vector<std::vector<GaussRational>> del_images(n);
  for (int k = 0; k < n; ++k) del_images[k] = coordinates(g.del(holo(n, k + 1)), b20);

  AdaptedBasis out;
  Echelon<GaussRational> chosen = row_echelon(Matrix<GaussRational>{}, n);
  Matrix<GaussRational> level_space;  // V_k basis rows
  int level = 0;
  while (static_cast<int>(out.P.size()) < n) {
    ++level;
    if (level > n + 1) throw Error(ErrorCode::Verification, "del filtration does not exhaust Lambda^{1,0}");
    // W = Lambda^2 V_{k-1}
    Matrix<GaussRational> w;
    for (std::size_t x = 0; x < level_space.size(); ++x)
      for (std::size_t y = x + 1; y < level_space.size(); ++y)
        w.push_back(coordinates(wedge(from_coordinates(n, level_space[x], b10), from_coordinates(n, level_space[y], b10)), b20));
    Echelon<GaussRational> we = row_echelon(w, b20.size());
    we.cols = b20.size();
    // alpha = sum x_k alpha^k with del(alpha) in W
    Matrix<GaussRational> cond(b20.size(), std::vector<GaussRational>(n));
    for (int k = 0; k < n; ++k) {
      auto red = we.reduce(del_images[k]);
      for (std::size_t r = 0; r < b20.size(); ++r) cond[r][k] = red[r];
    }
    Matrix<GaussRational> vk = kernel(cond, n);
    vk = row_echelon(vk, n).rows;
    for (const auto& v : vk) {
      if (chosen.cols == 0) chosen.cols = n;
      if (chosen.contains(v)) continue;
      out.P.push_back(v);
      out.level.push_back(level);
      chosen = row_echelon(out.P, n);
    }
    if (vk.size() == level_space.size() && static_cast<int>(out.P.size()) < n)
      throw Error(ErrorCode::Verification, "del filtration stalls before exhausting Lambda^{1,0}");
    level_space = vk;
  }
  out.algebra = g.change_coframe(out.P, g.name());
  return out;
}

namespace {

CVector conj_vector(const CVector& v) {
  const std::size_t n = v.size() / 2;
  CVector r(v.size());
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = conj(v[n + k]);
    r[n + k] = conj(v[k]);
  }
  return r;
}

CVector apply_J(const CVector& v) {
  const std::size_t n = v.size() / 2;
  CVector r(v.size());
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = GaussRational::i() * v[k];
    r[n + k] = -GaussRational::i() * v[n + k];
  }
  return r;
}

}  // namespace

Verdict commutator_J_invariant(const ComplexLieAlgebra& g) {
  const int m = 2 * g.dim();
  Matrix<GaussRational> brackets;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) brackets.push_back(g.bracket(a, b));
  auto e = row_echelon(brackets, m);
  e.cols = m;
  for (const auto& v : e.rows) {
    if (e.contains(apply_J(v))) continue;
    CVector cv = conj_vector(v);
    CVector re(m), im(m);
    for (int k = 0; k < m; ++k) {
      re[k] = (v[k] + cv[k]) * GaussRational(make_rational(1, 2));
      im[k] = (v[k] - cv[k]) * (-GaussRational::i() * GaussRational(make_rational(1, 2)));
    }
    const CVector& x = e.contains(apply_J(re)) ? im : re;
    return Verdict::refuted("[g,g] is not J-invariant",
                            {{"X", to_json(x)}, {"JX", to_json(apply_J(x))}, {"frame", "Z_1..Z_n, conj Z_1..conj Z_n"}});
  }
  return Verdict::proven("[g,g] is J-invariant", {{"dim_real", e.rank()}});
}

IdealCertificate ideal_from_closed_oneform(const ComplexLieAlgebra& g, const RForm& alpha) {
  const int n = g.dim();
  if (alpha.is_zero() || !alpha.is_homogeneous_of(1, 0)) throw Error(ErrorCode::Domain, "need a nonzero (1,0)-form");
  RForm da = g.d(alpha);
  if (!da.is_zero()) throw Error(ErrorCode::NotClosed, "d alpha = " + da.str());
  const int m = 2 * n;
  Matrix<GaussRational> fun(2, std::vector<GaussRational>(m, GaussRational(0)));
  for (int k = 0; k < n; ++k) {
    GaussRational c = alpha.coefficient(MultiIndexPair{1u << k, 0});
    fun[0][k] = c;
    fun[1][n + k] = conj(c);
  }
  IdealCertificate cert;
  cert.basis = kernel(fun, m);
  // [g, g] must lie in the kernel of alpha and conj(alpha)
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      CVector v = g.bracket(a, b);
      for (const auto& row : fun) {
        GaussRational s(0);
        for (int k = 0; k < m; ++k) s += row[k] * v[k];
        if (!s.is_zero()) {
          cert.verdict = Verdict::refuted("bracket leaves the subspace", {{"a", a}, {"b", b}});
          return cert;
        }
      }
    }
  json basis = json::array();
  for (const auto& v : cert.basis) basis.push_back(to_json(v));
  cert.verdict = Verdict::proven("J-invariant ideal of real codimension 2", {{"basis", basis}});
  return cert;
}

}  // namespace hforms
