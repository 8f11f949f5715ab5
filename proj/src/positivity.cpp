#include "hforms/positivity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hforms {

json gram_to_json(const Matrix<GaussRational>& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  return rows;
}

json gram_to_json(const Matrix<AnalyticScalar>& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  return rows;
}

std::string to_string(PositivityStatus s) {
  switch (s) {
    case PositivityStatus::StronglyPositive: return "StronglyPositive";
    case PositivityStatus::PositiveDefinite: return "PositiveDefinite";
    case PositivityStatus::Transverse: return "Transverse";
    case PositivityStatus::NotPositive: return "NotPositive";
    case PositivityStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

json PositivityVerdict::to_json() const {
  json j = {{"status", to_string(status)}, {"detail", detail}, {"evidence", evidence}};
  if (witness) j["witness"] = witness->str();
  return j;
}

namespace {

/// nullopt if G is positive definite, else x with x^H G x <= 0.
std::optional<std::vector<GaussRational>> nonpositive_vector(const Matrix<GaussRational>& G, LdlResult& r) {
  r = ldl(G);
  if (r.positive_definite()) return std::nullopt;
  if (!r.psd) return r.witness;
  // singular: some zero pivot, x = L^{-H} e_k has x^H G x = 0
  std::size_t k = 0;
  while (sgn(r.d[k]) != 0) ++k;
  std::vector<GaussRational> y(G.size(), GaussRational(0));
  y[k] = 1;
  return solve_lh(r.L, y);
}

}  // namespace

Verdict hermitian_positive_definite(const Matrix<GaussRational>& G) {
  LdlResult r;
  auto w = nonpositive_vector(G, r);
  json d = json::array();
  for (const auto& x : r.d) d.push_back(to_string(x));
  if (!w) return Verdict::proven("LDL pivots all positive", {{"pivots", d}});
  const std::vector<GaussRational>& x = *w;
  GaussRational value = hermitian_form(G, x);
  if (!value.is_real() || sgn(value.re()) > 0) throw Error(ErrorCode::Verification, "LDL witness does not verify");
  return Verdict::refuted("Hermitian form is not positive definite",
                          {{"pivots", d}, {"x", to_json(x)}, {"value", value.str()}});
}

namespace {

std::vector<std::vector<std::size_t>> hermitian_blocks(const Matrix<AnalyticScalar>& G) {
  const std::size_t m = G.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (!G[a][b].is_zero() || !G[b][a].is_zero()) parent[find(a)] = find(b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < m; ++a) groups[find(a)].push_back(a);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, idx] : groups) out.push_back(idx);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Verdict hermitian_positive_definite(const Matrix<AnalyticScalar>& G) {
  json blocks = json::array();
  for (const auto& idx : hermitian_blocks(G)) {
    json minors = json::array();
    for (std::size_t s = 1; s <= idx.size(); ++s) {
      Matrix<AnalyticScalar> sub(s, std::vector<AnalyticScalar>(s));
      for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b) sub[a][b] = G[idx[a]][idx[b]];
      AnalyticScalar det = ring_determinant(sub);
      auto up = UPolynomial::from_analytic(det);
      if (!up)
        return Verdict::inconclusive("leading minor is not a real function of U",
                                     {{"block", idx}, {"size", s}, {"minor", det.str()}});
      Verdict v = sign_on_ray(*up);
      // earlier minors were proven positive everywhere, so Sylvester applies at U0
      if (v.is_refuted())
        return Verdict::refuted("leading minor is not positive at U0",
                                {{"block", idx}, {"size", s}, {"minor", up->str()}, {"certificate", v.evidence}});
      if (!v.is_proven())
        return Verdict::inconclusive("sign of a leading minor undecided",
                                     {{"block", idx}, {"size", s}, {"minor", up->str()}});
      minors.push_back({{"minor", up->str()}, {"certificate", v.evidence}});
    }
    blocks.push_back({{"indices", idx}, {"minors", minors}});
  }
  return Verdict::proven("all leading minors positive for U >= 0", {{"blocks", blocks}});
}

namespace {

std::pair<int, int> square_bidegree(const RForm& Omega) {
  auto bd = Omega.bidegree();
  if (!bd || bd->first != bd->second) throw Error(ErrorCode::BidegreeMismatch, "need a nonzero (k,k)-form");
  return *bd;
}

template <class S>
Form<S> combination(const std::vector<Form<S>>& basis, const std::vector<S>& y, int n) {
  Form<S> f(n);
  for (std::size_t a = 0; a < basis.size(); ++a)
    if (!is_zero(y[a])) f += y[a] * basis[a];
  return f;
}

}  // namespace

PositivityVerdict is_positive_definite(const RForm& Omega) {
  const int n = Omega.dim();
  auto [m, m2] = square_bidegree(Omega);
  if (!is_real(Omega)) throw Error(ErrorCode::NotReal, "Omega is not real");
  const int k = n - m;
  auto basis = monomial_forms<GaussRational>(n, k, 0);
  auto g = gram_Q(Omega, k, 0, basis);
  LdlResult r;
  auto x = nonpositive_vector(g.entries, r);
  json pivots = json::array();
  for (const auto& d : r.d) pivots.push_back(to_string(d));
  PositivityVerdict out;
  out.evidence = {{"gram", gram_to_json(g.entries)}, {"pivots", pivots}};
  if (!x) {
    out.status = PositivityStatus::PositiveDefinite;
    out.detail = "Q on Lambda^{" + std::to_string(k) + ",0} is positive definite";
    return out;
  }
  // Q(eta, eta) = x^H G x for eta = sum conj(x_a) e_a
  std::vector<GaussRational> y;
  for (const auto& c : *x) y.push_back(conj(c));
  RForm eta = combination(basis, y, n);
  GaussRational q = pairing_Q(Omega, k, 0, eta, eta);
  if (!q.is_real() || sgn(q.re()) > 0) throw Error(ErrorCode::Verification, "positivity witness does not verify");
  out.status = PositivityStatus::NotPositive;
  out.detail = "Q(eta, eta) = " + q.str();
  out.witness = eta;
  out.evidence["Q"] = q.str();
  return out;
}

PositivityVerdict is_positive_definite(const AForm& Omega) {
  const int n = Omega.dim();
  auto bd = Omega.bidegree();
  if (!bd || bd->first != bd->second) throw Error(ErrorCode::BidegreeMismatch, "need a nonzero (k,k)-form");
  if (!is_real(Omega)) throw Error(ErrorCode::NotReal, "Omega is not real");
  const int k = n - bd->first;
  auto basis = monomial_forms<AnalyticScalar>(n, k, 0);
  auto g = gram_Q(Omega, k, 0, basis);
  Verdict v = hermitian_positive_definite(g.entries);
  PositivityVerdict out;
  out.evidence = {{"gram", gram_to_json(g.entries)}, {"minors", v.evidence}};
  out.detail = v.detail;
  if (v.is_proven())
    out.status = PositivityStatus::PositiveDefinite;
  else if (v.is_refuted())
    out.status = PositivityStatus::NotPositive;
  return out;
}

namespace {

using cd = std::complex<double>;

struct DecomposableSample {
  std::vector<std::vector<cd>> w;  // k covectors
  double value = 0;
};

std::vector<cd> wedge_coordinates(const std::vector<std::vector<cd>>& w, const std::vector<MultiIndexPair>& basis) {
  // coefficient of phi^I in w_1 ^ ... ^ w_k is det(w_a[i_b])
  const std::size_t k = w.size();
  std::vector<cd> y;
  y.reserve(basis.size());
  Eigen::MatrixXcd M(k, k);
  for (const auto& key : basis) {
    auto idx = mask_indices(key.hol);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) M(a, b) = w[a][idx[b] - 1];
    y.push_back(M.determinant());
  }
  return y;
}

double normalized_value(const Eigen::MatrixXcd& G, const std::vector<cd>& y) {
  cd s = 0;
  double nrm = 0;
  for (std::size_t a = 0; a < y.size(); ++a) {
    nrm += std::norm(y[a]);
    for (std::size_t b = 0; b < y.size(); ++b) s += y[a] * std::conj(y[b]) * G(a, b);
  }
  return nrm > 0 ? s.real() / nrm : 1e300;
}

GaussRational round_gauss(cd z, long den) {
  return GaussRational(make_rational(std::lround(z.real() * den), den), make_rational(std::lround(z.imag() * den), den));
}

}  // namespace

PositivityVerdict is_transverse(const RForm& Omega, const TransverseConfig& cfg) {
  const int n = Omega.dim();
  auto [m, m2] = square_bidegree(Omega);
  const int k = n - m;
  PositivityVerdict pd = is_positive_definite(Omega);
  if (pd.status == PositivityStatus::PositiveDefinite) {
    pd.status = PositivityStatus::Transverse;
    pd.detail = "positive definite, hence transverse";
    return pd;
  }
  if (k <= 1 || k >= n - 1) {
    pd.detail = "every (" + std::to_string(k) + ",0)-form is decomposable; " + pd.detail;
    return pd;
  }
  if (pd.witness && decompose(*pd.witness)) {
    pd.detail = "decomposable witness; " + pd.detail;
    return pd;
  }

  auto basis = monomial_basis(n, k, 0);
  auto basis_forms = monomial_forms<GaussRational>(n, k, 0);
  auto g = gram_Q(Omega, k, 0, basis_forms);
  Eigen::MatrixXcd G(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) G(a, b) = g.entries[a][b].to_complex();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_w = [&]() {
    std::vector<std::vector<cd>> w(k, std::vector<cd>(n));
    for (auto& row : w)
      for (auto& x : row) x = cd(normal(rng), normal(rng));
    return w;
  };
  std::vector<DecomposableSample> best;
  for (int s = 0; s < cfg.samples; ++s) {
    DecomposableSample d{random_w(), 0};
    d.value = normalized_value(G, wedge_coordinates(d.w, basis));
    best.push_back(std::move(d));
    if (best.size() > static_cast<std::size_t>(4 * cfg.refinements + 8)) {
      std::nth_element(best.begin(), best.begin() + cfg.refinements, best.end(),
                       [](const auto& x, const auto& y) { return x.value < y.value; });
      best.resize(cfg.refinements);
    }
  }
  std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  if (static_cast<int>(best.size()) > cfg.refinements) best.resize(cfg.refinements);
  for (auto& d : best) {
    double step = 0.5;
    for (int it = 0; it < 400 && step > 1e-9; ++it) {
      auto trial = d.w;
      for (auto& row : trial)
        for (auto& x : row) x += step * cd(normal(rng), normal(rng));
      double v = normalized_value(G, wedge_coordinates(trial, basis));
      if (v < d.value) {
        d.w = std::move(trial);
        d.value = v;
      } else {
        step *= 0.97;
      }
    }
  }
  std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  PositivityVerdict out;
  out.evidence = {{"samples", cfg.samples}, {"refinements", cfg.refinements}, {"seed", cfg.seed}};
  for (const auto& d : best) {
    if (d.value > 1e-12) break;
    for (long den : {1L << 6, 1L << 12, 1L << 20}) {
      std::vector<RForm> ws;
      for (const auto& row : d.w) {
        RForm f(n);
        double scale = 0;
        for (const auto& x : row) scale = std::max(scale, std::abs(x));
        for (int j = 0; j < n; ++j) f += holo(n, j + 1, round_gauss(row[j] / scale, den));
        ws.push_back(f);
      }
      RForm psi = wedge_all(ws, n);
      if (psi.is_zero()) continue;
      GaussRational q = pairing_Q(Omega, k, 0, psi, psi);
      if (sgn(q.re()) <= 0) {
        json factors = json::array();
        for (const auto& f : ws) factors.push_back(f.str());
        out.status = PositivityStatus::NotPositive;
        out.detail = "decomposable psi with Q(psi, psi) = " + q.str();
        out.witness = psi;
        out.evidence["factors"] = factors;
        out.evidence["Q"] = q.str();
        return out;
      }
    }
  }
  out.status = PositivityStatus::Inconclusive;
  out.detail = "not positive definite; no decomposable witness found";
  out.evidence["min_sampled"] = best.empty() ? 0.0 : best.front().value;
  return out;
}

PositivityVerdict is_transverse(const AForm& Omega) {
  PositivityVerdict pd = is_positive_definite(Omega);
  if (pd.status == PositivityStatus::PositiveDefinite) {
    pd.status = PositivityStatus::Transverse;
    pd.detail = "positive definite, hence transverse";
    return pd;
  }
  pd.status = PositivityStatus::Inconclusive;
  return pd;
}

namespace {

template <class S>
Verdict strong_certificate(const Form<S>& Omega, const std::vector<Form<S>>& psis) {
  const int n = Omega.dim();
  Form<S> sum(n);
  int k = -1;
  for (std::size_t j = 0; j < psis.size(); ++j) {
    auto bd = psis[j].bidegree();
    if (!bd || bd->second != 0 || (k >= 0 && bd->first != k))
      throw Error(ErrorCode::BidegreeMismatch, "certificate elements must be nonzero (k,0)-forms of one degree");
    k = bd->first;
    if (!plucker_decomposable(psis[j]))
      return Verdict::refuted("certificate element is not decomposable",
                              {{"index", j}, {"psi", psis[j].str()}, {"psi^psi_or_plucker", "nonzero"}});
    sum += wedge(psis[j], conj(psis[j]));
  }
  if (k < 0) k = 0;
  sum *= scalar_lift<S>(i_power(k * k));
  Form<S> residual = Omega - sum;
  if (!residual.is_zero()) return Verdict::refuted("certificate identity fails", {{"residual", residual.str()}});
  return Verdict::proven("Omega = i^{k^2} sum psi_j ^ conj(psi_j) with decomposable psi_j", {{"terms", psis.size()}});
}

}  // namespace

Verdict check_strong_positivity_certificate(const RForm& Omega, const std::vector<RForm>& psis) {
  return strong_certificate(Omega, psis);
}

Verdict check_strong_positivity_certificate(const AForm& Omega, const std::vector<AForm>& psis) {
  return strong_certificate(Omega, psis);
}

namespace {

std::optional<Rational> rational_root(const Rational& x, unsigned k) {
  if (sgn(x) <= 0) return std::nullopt;
  mpz_class num, den;
  if (!mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), k)) return std::nullopt;
  return Rational(num, den);
}

double root_residual(const NForm& F, const NForm& Phi) {
  int n = Phi.dim();
  return max_abs(divided_power(F, n - 1) - Phi);
}

}  // namespace

RootMetric root_metric(const NForm& Phi) {
  const int n = Phi.dim();
  if (n < 2 || !Phi.is_homogeneous_of(n - 1, n - 1) || Phi.is_zero())
    throw Error(ErrorCode::BidegreeMismatch, "root_metric needs a nonzero (n-1,n-1)-form");
  auto A = root_pairing_matrix(Phi);
  Eigen::MatrixXcd M(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) M(j, k) = A[j][k];
  Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.eigenvalues().minCoeff() <= 0) throw Error(ErrorCode::NotPositive, "Phi is not positive definite");
  double det = es.eigenvalues().prod();
  double r = std::pow(det, 1.0 / (n - 1));
  Eigen::MatrixXcd h = r * H.inverse();
  Matrix<cd> hm(n, std::vector<cd>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) hm[a][b] = h(a, b);
  RootMetric out;
  out.numeric = hermitian_to_form(n, hm);
  out.residual = root_residual(out.numeric, Phi);
  return out;
}

RootMetric root_metric(const RForm& Phi) {
  const int n = Phi.dim();
  if (n < 2 || !Phi.is_homogeneous_of(n - 1, n - 1) || Phi.is_zero())
    throw Error(ErrorCode::BidegreeMismatch, "root_metric needs a nonzero (n-1,n-1)-form");
  if (!is_real(Phi)) throw Error(ErrorCode::NotReal, "Phi is not real");
  auto A = root_pairing_matrix(Phi);
  if (!ldl(A).positive_definite()) throw Error(ErrorCode::NotPositive, "Phi is not positive definite");
  GaussRational det = determinant(A);
  auto r = rational_root(det.re(), static_cast<unsigned>(n - 1));
  auto inv = inverse(A);
  if (!r) {
    // exact inverse, only the scalar root is rounded
    RForm F0 = hermitian_to_form(n, *inv);
    double scale = std::pow(det.re().get_d(), 1.0 / (n - 1));
    RootMetric out;
    out.numeric = to_numeric(F0) * cd(scale);
    out.residual = root_residual(out.numeric, to_numeric(Phi));
    return out;
  }
  Matrix<GaussRational> h = *inv;
  for (auto& row : h)
    for (auto& x : row) x *= GaussRational(*r);
  RForm F = hermitian_to_form(n, h);
  if (divided_power(F, n - 1) != Phi) throw Error(ErrorCode::Verification, "exact root does not reproduce Phi");
  RootMetric out;
  out.exact = F;
  out.numeric = to_numeric(F);
  out.residual = 0;
  return out;
}

}  // namespace hforms
