#pragma once

// Dense exact linear algebra over Q and Q(i), plus the few ring-level
// routines needed over AnalyticScalar.

#include <optional>
#include <vector>

#include "hforms/scalar.hpp"

namespace hforms {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline Rational conj(const Rational& r) { return r; }

inline json to_json(const std::vector<GaussRational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

/// Reduced row echelon form with unit pivots.
template <class T>
struct Echelon {
  Matrix<T> rows;
  std::vector<int> pivots;
  std::size_t cols = 0;

  std::size_t rank() const { return rows.size(); }

  /// v minus its projection along pivot columns; zero iff v is in the row span.
  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      T f = v[pivots[r]];
      if (is_zero(f)) continue;
      for (std::size_t c = 0; c < cols; ++c)
        if (!is_zero(rows[r][c])) v[c] -= f * rows[r][c];
    }
    return v;
  }
  bool contains(const std::vector<T>& v) const {
    for (const auto& x : reduce(v))
      if (!is_zero(x)) return false;
    return true;
  }
};

template <class T>
Echelon<T> row_echelon(const Matrix<T>& m, std::size_t cols = 0) {
  Echelon<T> e;
  e.cols = m.empty() ? cols : m[0].size();
  Matrix<T> a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < e.cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && is_zero(a[p][c])) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    T inv = T(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      T f = a[i][c];
      for (std::size_t k = c; k < e.cols; ++k)
        if (!is_zero(a[r][k])) a[i][k] -= f * a[r][k];
    }
    e.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_echelon(m).rank();
}

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
template <class T>
Matrix<T> kernel(const Matrix<T>& m, std::size_t cols) {
  Echelon<T> e = row_echelon(m, cols);
  e.cols = cols;
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  Matrix<T> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(cols, T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = T(0) - e.rows[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

/// Some x with m x = b, or nullopt.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b, std::size_t cols) {
  Matrix<T> aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon<T> e = row_echelon(aug, cols + 1);
  std::vector<T> x(cols, T(0));
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == static_cast<int>(cols)) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][cols];
  }
  return x;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  if (m.empty()) return {};
  Matrix<T> t(m[0].size(), std::vector<T>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

template <class T>
Matrix<T> identity(std::size_t n) {
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix<T> c(n, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

/// Determinant by Gaussian elimination over a field.
template <class T>
T determinant(Matrix<T> a) {
  const std::size_t n = a.size();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) return T(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = T(0) - det;
    }
    det *= a[c][c];
    T inv = T(1) / a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a[i][c])) continue;
      T f = a[i][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  const std::size_t n = a.size();
  Matrix<T> aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, T(0));
    aug[i][n + i] = T(1);
  }
  Echelon<T> e = row_echelon(aug);
  if (e.rank() != n || e.pivots.back() >= static_cast<int>(n)) return std::nullopt;
  Matrix<T> inv(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  return inv;
}

/// Determinant over a commutative ring by dynamic programming over column
/// subsets; no division. Suitable for n up to about 16.
template <class T>
T ring_determinant(const Matrix<T>& a) {
  const std::size_t n = a.size();
  if (n == 0) return T(1);
  std::vector<T> f(std::size_t(1) << n, T(0));
  std::vector<bool> live(f.size(), false);
  f[0] = T(1);
  live[0] = true;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if (!live[mask]) continue;
    std::size_t r = std::popcount(mask);
    if (r == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (std::size_t(1) << c) || is_zero(a[r][c])) continue;
      std::size_t next = mask | (std::size_t(1) << c);
      T term = f[mask] * a[r][c];
      if (std::popcount(mask >> (c + 1)) % 2) term = T(0) - term;
      f[next] += term;
      live[next] = true;
    }
  }
  return f.back();
}

/// Hermitian A = L diag(d) L^H with L unit lower triangular. Stops at the
/// first step showing A is not positive semidefinite and leaves a witness x
/// with x^H A x < 0. A zero pivot with zero column is kept as d_k = 0.
struct LdlResult {
  bool psd = true;
  std::vector<Rational> d;
  Matrix<GaussRational> L;
  std::vector<GaussRational> witness;

  bool positive_definite() const {
    if (!psd) return false;
    for (const auto& x : d)
      if (sgn(x) <= 0) return false;
    return true;
  }
};

inline GaussRational hermitian_form(const Matrix<GaussRational>& a, const std::vector<GaussRational>& x) {
  GaussRational s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += conj(x[i]) * a[i][j] * x[j];
  return s;
}

/// x with L^H x = y for unit lower triangular L.
inline std::vector<GaussRational> solve_lh(const Matrix<GaussRational>& L, const std::vector<GaussRational>& y) {
  const std::size_t n = y.size();
  std::vector<GaussRational> x = y;
  for (std::size_t ii = n; ii-- > 0;)
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= conj(L[j][ii]) * x[j];
  return x;
}

inline LdlResult ldl(const Matrix<GaussRational>& a) {
  const std::size_t n = a.size();
  LdlResult res;
  res.L = identity<GaussRational>(n);
  Matrix<GaussRational> s = a;
  for (std::size_t k = 0; k < n; ++k) {
    if (!s[k][k].is_real()) throw Error(ErrorCode::Domain, "ldl: matrix is not Hermitian");
    Rational dk = s[k][k].re();
    if (sgn(dk) < 0) {
      std::vector<GaussRational> y(n, GaussRational(0));
      y[k] = 1;
      res.psd = false;
      res.witness = solve_lh(res.L, y);
      res.d.push_back(dk);
      return res;
    }
    if (sgn(dk) == 0) {
      std::size_t j = k + 1;
      while (j < n && s[j][k].is_zero()) ++j;
      if (j < n) {
        // x = t e_k + e_j gives S_jj - (|S_jj| + 1) < 0.
        Rational sjj = s[j][j].re();
        Rational c = (abs(sjj) + 1) / (2 * norm(s[k][j]));
        std::vector<GaussRational> y(n, GaussRational(0));
        y[k] = GaussRational(-c) * s[k][j];
        y[j] = 1;
        res.psd = false;
        res.witness = solve_lh(res.L, y);
        res.d.push_back(dk);
        return res;
      }
      res.d.push_back(dk);
      continue;
    }
    res.d.push_back(dk);
    GaussRational inv(Rational(1 / dk));
    for (std::size_t i = k + 1; i < n; ++i) res.L[i][k] = s[i][k] * inv;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (res.L[i][k].is_zero()) continue;
      for (std::size_t j = k + 1; j < n; ++j) s[i][j] -= res.L[i][k] * GaussRational(dk) * conj(res.L[j][k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      s[i][k] = 0;
      s[k][i] = 0;
    }
  }
  return res;
}

/// Kernel of a matrix over AnalyticScalar using only unit pivots
/// (c e^{mU}); nullopt if elimination reaches a non-unit remainder.
inline std::optional<Matrix<AnalyticScalar>> analytic_kernel(Matrix<AnalyticScalar> a, std::size_t cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  std::vector<bool> used(cols, false);
  while (r < a.size()) {
    // drop zero rows
    bool found = false;
    std::size_t pr = 0, pc = 0;
    bool row_nonzero = false;
    for (std::size_t i = r; i < a.size() && !found; ++i)
      for (std::size_t c = 0; c < cols; ++c) {
        if (a[i][c].is_zero()) continue;
        row_nonzero = true;
        if (!used[c] && a[i][c].is_unit()) {
          found = true;
          pr = i;
          pc = c;
          break;
        }
      }
    if (!found) {
      if (row_nonzero) return std::nullopt;
      break;
    }
    std::swap(a[pr], a[r]);
    AnalyticScalar inv = a[r][pc].unit_inverse();
    for (auto& x : a[r]) x = x * inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][pc].is_zero()) continue;
      AnalyticScalar f = a[i][pc];
      for (std::size_t k = 0; k < cols; ++k)
        if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
    }
    used[pc] = true;
    pivots.push_back(static_cast<int>(pc));
    ++r;
  }
  Matrix<AnalyticScalar> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (used[f]) continue;
    std::vector<AnalyticScalar> v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace hforms
