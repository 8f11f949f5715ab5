#pragma once

// Exterior algebra of (p,q)-forms over a complex coframe phi^1..phi^n and
// its conjugates. A monomial phi^{I Jbar} is stored as a pair of index
// bitmasks and always means
//
//   phi^{i_1} ^ ... ^ phi^{i_p} ^ conj(phi)^{j_1} ^ ... ^ conj(phi)^{j_q}
//
// with i_1 < ... < i_p and j_1 < ... < j_q (holomorphic factors first).

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hforms/scalar.hpp"

namespace hforms {

constexpr int kMaxDimension = 12;

/// Ordered multi-index pair (I, J); bit k-1 set means index k present.
struct MultiIndexPair {
  std::uint32_t hol = 0;
  std::uint32_t anti = 0;

  int p() const { return std::popcount(hol); }
  int q() const { return std::popcount(anti); }
  int degree() const { return p() + q(); }
  friend bool operator==(const MultiIndexPair&, const MultiIndexPair&) = default;
};

std::vector<int> mask_indices(std::uint32_t mask);
std::uint32_t indices_mask(const std::vector<int>& indices);

/// Lexicographic order on equal-size index sets.
inline bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
  std::uint32_t d = a ^ b;
  if (d == 0) return false;
  std::uint32_t low = d & (~d + 1);
  return (a & low) != 0;
}

/// Orders monomials by bidegree, then lexicographically by I, then J.
struct MultiIndexLess {
  bool operator()(const MultiIndexPair& x, const MultiIndexPair& y) const {
    if (x.p() != y.p()) return x.p() < y.p();
    if (x.q() != y.q()) return x.q() < y.q();
    if (x.hol != y.hol) return mask_lex_less(x.hol, y.hol);
    return mask_lex_less(x.anti, y.anti);
  }
};

/// (-1)^{#{(a,b) : a in A, b in B, a > b}}: sign of sorting A followed by B.
int merge_sign(std::uint32_t a, std::uint32_t b);

/// Sign and key of the product of two monomials, or nullopt if it vanishes.
std::optional<std::pair<int, MultiIndexPair>> monomial_wedge(const MultiIndexPair& x, const MultiIndexPair& y);

/// All monomials of bidegree (p,q) in dimension n, in MultiIndexLess order.
std::vector<MultiIndexPair> monomial_basis(int n, int p, int q);

/// Literal syntax `a12~34` for phi^{12 conj(34)}; the empty monomial prints as `1`.
std::string monomial_str(const MultiIndexPair& k);

template <class S>
S scalar_lift(const GaussRational& c);
template <>
inline GaussRational scalar_lift<GaussRational>(const GaussRational& c) {
  return c;
}
template <>
inline AnalyticScalar scalar_lift<AnalyticScalar>(const GaussRational& c) {
  return AnalyticScalar(c);
}
template <>
inline std::complex<double> scalar_lift<std::complex<double>>(const GaussRational& c) {
  return c.to_complex();
}

inline std::string scalar_str(const GaussRational& c) { return c.str(); }
inline std::string scalar_str(const AnalyticScalar& c) {
  std::string s = c.str();
  return c.terms().size() > 1 ? "[" + s + "]" : s;
}
std::string scalar_str(const std::complex<double>& c);

inline bool scalar_is_negative(const GaussRational& c) { return c.is_real() && sgn(c.re()) < 0; }
inline bool scalar_is_negative(const AnalyticScalar&) { return false; }
inline bool scalar_is_negative(const std::complex<double>&) { return false; }

template <class S>
class Form {
 public:
  using Key = MultiIndexPair;
  using Terms = std::map<Key, S, MultiIndexLess>;

  Form() = default;
  explicit Form(int n) : n_(n) {
    if (n < 0 || n > kMaxDimension) throw Error(ErrorCode::Domain, "dimension out of range");
  }

  /// The constant (0,0)-form c.
  static Form constant(int n, const S& c) { return monomial(n, Key{}, c); }

  static Form monomial(int n, const Key& k, const S& c) {
    Form f(n);
    f.add(k, c);
    return f;
  }

  /// c * phi^{hol[0]} ^ ... ^ conj(phi)^{anti[0]} ^ ... with indices in any
  /// order (1-based); the permutation sign is applied, repeated indices give 0.
  static Form from_indices(int n, const std::vector<int>& hol, const std::vector<int>& anti, const S& c) {
    Form f(n);
    int sign = 1;
    std::uint32_t hmask = 0, amask = 0;
    for (int i : hol) {
      check_index(n, i);
      std::uint32_t bit = 1u << (i - 1);
      if (hmask & bit) return f;
      sign *= merge_sign(hmask, bit);
      hmask |= bit;
    }
    for (int j : anti) {
      check_index(n, j);
      std::uint32_t bit = 1u << (j - 1);
      if (amask & bit) return f;
      sign *= merge_sign(amask, bit);
      amask |= bit;
    }
    f.add(Key{hmask, amask}, sign > 0 ? c : S() - c);
    return f;
  }

  int dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? S() : it->second;
  }

  /// Bidegree if homogeneous and nonzero.
  std::optional<std::pair<int, int>> bidegree() const {
    if (terms_.empty()) return std::nullopt;
    int p = terms_.begin()->first.p(), q = terms_.begin()->first.q();
    for (const auto& [k, c] : terms_)
      if (k.p() != p || k.q() != q) return std::nullopt;
    return std::make_pair(p, q);
  }

  /// Total degree if all terms share it.
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree();
    for (const auto& [k, c] : terms_)
      if (k.degree() != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous_of(int p, int q) const {
    for (const auto& [k, c] : terms_)
      if (k.p() != p || k.q() != q) return false;
    return true;
  }

  Form component(int p, int q) const {
    Form r(n_);
    for (const auto& [k, c] : terms_)
      if (k.p() == p && k.q() == q) r.terms_.emplace(k, c);
    return r;
  }

  /// Distinct bidegrees present, in order.
  std::vector<std::pair<int, int>> bidegrees() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [k, c] : terms_) {
      std::pair<int, int> pq{k.p(), k.q()};
      if (out.empty() || out.back() != pq) out.push_back(pq);
    }
    return out;
  }

  void add(const Key& k, const S& c) {
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  Form& operator+=(const Form& o) {
    adopt_dim(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    adopt_dim(o);
    for (const auto& [k, c] : o.terms_) add(k, S() - c);
    return *this;
  }
  Form& operator*=(const S& s) {
    if (is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * s;
      if (is_zero_scalar(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(const Form& a) {
    Form r(a.n_);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, S() - c);
    return r;
  }
  friend Form operator*(const S& s, Form a) { return a *= s; }
  friend Form operator*(Form a, const S& s) { return a *= s; }
  friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  /// Coefficientwise map into another scalar ring.
  template <class T, class Fn>
  Form<T> map(Fn&& fn) const {
    Form<T> r(n_);
    for (const auto& [k, c] : terms_) r.add(k, fn(c));
    return r;
  }

  /// Literal form: `3 a12~12 + (0+1i) a1~2`.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      bool negative = scalar_is_negative(c);
      S shown = negative ? S() - c : c;
      if (!first)
        s += negative ? " - " : " + ";
      else if (negative)
        s += "-";
      first = false;
      if (k == Key{})
        s += scalar_str(shown);
      else if (shown == S(1))
        s += monomial_str(k);
      else
        s += scalar_str(shown) + " " + monomial_str(k);
    }
    return s;
  }

 private:
  static bool is_zero_scalar(const S& c) { return ::hforms::is_zero(c); }
  static void check_index(int n, int i) {
    if (i < 1 || i > n) throw Error(ErrorCode::Domain, "coframe index out of range");
  }
  void adopt_dim(const Form& o) {
    if (n_ == 0) n_ = o.n_;
    if (o.n_ != 0 && o.n_ != n_) throw Error(ErrorCode::Domain, "forms of different dimension");
  }

  int n_ = 0;
  Terms terms_;
};

using RForm = Form<GaussRational>;
using AForm = Form<AnalyticScalar>;
using NForm = Form<std::complex<double>>;

/// phi^k (1-based)
template <class S = GaussRational>
Form<S> holo(int n, int k, const S& c = S(1)) {
  return Form<S>::from_indices(n, {k}, {}, c);
}

/// conj(phi)^k (1-based)
template <class S = GaussRational>
Form<S> antiholo(int n, int k, const S& c = S(1)) {
  return Form<S>::from_indices(n, {}, {k}, c);
}

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
  int n = a.dim() ? a.dim() : b.dim();
  if (a.dim() && b.dim() && a.dim() != b.dim()) throw Error(ErrorCode::Domain, "wedge of forms of different dimension");
  Form<S> r(n);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      auto m = monomial_wedge(ka, kb);
      if (!m) continue;
      S c = ca * cb;
      r.add(m->second, m->first > 0 ? c : S() - c);
    }
  return r;
}

template <class S>
Form<S> wedge_all(const std::vector<Form<S>>& fs, int n) {
  Form<S> r = Form<S>::constant(n, S(1));
  for (const auto& f : fs) r = wedge(r, f);
  return r;
}

/// a^k (wedge power), a^0 = 1.
template <class S>
Form<S> wedge_power(const Form<S>& a, int k) {
  Form<S> r = Form<S>::constant(a.dim(), S(1));
  for (int j = 0; j < k; ++j) r = wedge(r, a);
  return r;
}

/// a^k / k!
template <class S>
Form<S> divided_power(const Form<S>& a, int k) {
  Form<S> r = Form<S>::constant(a.dim(), S(1));
  for (int j = 1; j <= k; ++j) {
    r = wedge(r, a);
    r *= scalar_lift<S>(GaussRational(make_rational(1, j)));
  }
  return r;
}

/// Complex conjugation; conj(phi^{I Jbar}) = (-1)^{pq} phi^{J Ibar}.
template <class S>
Form<S> conj(const Form<S>& a) {
  Form<S> r(a.dim());
  for (const auto& [k, c] : a.terms()) {
    S cc = conj(c);
    bool odd = (k.p() * k.q()) % 2 != 0;
    r.add(MultiIndexPair{k.anti, k.hol}, odd ? S() - cc : cc);
  }
  return r;
}

template <class S>
bool is_real(const Form<S>& a) {
  return conj(a) == a;
}

/// Tangent vector sum_k hol[k] Z_{k+1} + anti[k] conj(Z)_{k+1}.
template <class S>
struct Vector {
  std::vector<S> hol;
  std::vector<S> anti;

  static Vector Z(int n, int k) {
    Vector v{std::vector<S>(n), std::vector<S>(n)};
    v.hol[k - 1] = S(1);
    return v;
  }
  static Vector Zbar(int n, int k) {
    Vector v{std::vector<S>(n), std::vector<S>(n)};
    v.anti[k - 1] = S(1);
    return v;
  }
  int dim() const { return static_cast<int>(hol.size()); }
};

/// Interior product of a single frame vector (index k is 1-based).
template <class S>
Form<S> contract_frame(bool antiholomorphic, int k, const Form<S>& a) {
  Form<S> r(a.dim());
  std::uint32_t bit = 1u << (k - 1);
  for (const auto& [key, c] : a.terms()) {
    if (!antiholomorphic) {
      if (!(key.hol & bit)) continue;
      int pos = std::popcount(key.hol & (bit - 1));
      r.add(MultiIndexPair{key.hol & ~bit, key.anti}, pos % 2 ? S() - c : c);
    } else {
      if (!(key.anti & bit)) continue;
      int pos = key.p() + std::popcount(key.anti & (bit - 1));
      r.add(MultiIndexPair{key.hol, key.anti & ~bit}, pos % 2 ? S() - c : c);
    }
  }
  return r;
}

template <class S>
Form<S> contract(const Vector<S>& v, const Form<S>& a) {
  Form<S> r(a.dim());
  for (int k = 1; k <= v.dim(); ++k) {
    if (!is_zero(v.hol[k - 1])) r += v.hol[k - 1] * contract_frame(false, k, a);
    if (!is_zero(v.anti[k - 1])) r += v.anti[k - 1] * contract_frame(true, k, a);
  }
  return r;
}

/// Key of the top monomial phi^{1..n} conj(phi)^{1..n}.
inline MultiIndexPair top_key(int n) {
  std::uint32_t all = n == 0 ? 0u : ((1u << n) - 1);
  return {all, all};
}

/// Coefficient c with a = c * vol_n, vol_n = i^{n^2} phi^{1..n} ^ conj(phi)^{1..n}.
template <class S>
S vol_coefficient(const Form<S>& a) {
  const int n = a.dim();
  for (const auto& [k, c] : a.terms())
    if (k.p() != n || k.q() != n) throw Error(ErrorCode::BidegreeMismatch, "vol_coefficient needs an (n,n)-form");
  return a.coefficient(top_key(n)) * scalar_lift<S>(i_power(-n * n));
}

/// vol_n itself.
template <class S = GaussRational>
Form<S> volume_form(int n) {
  return Form<S>::monomial(n, top_key(n), scalar_lift<S>(i_power(n * n)));
}

template <class S>
Form<S> lefschetz(const Form<S>& omega, const Form<S>& a) {
  return wedge(omega, a);
}

/// omega_std = i sum_j phi^j ^ conj(phi)^j
template <class S = GaussRational>
Form<S> standard_kahler(int n) {
  Form<S> f(n);
  for (int j = 1; j <= n; ++j) f += Form<S>::from_indices(n, {j}, {j}, scalar_lift<S>(GaussRational::i()));
  return f;
}

/// Coordinates of a form in the monomial basis of (p,q).
template <class S>
std::vector<S> coordinates(const Form<S>& a, const std::vector<MultiIndexPair>& basis) {
  std::vector<S> v;
  v.reserve(basis.size());
  for (const auto& k : basis) v.push_back(a.coefficient(k));
  return v;
}

template <class S>
Form<S> from_coordinates(int n, const std::vector<S>& v, const std::vector<MultiIndexPair>& basis) {
  Form<S> f(n);
  for (std::size_t i = 0; i < basis.size(); ++i) f.add(basis[i], v[i]);
  return f;
}

template <class S>
NForm to_numeric(const Form<S>& a, std::complex<double> u = 0.0) {
  NForm r(a.dim());
  for (const auto& [k, c] : a.terms()) {
    if constexpr (std::is_same_v<S, AnalyticScalar>)
      r.add(k, eval_numeric(c, u));
    else if constexpr (std::is_same_v<S, GaussRational>)
      r.add(k, c.to_complex());
    else
      r.add(k, c);
  }
  return r;
}

/// Largest coefficient modulus.
double max_abs(const NForm& a);

/// Evaluates an analytic form at u = 0 exactly.
RForm at_origin(const AForm& a);
AForm lift_analytic(const RForm& a);

/// Parses the literal syntax of Form::str() for Gaussian-rational forms.
RForm parse_form(int n, const std::string& text);

/// Decomposability of a (k,0)-form: returns 1-forms w_1..w_k and c with
/// a = c w_1 ^ ... ^ w_k, or nullopt.
std::optional<std::vector<RForm>> decompose(const RForm& a);

inline json to_json(const RForm& f) { return f.str(); }

}  // namespace hforms
