#pragma once

// Exact coefficient rings.
//
//   Rational        arbitrary precision rational (GMP)
//   GaussRational   Q(i)
//   AnalyticScalar  finite sums c * u^a * ubar^b * e^{mU} with U = u*ubar
//   UPolynomial     finite sums c * U^k * e^{mU}, c rational (the real,
//                   rotation-invariant part of AnalyticScalar)

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hforms/verdict.hpp"

namespace hforms {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& r);

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(int v) : re_(v), im_(0) {}
  GaussRational(long v) : re_(v), im_(0) {}
  GaussRational(Rational re) : re_(std::move(re)), im_(0) {}
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  /// Positive real number (im == 0, re > 0).
  bool is_positive() const { return sgn(im_) == 0 && sgn(re_) > 0; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return GaussRational(-a.re_, -a.im_); }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Literal syntax: `p/q` when real, `(p/q+r/s i)` otherwise.
  std::string str() const;
  std::complex<double> to_complex() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussRational conj(const GaussRational& z);
/// |z|^2
Rational norm(const GaussRational& z);
/// i^k for any integer k.
GaussRational i_power(int k);
inline bool is_zero(const GaussRational& z) { return z.is_zero(); }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

/// Monomial exponent of u^a ubar^b e^{mU}.
struct AnalyticExponent {
  int a = 0;
  int b = 0;
  int m = 0;
  friend auto operator<=>(const AnalyticExponent&, const AnalyticExponent&) = default;
};

class AnalyticScalar {
 public:
  using Terms = std::map<AnalyticExponent, GaussRational>;

  AnalyticScalar() = default;
  AnalyticScalar(int v) : AnalyticScalar(GaussRational(v)) {}
  AnalyticScalar(long v) : AnalyticScalar(GaussRational(v)) {}
  AnalyticScalar(const Rational& v) : AnalyticScalar(GaussRational(v)) {}
  AnalyticScalar(const GaussRational& c);

  static AnalyticScalar term(GaussRational c, int a, int b, int m);
  static AnalyticScalar u() { return term(1, 1, 0, 0); }
  static AnalyticScalar ubar() { return term(1, 0, 1, 0); }
  /// U = |u|^2
  static AnalyticScalar U() { return term(1, 1, 1, 0); }
  /// e^{mU}
  static AnalyticScalar E(int m) { return term(1, 0, 0, m); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; throws unless is_constant().
  GaussRational constant() const;
  /// Units of the ring: c * e^{mU} with c != 0.
  bool is_unit() const;
  AnalyticScalar unit_inverse() const;
  /// Exact value at u = 0.
  GaussRational at_origin() const;
  bool depends_on_u() const;

  AnalyticScalar& operator+=(const AnalyticScalar& o);
  AnalyticScalar& operator-=(const AnalyticScalar& o);
  AnalyticScalar& operator*=(const AnalyticScalar& o);

  friend AnalyticScalar operator+(AnalyticScalar a, const AnalyticScalar& b) { return a += b; }
  friend AnalyticScalar operator-(AnalyticScalar a, const AnalyticScalar& b) { return a -= b; }
  friend AnalyticScalar operator*(const AnalyticScalar& a, const AnalyticScalar& b);
  friend AnalyticScalar operator-(const AnalyticScalar& a);
  friend bool operator==(const AnalyticScalar& a, const AnalyticScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const AnalyticScalar& a, const AnalyticScalar& b) { return !(a == b); }

  /// Literal syntax, e.g. `(0+1i)*u*E[2] - 3*~u^2`.
  std::string str() const;

 private:
  void add_term(const AnalyticExponent& e, const GaussRational& c);
  Terms terms_;
};

AnalyticScalar conj(const AnalyticScalar& x);
inline bool is_zero(const AnalyticScalar& x) { return x.is_zero(); }
AnalyticScalar partial_u(const AnalyticScalar& x);
AnalyticScalar partial_ubar(const AnalyticScalar& x);
std::complex<double> eval_numeric(const AnalyticScalar& x, std::complex<double> u);
AnalyticScalar pow(const AnalyticScalar& x, int k);

/// Parses the analytic literal syntax produced by AnalyticScalar::str().
AnalyticScalar parse_analytic(const std::string& text);

class UPolynomial {
 public:
  /// (k, m) -> coefficient of U^k e^{mU}
  using Terms = std::map<std::pair<int, int>, Rational>;

  UPolynomial() = default;
  UPolynomial(long c);
  static UPolynomial term(Rational c, int k, int m);
  static UPolynomial U() { return term(1, 1, 0); }
  static UPolynomial E(int m) { return term(1, 0, m); }

  /// Restriction of an analytic scalar; nullopt if it has u^a ubar^b with a != b
  /// or a non-real coefficient.
  static std::optional<UPolynomial> from_analytic(const AnalyticScalar& x);
  AnalyticScalar to_analytic() const;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// d/dU
  UPolynomial derivative() const;
  /// Exact value at U = 0.
  Rational at_zero() const;
  double eval(double U) const;
  /// Multiply by e^{shift*U}.
  UPolynomial shifted(int shift) const;
  std::vector<int> exponents() const;

  UPolynomial& operator+=(const UPolynomial& o);
  UPolynomial& operator-=(const UPolynomial& o);
  friend UPolynomial operator+(UPolynomial a, const UPolynomial& b) { return a += b; }
  friend UPolynomial operator-(UPolynomial a, const UPolynomial& b) { return a -= b; }
  friend UPolynomial operator*(const UPolynomial& a, const UPolynomial& b);
  friend UPolynomial operator-(const UPolynomial& a);
  friend bool operator==(const UPolynomial& a, const UPolynomial& b) { return a.terms_ == b.terms_; }

  /// e.g. `e^{2U}(3U - 1) + 4`
  std::string str() const;

 private:
  void add_term(int k, int m, const Rational& c);
  Terms terms_;
};

/// Closed rational interval.
struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Enclosure of e^x for rational x; width at most about 2^-bits.
RationalInterval exp_enclosure(const Rational& x, int bits);
/// Enclosure of p(U0).
RationalInterval eval_enclosure(const UPolynomial& p, const Rational& U0, int bits);

/// Decides p(U) > 0 for all U >= 0.
///
/// Proven carries a certificate chain in `evidence` (value at 0 plus a
/// nonnegativity proof of the derivative, recursively; nonnegative term
/// inspection at the leaves). Refuted carries a rational U0 with p(U0) <= 0
/// established by exact interval enclosure.
Verdict sign_on_ray(const UPolynomial& p);

}  // namespace hforms
