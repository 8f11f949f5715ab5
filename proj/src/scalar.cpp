#include "hforms/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace hforms {

std::string to_string(Status s) {
  switch (s) {
    case Status::Proven:
      return "Proven";
    case Status::Refuted:
      return "Refuted";
    case Status::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

json Verdict::to_json() const {
  return json{{"status", to_string(status)}, {"detail", detail}, {"evidence", evidence}};
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::Domain, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- GaussRational

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  Rational den = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(den) == 0) throw Error(ErrorCode::Domain, "division by zero in Q(i)");
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::str() const {
  if (is_real()) return re_.get_str();
  std::string s = "(" + re_.get_str();
  if (sgn(im_) >= 0) s += "+";
  s += im_.get_str() + "i)";
  return s;
}

std::complex<double> GaussRational::to_complex() const { return {re_.get_d(), im_.get_d()}; }

GaussRational conj(const GaussRational& z) { return GaussRational(z.re(), -z.im()); }

Rational norm(const GaussRational& z) { return z.re() * z.re() + z.im() * z.im(); }

GaussRational i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return GaussRational(1);
    case 1:
      return GaussRational::i();
    case 2:
      return GaussRational(-1);
    default:
      return -GaussRational::i();
  }
}

// ---------------------------------------------------------------- AnalyticScalar

AnalyticScalar::AnalyticScalar(const GaussRational& c) {
  if (!c.is_zero()) terms_.emplace(AnalyticExponent{}, c);
}

AnalyticScalar AnalyticScalar::term(GaussRational c, int a, int b, int m) {
  if (a < 0 || b < 0) throw Error(ErrorCode::Domain, "negative power of u");
  AnalyticScalar x;
  x.add_term({a, b, m}, c);
  return x;
}

void AnalyticScalar::add_term(const AnalyticExponent& e, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool AnalyticScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == AnalyticExponent{});
}

GaussRational AnalyticScalar::constant() const {
  if (!is_constant()) throw Error(ErrorCode::Domain, "analytic scalar is not constant: " + str());
  return terms_.empty() ? GaussRational() : terms_.begin()->second;
}

bool AnalyticScalar::is_unit() const {
  return terms_.size() == 1 && terms_.begin()->first.a == 0 && terms_.begin()->first.b == 0;
}

AnalyticScalar AnalyticScalar::unit_inverse() const {
  if (!is_unit()) throw Error(ErrorCode::Domain, "not a unit: " + str());
  const auto& [e, c] = *terms_.begin();
  return term(GaussRational(1) / c, 0, 0, -e.m);
}

GaussRational AnalyticScalar::at_origin() const {
  GaussRational v;
  for (const auto& [e, c] : terms_)
    if (e.a == 0 && e.b == 0) v += c;
  return v;
}

bool AnalyticScalar::depends_on_u() const {
  for (const auto& [e, c] : terms_)
    if (e.a != 0 || e.b != 0 || e.m != 0) return true;
  return false;
}

AnalyticScalar& AnalyticScalar::operator+=(const AnalyticScalar& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

AnalyticScalar& AnalyticScalar::operator-=(const AnalyticScalar& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

AnalyticScalar operator*(const AnalyticScalar& x, const AnalyticScalar& y) {
  AnalyticScalar r;
  for (const auto& [e1, c1] : x.terms_)
    for (const auto& [e2, c2] : y.terms_) r.add_term({e1.a + e2.a, e1.b + e2.b, e1.m + e2.m}, c1 * c2);
  return r;
}

AnalyticScalar& AnalyticScalar::operator*=(const AnalyticScalar& o) { return *this = *this * o; }

AnalyticScalar operator-(const AnalyticScalar& x) {
  AnalyticScalar r;
  for (const auto& [e, c] : x.terms_) r.terms_.emplace(e, -c);
  return r;
}

namespace {

std::string power_str(const std::string& base, int k) {
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

}  // namespace

std::string AnalyticScalar::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::vector<std::string> factors;
    if (e.a) factors.push_back(power_str("u", e.a));
    if (e.b) factors.push_back(power_str("~u", e.b));
    if (e.m) factors.push_back("E[" + std::to_string(e.m) + "]");
    GaussRational coeff = c;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) coeff = -c;
    std::string body;
    if (!(coeff == GaussRational(1)) || factors.empty()) {
      body = coeff.str();
      for (const auto& f : factors) body += "*" + f;
    } else {
      for (std::size_t k = 0; k < factors.size(); ++k) body += (k ? "*" : "") + factors[k];
    }
    if (first)
      s += negative ? "-" + body : body;
    else
      s += negative ? " - " + body : " + " + body;
    first = false;
  }
  return s;
}

AnalyticScalar conj(const AnalyticScalar& x) {
  AnalyticScalar r;
  for (const auto& [e, c] : x.terms()) r += AnalyticScalar::term(conj(c), e.b, e.a, e.m);
  return r;
}

// d/du (u^a ubar^b e^{m u ubar}) = a u^{a-1} ubar^b e^{mU} + m u^a ubar^{b+1} e^{mU}
AnalyticScalar partial_u(const AnalyticScalar& x) {
  AnalyticScalar r;
  for (const auto& [e, c] : x.terms()) {
    if (e.a > 0) r += AnalyticScalar::term(c * GaussRational(e.a), e.a - 1, e.b, e.m);
    if (e.m != 0) r += AnalyticScalar::term(c * GaussRational(e.m), e.a, e.b + 1, e.m);
  }
  return r;
}

AnalyticScalar partial_ubar(const AnalyticScalar& x) {
  AnalyticScalar r;
  for (const auto& [e, c] : x.terms()) {
    if (e.b > 0) r += AnalyticScalar::term(c * GaussRational(e.b), e.a, e.b - 1, e.m);
    if (e.m != 0) r += AnalyticScalar::term(c * GaussRational(e.m), e.a + 1, e.b, e.m);
  }
  return r;
}

std::complex<double> eval_numeric(const AnalyticScalar& x, std::complex<double> u) {
  const double U = std::norm(u);
  const std::complex<double> ub = std::conj(u);
  std::complex<double> s = 0.0;
  for (const auto& [e, c] : x.terms())
    s += c.to_complex() * std::pow(u, e.a) * std::pow(ub, e.b) * std::exp(e.m * U);
  return s;
}

AnalyticScalar pow(const AnalyticScalar& x, int k) {
  if (k < 0) throw Error(ErrorCode::Domain, "negative power");
  AnalyticScalar r(1);
  for (int j = 0; j < k; ++j) r *= x;
  return r;
}

namespace {

class AnalyticParser {
 public:
  explicit AnalyticParser(const std::string& s) : s_(s) {}

  AnalyticScalar parse() {
    skip();
    AnalyticScalar total;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      AnalyticScalar t = factor();
      skip();
      while (peek() == '*') {
        get();
        skip();
        t *= factor();
        skip();
      }
      total += sign < 0 ? -t : t;
      first = false;
    }
    if (first) fail("empty scalar");
    return total;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "analytic scalar, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  long integer() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      get();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (get() - '0');
      if (v > 1'000'000'000L) fail("integer too large");
    }
    return neg ? -v : v;
  }

  Rational rational() {
    Rational r(integer());
    if (peek() == '/') {
      get();
      long den = integer();
      if (den <= 0) fail("non-positive denominator");
      r /= Rational(den);
    }
    return r;
  }

  int exponent() {
    if (peek() != '^') return 1;
    get();
    long k = integer();
    if (k < 0 || k > 64) fail("bad exponent");
    return static_cast<int>(k);
  }

  AnalyticScalar factor() {
    char c = peek();
    if (c == '(') {
      get();
      Rational re = rational();
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-' in complex literal");
      bool neg = get() == '-';
      Rational im = rational();
      if (peek() != 'i') fail("expected 'i'");
      get();
      if (peek() != ')') fail("expected ')'");
      get();
      return AnalyticScalar(GaussRational(re, neg ? Rational(-im) : im));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return AnalyticScalar(rational());
    if (c == 'u') {
      get();
      return AnalyticScalar::term(1, exponent(), 0, 0);
    }
    if (c == '~') {
      get();
      if (peek() != 'u') fail("expected 'u' after '~'");
      get();
      return AnalyticScalar::term(1, 0, exponent(), 0);
    }
    if (c == 'U') {
      get();
      int k = exponent();
      return AnalyticScalar::term(1, k, k, 0);
    }
    if (c == 'E') {
      get();
      if (peek() != '[') fail("expected '['");
      get();
      long m = integer();
      if (peek() != ']') fail("expected ']'");
      get();
      return AnalyticScalar::E(static_cast<int>(m));
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

AnalyticScalar parse_analytic(const std::string& text) { return AnalyticParser(text).parse(); }

// ---------------------------------------------------------------- UPolynomial

UPolynomial::UPolynomial(long c) { add_term(0, 0, Rational(c)); }

UPolynomial UPolynomial::term(Rational c, int k, int m) {
  UPolynomial p;
  p.add_term(k, m, c);
  return p;
}

void UPolynomial::add_term(int k, int m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(std::make_pair(k, m), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::optional<UPolynomial> UPolynomial::from_analytic(const AnalyticScalar& x) {
  UPolynomial p;
  for (const auto& [e, c] : x.terms()) {
    if (e.a != e.b || !c.is_real()) return std::nullopt;
    p.add_term(e.a, e.m, c.re());
  }
  return p;
}

AnalyticScalar UPolynomial::to_analytic() const {
  AnalyticScalar x;
  for (const auto& [km, c] : terms_) x += AnalyticScalar::term(GaussRational(c), km.first, km.first, km.second);
  return x;
}

UPolynomial UPolynomial::derivative() const {
  UPolynomial d;
  for (const auto& [km, c] : terms_) {
    auto [k, m] = km;
    if (k > 0) d.add_term(k - 1, m, c * k);
    if (m != 0) d.add_term(k, m, c * m);
  }
  return d;
}

Rational UPolynomial::at_zero() const {
  Rational v = 0;
  for (const auto& [km, c] : terms_)
    if (km.first == 0) v += c;
  return v;
}

double UPolynomial::eval(double U) const {
  double s = 0;
  for (const auto& [km, c] : terms_) s += c.get_d() * std::pow(U, km.first) * std::exp(km.second * U);
  return s;
}

UPolynomial UPolynomial::shifted(int shift) const {
  UPolynomial r;
  for (const auto& [km, c] : terms_) r.add_term(km.first, km.second + shift, c);
  return r;
}

std::vector<int> UPolynomial::exponents() const {
  std::set<int> ms;
  for (const auto& [km, c] : terms_) ms.insert(km.second);
  return {ms.begin(), ms.end()};
}

UPolynomial& UPolynomial::operator+=(const UPolynomial& o) {
  for (const auto& [km, c] : o.terms_) add_term(km.first, km.second, c);
  return *this;
}

UPolynomial& UPolynomial::operator-=(const UPolynomial& o) {
  for (const auto& [km, c] : o.terms_) add_term(km.first, km.second, -c);
  return *this;
}

UPolynomial operator*(const UPolynomial& a, const UPolynomial& b) {
  UPolynomial r;
  for (const auto& [k1, c1] : a.terms_)
    for (const auto& [k2, c2] : b.terms_) r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

UPolynomial operator-(const UPolynomial& a) {
  UPolynomial r;
  for (const auto& [km, c] : a.terms_) r.terms_.emplace(km, -c);
  return r;
}

std::string UPolynomial::str() const {
  if (terms_.empty()) return "0";
  // group by exponential factor, highest first
  std::map<int, std::vector<std::pair<int, Rational>>, std::greater<>> groups;
  for (const auto& [km, c] : terms_) groups[km.second].emplace_back(km.first, c);
  std::string s;
  bool first_group = true;
  for (auto& [m, poly] : groups) {
    std::sort(poly.begin(), poly.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::string inner;
    bool first = true;
    for (const auto& [k, c] : poly) {
      Rational ac = abs(c);
      std::string mono;
      if (k == 0)
        mono = ac.get_str();
      else {
        mono = (ac == 1 ? "" : ac.get_str()) + (k == 1 ? "U" : "U^" + std::to_string(k));
      }
      if (first)
        inner += (sgn(c) < 0 ? "-" : "") + mono;
      else
        inner += (sgn(c) < 0 ? " - " : " + ") + mono;
      first = false;
    }
    std::string group;
    if (m == 0)
      group = inner;
    else {
      std::string e = m == 1 ? "e^{U}" : "e^{" + std::to_string(m) + "U}";
      if (poly.size() == 1 && poly[0].first == 0 && abs(poly[0].second) == 1)
        group = (sgn(poly[0].second) < 0 ? "-" : "") + e;
      else if (poly.size() == 1)
        group = inner + "*" + e;
      else
        group = e + "(" + inner + ")";
    }
    if (first_group)
      s = group;
    else if (!group.empty() && group[0] == '-')
      s += " - " + group.substr(1);
    else
      s += " + " + group;
    first_group = false;
  }
  return s;
}

// ---------------------------------------------------------------- exact enclosures

namespace {

Rational floor_to_grid(const Rational& x, int bits) {
  mpz_class scale = 1;
  scale <<= bits;
  mpz_class t = x.get_num() * scale;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), x.get_den().get_mpz_t());
  Rational r(q, scale);
  r.canonicalize();
  return r;
}

Rational ceil_to_grid(const Rational& x, int bits) {
  mpz_class scale = 1;
  scale <<= bits;
  mpz_class t = x.get_num() * scale;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), t.get_mpz_t(), x.get_den().get_mpz_t());
  Rational r(q, scale);
  r.canonicalize();
  return r;
}

RationalInterval exp_nonneg(const Rational& x, int bits) {
  // Taylor partial sum S_N, remainder bounded by t_{N+1} * (N+2)/(N+2-x).
  Rational sum = 1;
  Rational term = 1;
  Rational eps(1);
  eps /= Rational(mpz_class(1) << bits);
  int k = 0;
  while (true) {
    ++k;
    term *= x;
    term /= k;
    sum += term;
    if (k + 2 > 2 * x && term < eps) break;
    if (k > 100000) throw Error(ErrorCode::Domain, "exp enclosure did not converge");
  }
  Rational next = term * x / (k + 1);
  Rational tail = next * Rational(k + 2) / (Rational(k + 2) - x);
  return {floor_to_grid(sum, bits + 4), ceil_to_grid(sum + tail, bits + 4)};
}

RationalInterval mul(const RationalInterval& a, const RationalInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

}  // namespace

RationalInterval exp_enclosure(const Rational& x, int bits) {
  if (sgn(x) == 0) return {1, 1};
  if (sgn(x) > 0) return exp_nonneg(x, bits);
  RationalInterval r = exp_nonneg(-x, bits);
  return {Rational(1) / r.hi, Rational(1) / r.lo};
}

RationalInterval eval_enclosure(const UPolynomial& p, const Rational& U0, int bits) {
  RationalInterval acc{0, 0};
  std::map<int, RationalInterval> exps;
  for (const auto& [km, c] : p.terms()) {
    auto [k, m] = km;
    auto it = exps.find(m);
    if (it == exps.end()) it = exps.emplace(m, exp_enclosure(U0 * m, bits)).first;
    Rational power = 1;
    for (int j = 0; j < k; ++j) power *= U0;
    Rational f = c * power;
    RationalInterval t = mul({f, f}, it->second);
    acc.lo += t.lo;
    acc.hi += t.hi;
  }
  return acc;
}

// ---------------------------------------------------------------- sign_on_ray

namespace {

constexpr int kMaxCertificateDepth = 8;

bool nonneg_coefficients(const UPolynomial& p) {
  for (const auto& [km, c] : p.terms())
    if (sgn(c) < 0) return false;
  return true;
}

// Certificate that p > 0 (strict) or p >= 0 on [0, inf).
std::optional<json> certify(const UPolynomial& p, bool strict, int depth) {
  if (p.is_zero()) {
    if (strict) return std::nullopt;
    return json{{"claim", "p >= 0"}, {"p", "0"}, {"method", "zero"}};
  }
  const std::string claim = strict ? "p > 0" : "p >= 0";
  Rational p0 = p.at_zero();
  if (nonneg_coefficients(p) && (!strict || sgn(p0) > 0))
    return json{{"claim", claim}, {"p", p.str()}, {"method", "nonnegative terms"}, {"p(0)", p0.get_str()}};
  if (depth >= kMaxCertificateDepth) return std::nullopt;
  // e^{sU} p has the sign of p; try each normalisation (no shift first).
  std::vector<int> shifts{0};
  for (int m : p.exponents())
    if (m != 0) shifts.push_back(-m);
  for (int s : shifts) {
    UPolynomial q = p.shifted(s);
    Rational q0 = q.at_zero();
    if (strict ? sgn(q0) <= 0 : sgn(q0) < 0) continue;
    if (s != 0 && nonneg_coefficients(q) && (!strict || sgn(q0) > 0))
      return json{{"claim", claim},
                  {"p", p.str()},
                  {"method", "rescaled nonnegative terms"},
                  {"rescale", "e^{" + std::to_string(s) + "U}"},
                  {"scaled", q.str()}};
    auto sub = certify(q.derivative(), false, depth + 1);
    if (sub) {
      json j{{"claim", claim}, {"p", p.str()}, {"method", "value at 0 and monotone"}, {"p(0)", q0.get_str()},
             {"derivative", *sub}};
      if (s != 0) {
        j["rescale"] = "e^{" + std::to_string(s) + "U}";
        j["scaled"] = q.str();
      }
      return j;
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict sign_on_ray(const UPolynomial& p) {
  Rational p0 = p.at_zero();
  if (sgn(p0) <= 0)
    return Verdict::refuted("p(0) = " + p0.get_str() + " is not positive",
                            json{{"p", p.str()}, {"U0", "0"}, {"value", p0.get_str()}});
  if (auto cert = certify(p, true, 0)) return Verdict::proven("p(U) > 0 for U >= 0", *cert);
  // search for a rational point with negative value
  std::vector<Rational> grid;
  for (int k = 1; k <= 128; ++k) grid.push_back(make_rational(k, 8));
  for (int k : {24, 32, 48, 64}) grid.push_back(Rational(k));
  for (const auto& U0 : grid) {
    double approx = p.eval(U0.get_d());
    if (!(approx < 0)) continue;
    for (int bits : {64, 128, 256, 512}) {
      RationalInterval v = eval_enclosure(p, U0, bits);
      if (sgn(v.hi) < 0)
        return Verdict::refuted("p(U0) < 0", json{{"p", p.str()},
                                                 {"U0", U0.get_str()},
                                                 {"upper_bound", v.hi.get_str()},
                                                 {"lower_bound", v.lo.get_str()}});
    }
  }
  return Verdict::inconclusive("no certificate pattern applies", json{{"p", p.str()}});
}

}  // namespace hforms
