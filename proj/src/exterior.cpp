#include "hforms/exterior.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

#include "hforms/linalg.hpp"

namespace hforms {

std::vector<int> mask_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int k = 0; k < 32; ++k)
    if (mask & (1u << k)) out.push_back(k + 1);
  return out;
}

std::uint32_t indices_mask(const std::vector<int>& indices) {
  std::uint32_t m = 0;
  for (int i : indices) m |= 1u << (i - 1);
  return m;
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  while (b) {
    int k = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (k + 1));
  }
  return inversions % 2 ? -1 : 1;
}

std::optional<std::pair<int, MultiIndexPair>> monomial_wedge(const MultiIndexPair& x, const MultiIndexPair& y) {
  if ((x.hol & y.hol) || (x.anti & y.anti)) return std::nullopt;
  int sign = ((x.q() * y.p()) % 2) ? -1 : 1;
  sign *= merge_sign(x.hol, y.hol);
  sign *= merge_sign(x.anti, y.anti);
  return std::make_pair(sign, MultiIndexPair{x.hol | y.hol, x.anti | y.anti});
}

namespace {

void combinations(int n, int k, int start, std::uint32_t acc, std::vector<std::uint32_t>& out) {
  if (k == 0) {
    out.push_back(acc);
    return;
  }
  for (int i = start; i <= n - k + 1; ++i) combinations(n, k - 1, i + 1, acc | (1u << (i - 1)), out);
}

}  // namespace

std::vector<MultiIndexPair> monomial_basis(int n, int p, int q) {
  std::vector<MultiIndexPair> out;
  if (p < 0 || q < 0 || p > n || q > n) return out;
  std::vector<std::uint32_t> hs, as;
  combinations(n, p, 1, 0, hs);
  combinations(n, q, 1, 0, as);
  for (auto h : hs)
    for (auto a : as) out.push_back({h, a});
  return out;
}

std::string monomial_str(const MultiIndexPair& k) {
  if (k.hol == 0 && k.anti == 0) return "1";
  std::string s = "a";
  for (int i : mask_indices(k.hol)) s += std::to_string(i);
  if (k.anti) {
    s += "~";
    for (int j : mask_indices(k.anti)) s += std::to_string(j);
  }
  return s;
}

std::string scalar_str(const std::complex<double>& c) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
  return os.str();
}

double max_abs(const NForm& a) {
  double m = 0;
  for (const auto& [k, c] : a.terms()) m = std::max(m, std::abs(c));
  return m;
}

RForm at_origin(const AForm& a) {
  RForm r(a.dim());
  for (const auto& [k, c] : a.terms()) r.add(k, c.at_origin());
  return r;
}

AForm lift_analytic(const RForm& a) {
  return a.map<AnalyticScalar>([](const GaussRational& c) { return AnalyticScalar(c); });
}

namespace {

class FormParser {
 public:
  FormParser(int n, const std::string& s) : n_(n), s_(s) {}

  RForm parse() {
    if (n_ > 9) fail("literal syntax supports n <= 9");
    RForm f(n_);
    skip();
    if (pos_ == s_.size()) fail("empty form");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      GaussRational c(1);
      bool have_scalar = false;
      if (peek() == '(' || std::isdigit(static_cast<unsigned char>(peek()))) {
        c = scalar();
        have_scalar = true;
        skip();
      }
      MultiIndexPair key{};
      if (peek() == 'a') {
        key = monomial();
      } else if (!have_scalar) {
        fail("expected coefficient or monomial");
      }
      if (key == MultiIndexPair{} && peek() == 'a') fail("unexpected monomial");
      f.add(key, sign < 0 ? -c : c);
    }
    return f;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "form literal, column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  Rational rational() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      get();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digit");
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    Rational r{mpz_class(digits)};
    if (peek() == '/') {
      get();
      std::string den;
      while (std::isdigit(static_cast<unsigned char>(peek()))) den += get();
      if (den.empty() || mpz_class(den) == 0) fail("bad denominator");
      r /= Rational(mpz_class(den));
    }
    return neg ? Rational(-r) : r;
  }
  GaussRational scalar() {
    if (peek() != '(') return GaussRational(rational());
    get();
    Rational re = rational();
    if (peek() != '+' && peek() != '-') fail("expected '+' or '-' in complex literal");
    bool neg = get() == '-';
    Rational im = rational();
    if (get() != 'i') fail("expected 'i'");
    if (get() != ')') fail("expected ')'");
    return GaussRational(re, neg ? Rational(-im) : im);
  }
  MultiIndexPair monomial() {
    get();  // 'a'
    MultiIndexPair k{};
    std::vector<int> hol, anti;
    while (std::isdigit(static_cast<unsigned char>(peek()))) hol.push_back(get() - '0');
    if (peek() == '~') {
      get();
      while (std::isdigit(static_cast<unsigned char>(peek()))) anti.push_back(get() - '0');
      if (anti.empty()) fail("expected indices after '~'");
    }
    if (hol.empty() && anti.empty()) fail("empty monomial");
    auto check = [&](const std::vector<int>& idx) {
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (idx[t] < 1 || idx[t] > n_) fail("index out of range");
        if (t && idx[t] <= idx[t - 1]) fail("indices must be strictly increasing");
      }
    };
    check(hol);
    check(anti);
    k.hol = indices_mask(hol);
    k.anti = indices_mask(anti);
    return k;
  }

  int n_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RForm parse_form(int n, const std::string& text) { return FormParser(n, text).parse(); }

std::optional<std::vector<RForm>> decompose(const RForm& a) {
  auto bd = a.bidegree();
  if (!bd || bd->second != 0) return std::nullopt;
  const int n = a.dim();
  const int k = bd->first;
  if (k == 1) return std::vector<RForm>{a};
  // Contractions by (k-1)-tuples of frame vectors span the annihilator
  // complement; a is decomposable iff that span has dimension k.
  std::vector<RForm> contractions;
  for (const auto& key : monomial_basis(n, k - 1, 0)) {
    RForm c = a;
    auto idx = mask_indices(key.hol);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) c = contract_frame(false, *it, c);
    if (!c.is_zero()) contractions.push_back(c);
  }
  auto basis1 = monomial_basis(n, 1, 0);
  Matrix<GaussRational> m;
  for (const auto& c : contractions) m.push_back(coordinates(c, basis1));
  auto ech = row_echelon(m);
  if (static_cast<int>(ech.rows.size()) != k) return std::nullopt;
  std::vector<RForm> ws;
  for (const auto& row : ech.rows) ws.push_back(from_coordinates(n, row, basis1));
  RForm w = wedge_all(ws, n);
  const auto& [key0, c0] = *w.terms().begin();
  GaussRational ratio = a.coefficient(key0) / c0;
  if (!(ratio * w == a)) return std::nullopt;
  ws[0] *= ratio;
  return ws;
}

}  // namespace hforms
