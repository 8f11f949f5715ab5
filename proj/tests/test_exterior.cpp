#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hforms/exterior.hpp"
#include "hforms/linalg.hpp"

using namespace hforms;

namespace {

RForm random_form(std::mt19937& rng, int n, int p, int q) {
  std::uniform_int_distribution<int> coef(-2, 2);
  RForm f(n);
  for (const auto& k : monomial_basis(n, p, q))
    if (rng() % 3 == 0) f.add(k, GaussRational(Rational(coef(rng)), Rational(coef(rng))));
  return f;
}

// brute-force sign of a permutation by counting inversions
int permutation_sign(const std::vector<int>& v) {
  int inv = 0;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) inv += v[a] > v[b];
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("wedge and conjugation basics") {
  const int n = 3;
  CHECK(wedge(holo(n, 1), holo(n, 2)) == RForm::from_indices(n, {1, 2}, {}, 1));
  CHECK(wedge(holo(n, 1), holo(n, 1)).is_zero());
  CHECK(wedge(holo(n, 2), holo(n, 1)) == -RForm::from_indices(n, {1, 2}, {}, 1));
  CHECK(wedge(antiholo(n, 1), holo(n, 2)) == -RForm::from_indices(n, {2}, {1}, 1));
  CHECK(conj(holo(n, 1)) == antiholo(n, 1));
  RForm w = RForm::from_indices(n, {1}, {1}, GaussRational::i());
  CHECK(conj(w) == w);
  CHECK(wedge_power(standard_kahler(n), 4).is_zero());
}

TEST_CASE("contraction") {
  const int n = 3;
  CHECK(contract(Vector<GaussRational>::Z(n, 1), holo(n, 1)) == RForm::constant(n, 1));
  CHECK(contract(Vector<GaussRational>::Z(n, 1), RForm::from_indices(n, {2}, {1}, 1)).is_zero());
  CHECK(contract(Vector<GaussRational>::Z(n, 1), RForm::from_indices(n, {1, 2}, {}, 1)) == holo(n, 2));
  CHECK(contract(Vector<GaussRational>::Zbar(n, 1), RForm::from_indices(n, {2}, {1}, 1)) == -holo(n, 2));
}

TEST_CASE("sign convention against brute-force permutation signs") {
  const int n = 4;
  std::vector<int> idx{1, 2, 3, 4};
  do {
    RForm f = RForm::constant(n, 1);
    for (int i : idx) f = wedge(f, holo(n, i));
    CHECK(f == RForm::from_indices(n, {1, 2, 3, 4}, {}, permutation_sign(idx)));
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("volume normalization") {
  const int n4 = 4;
  CHECK(vol_coefficient(RForm::monomial(n4, top_key(n4), 1)) == GaussRational(1));
  for (int n = 2; n <= 4; ++n) CHECK(vol_coefficient(divided_power(standard_kahler(n), n)) == GaussRational(1));
  CHECK(vol_coefficient(RForm(3)) == GaussRational(0));
  CHECK_THROWS_AS(vol_coefficient(holo(3, 1)), Error);
}

TEST_CASE("Lefschetz kernel on (1,1)-forms in dimension 3") {
  const int n = 3;
  RForm omega = standard_kahler(n);
  CHECK(lefschetz(omega, RForm::constant(n, 1)) == omega);
  auto src = monomial_basis(n, 1, 1);
  auto dst = monomial_basis(n, 2, 2);
  Matrix<GaussRational> m(dst.size(), std::vector<GaussRational>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    auto img = coordinates(lefschetz(omega, RForm::monomial(n, src[c], 1)), dst);
    for (std::size_t r = 0; r < dst.size(); ++r) m[r][c] = img[r];
  }
  CHECK(src.size() == 9);
  CHECK(kernel(m, src.size()).size() == 0);  // omega ^ . : Lambda^{1,1} -> Lambda^{2,2} injective
  // primitive (1,1): kernel of omega^{n-1} ^ .
  auto top = monomial_basis(n, 3, 3);
  Matrix<GaussRational> m2(top.size(), std::vector<GaussRational>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    auto img = coordinates(wedge(wedge_power(omega, 2), RForm::monomial(n, src[c], 1)), top);
    for (std::size_t r = 0; r < top.size(); ++r) m2[r][c] = img[r];
  }
  CHECK(kernel(m2, src.size()).size() == 8);
}

TEST_CASE("hard Lefschetz injectivity for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    RForm omega = standard_kahler(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q) {
        RForm L = wedge_power(omega, n - p - q);
        auto src = monomial_basis(n, p, q);
        auto dst = monomial_basis(n, n - q, n - p);
        Matrix<GaussRational> m(dst.size(), std::vector<GaussRational>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
          auto img = coordinates(wedge(L, RForm::monomial(n, src[c], 1)), dst);
          for (std::size_t r = 0; r < dst.size(); ++r) m[r][c] = img[r];
        }
        CHECK(rank(m) == src.size());
      }
  }
}

TEST_CASE("graded algebra identities on random forms") {
  std::mt19937 rng(11);
  for (int it = 0; it < 120; ++it) {
    int n = 2 + it % 3;
    int p1 = rng() % 2, q1 = rng() % 2, p2 = rng() % 3, q2 = rng() % 2;
    RForm a = random_form(rng, n, p1, q1), b = random_form(rng, n, std::min(p2, n), q2);
    int da = p1 + q1, db = std::min(p2, n) + q2;
    RForm ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((da * db) % 2 ? -ba : ba));
    CHECK(conj(ab) == wedge(conj(a), conj(b)));
    CHECK(conj(conj(a)) == a);
    int k = 1 + rng() % n;
    for (bool anti : {false, true}) {
      auto v = anti ? Vector<GaussRational>::Zbar(n, k) : Vector<GaussRational>::Z(n, k);
      RForm lhs = contract(v, ab);
      RForm rhs = wedge(contract(v, a), b) + (da % 2 ? -wedge(a, contract(v, b)) : wedge(a, contract(v, b)));
      CHECK(lhs == rhs);
    }
    CHECK(parse_form(n, ab.str()) == ab);
  }
}

TEST_CASE("form literal parsing") {
  RForm f = parse_form(4, "3 a12~34 - (0+1i) a1~2 + 1/2");
  CHECK(f.coefficient(MultiIndexPair{0b11, 0b1100}) == GaussRational(3));
  CHECK(f.coefficient(MultiIndexPair{0b1, 0b10}) == -GaussRational::i());
  CHECK(f.coefficient(MultiIndexPair{}) == GaussRational(make_rational(1, 2)));
  CHECK(f.str() == "1/2 + (0-1i) a1~2 + 3 a12~34");
  for (const char* bad : {"", "a21", "a15", "3 +", "a1 a2", "(1+2i", "a~", "a1~22"}) {
    CHECK_THROWS_AS(parse_form(4, bad), Error);
  }
}

TEST_CASE("decomposability") {
  const int n = 4;
  RForm a = RForm::from_indices(n, {1, 2}, {}, 1) + RForm::from_indices(n, {1, 3}, {}, 2);
  auto d = decompose(a);
  REQUIRE(d);
  CHECK(wedge_all(*d, n) == a);
  RForm b = RForm::from_indices(n, {1, 2}, {}, 1) + RForm::from_indices(n, {3, 4}, {}, 1);
  CHECK_FALSE(decompose(b));
  RForm c = wedge_all(std::vector<RForm>{holo(n, 1) + holo(n, 2), holo(n, 2) - holo(n, 4), holo(n, 3, GaussRational(2))}, n);
  auto dc = decompose(c);
  REQUIRE(dc);
  CHECK(wedge_all(*dc, n) == c);
}
