#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bzz/zigzag.hpp"

using namespace bzz;

namespace {

AlgebraElement be(Algebra::Ptr a, int idx) {
  return AlgebraElement::basis_element(a, idx);
}

}  // namespace

TEST_CASE("dimension is 8n-6") {
  for (int n = 2; n <= 8; ++n) {
    auto alg = Algebra::build(n);
    CHECK(alg->dim() == 8 * n - 6);
  }
  CHECK_THROWS(Algebra::build(1));
}

TEST_CASE("degree zero subspace at n = 2") {
  auto alg = Algebra::build(2);
  int count = 0;
  for (int i = 0; i < alg->dim(); ++i)
    if (alg->degree(i) == 0) ++count;
  CHECK(count == 3);  // e_1, e_2, ie_2
}

TEST_CASE("defining relations hold as table lookups") {
  auto alg = Algebra::build(4);
  auto mul2 = [&](int a, int b) { return multiply(be(alg, a), be(alg, b)); };

  // (2.4): (j|j-1)(j-1|j) = (j|j+1)(j+1|j) = X_j for middle j.
  for (int j = 2; j <= 3; ++j) {
    auto left = mul2(alg->arrow(j, j - 1), alg->arrow(j - 1, j));
    auto right = mul2(alg->arrow(j, j + 1), alg->arrow(j + 1, j));
    CHECK(left == right);
    CHECK(left == be(alg, alg->x(j)));
  }
  // (2.5): straight-through paths vanish.
  for (int j = 2; j <= 3; ++j) {
    CHECK(mul2(alg->arrow(j - 1, j), alg->arrow(j, j + 1)).is_zero());
    CHECK(mul2(alg->arrow(j + 1, j), alg->arrow(j, j - 1)).is_zero());
  }
  // (2.6): ie_j^2 = -e_j.
  for (int j = 2; j <= 4; ++j)
    CHECK(mul2(alg->ie(j), alg->ie(j)) == be(alg, alg->e(j)) * Rational(-1));
  // (2.7)/(2.8): decorations slide along arrows away from vertex 1.
  for (int j = 3; j <= 4; ++j) {
    CHECK(mul2(alg->ie(j - 1), alg->arrow(j - 1, j)) ==
          mul2(alg->arrow(j - 1, j), alg->ie(j)));
    CHECK(mul2(alg->ie(j), alg->arrow(j, j - 1)) ==
          mul2(alg->arrow(j, j - 1), alg->ie(j - 1)));
  }
  // (2.9): (1|2) ie_2 (2|1) = 0.
  auto t = multiply(mul2(alg->arrow(1, 2), alg->ie(2)), be(alg, alg->arrow(2, 1)));
  CHECK(t.is_zero());
  // (2.10): ie_2 X_2 = X_2 ie_2.
  CHECK(mul2(alg->ie(2), alg->x(2)) == mul2(alg->x(2), alg->ie(2)));
}

TEST_CASE("spec multiplication examples") {
  auto alg = Algebra::build(3);
  auto mul2 = [&](int a, int b) { return multiply(be(alg, a), be(alg, b)); };
  CHECK(mul2(alg->ie(2), alg->ie(2)) == be(alg, alg->e(2)) * Rational(-1));
  CHECK(mul2(alg->arrow(1, 2), alg->arrow(2, 3)).is_zero());
  CHECK(mul2(alg->arrow(2, 1), alg->arrow(1, 2)) == be(alg, alg->x(2)));
}

TEST_CASE("unit and grading of products") {
  for (int n = 2; n <= 4; ++n) {
    auto alg = Algebra::build(n);
    auto one = AlgebraElement::unit(alg);
    for (int i = 0; i < alg->dim(); ++i) {
      CHECK(multiply(one, be(alg, i)) == be(alg, i));
      CHECK(multiply(be(alg, i), one) == be(alg, i));
      for (int j = 0; j < alg->dim(); ++j) {
        auto p = alg->mul(i, j);
        if (p.coeff != 0)
          CHECK(alg->degree(p.idx) == alg->degree(i) + alg->degree(j));
      }
    }
  }
}

TEST_CASE("associativity, exhaustive over basis triples") {
  for (int n = 2; n <= 4; ++n) {
    auto alg = Algebra::build(n);
    const int d = alg->dim();
    int failures = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        auto ab = alg->mul(a, b);
        for (int c = 0; c < d; ++c) {
          auto bc = alg->mul(b, c);
          // (ab)c
          int lc = 0, li = -1;
          if (ab.coeff != 0) {
            auto p = alg->mul(ab.idx, c);
            lc = ab.coeff * p.coeff;
            li = p.idx;
          }
          int rc = 0, ri = -1;
          if (bc.coeff != 0) {
            auto p = alg->mul(a, bc.idx);
            rc = bc.coeff * p.coeff;
            ri = p.idx;
          }
          bool ok = (lc == 0 && rc == 0) || (lc == rc && li == ri);
          if (!ok) ++failures;
        }
      }
    CHECK(failures == 0);
  }
}

TEST_CASE("X_j annihilates every arrow") {
  auto alg = Algebra::build(4);
  for (int j = 1; j <= 4; ++j)
    for (int i = 0; i < alg->dim(); ++i) {
      if (alg->degree(i) != 1) continue;
      CHECK(alg->mul(alg->x(j), i).coeff == 0);
      CHECK(alg->mul(i, alg->x(j)).coeff == 0);
    }
}

TEST_CASE("central elements z_j commute with everything") {
  // z_j = sum_k f_k^j X_k with the solved coefficients: f_j^j = 2(-1)^{j+1},
  // f_{j+-1}^j = (-1)^{j+1} except f_2^1 = 2.
  for (int n = 2; n <= 4; ++n) {
    auto alg = Algebra::build(n);
    for (int j = 1; j <= n; ++j) {
      AlgebraElement z(alg);
      int sign = (j % 2 == 1) ? 1 : -1;
      z.add(alg->x(j), Rational(2 * sign));
      if (j == 1) {
        z.add(alg->x(2), Rational(2));
      } else {
        z.add(alg->x(j - 1), Rational(sign));
        if (j + 1 <= n) z.add(alg->x(j + 1), Rational(sign));
      }
      for (int i = 0; i < alg->dim(); ++i)
        CHECK(multiply(z, be(alg, i)) == multiply(be(alg, i), z));
    }
  }
}

TEST_CASE("graded dimensions of left projectives") {
  auto alg = Algebra::build(3);
  auto p1 = projective(alg, 1, Side::Left);
  auto gd1 = p1.graded_dim();
  CHECK(gd1[0] == 1);
  CHECK(gd1[1] == 2);
  CHECK(gd1[2] == 1);
  CHECK(p1.basis.size() == 4);
  CHECK(!p1.complex_scalars);

  auto p2 = projective(alg, 2, Side::Left);
  CHECK(p2.basis.size() == 8);
  CHECK(p2.complex_scalars);

  auto p3 = projective(alg, 3, Side::Left);
  CHECK(p3.basis.size() == 6);

  for (int n = 2; n <= 5; ++n) {
    auto a = Algebra::build(n);
    int total = 0;
    for (int j = 1; j <= n; ++j) total += static_cast<int>(projective(a, j, Side::Left).basis.size());
    CHECK(total == 8 * n - 6);
  }
}

TEST_CASE("ie action on one-sided modules squares to minus one") {
  auto alg = Algebra::build(3);
  for (int j = 2; j <= 3; ++j) {
    for (auto side : {Side::Left, Side::Right}) {
      auto m = projective(alg, j, side);
      for (size_t p = 0; p < m.basis.size(); ++p) {
        auto [c1, q] = m.ie_action[p];
        auto [c2, r] = m.ie_action[q];
        CHECK(c1 * c2 == -1);
        CHECK(r == static_cast<int>(p));
      }
    }
  }
}

TEST_CASE("canonical names and JSON round trip") {
  auto alg = Algebra::build(3);
  CHECK(path_name(alg->path(alg->e(1))) == "e1");
  CHECK(path_name(alg->path(alg->ie(2))) == "ie2");
  CHECK(path_name(alg->path(alg->arrow(1, 2))) == "a1_2");
  CHECK(path_name(alg->path(alg->iarrow(2, 1))) == "ia2_1");
  CHECK(path_name(alg->path(alg->x(2))) == "x2");
  CHECK(path_name(alg->path(alg->ix(3))) == "ix3");
  CHECK_THROWS(alg->ix(1));

  auto a = be(alg, alg->x(1)) * rational_of(3, 2) - be(alg, alg->ie(2));
  auto back = element_from_json(alg, element_to_json(a));
  CHECK(back == a);
}
