#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadrifold/binary_form.hpp"
#include "helpers.hpp"

using namespace quadrifold;
using qtest::bf;

TEST_CASE("construction, degree and evaluation") {
  const Field& F = Field::get(3);
  BinaryForm f = bf(F, {1, 2, 1});  // u^2 + 2uv + v^2 = (u+v)^2
  CHECK(f.degree() == 2);
  CHECK(f.evaluate(1, 1) == 1);  // 1+2+1 = 4 = 1
  CHECK(f.evaluate(1, 2) == 0);  // (1+2)^2 = 0
  CHECK(f.evaluate(0, 1) == 1);
  BinaryForm z = BinaryForm::zero(F);
  CHECK(z.is_zero());
  CHECK_THROWS_AS(z.degree(), error);
  // all-zero coefficient list collapses to the zero form
  CHECK(bf(F, {0, 0, 0}).is_zero());
  // leading zeros are kept: v^2 as a degree-2 form
  BinaryForm v2 = bf(F, {0, 0, 1});
  CHECK(v2.degree() == 2);
  CHECK(v2.mult_at_infinity() == 2);
}

TEST_CASE("ProjPoint1 normalization") {
  const Field& F = Field::get(5);
  ProjPoint1 a(F, 2, 3);  // -> [1 : 3*inv(2)] = [1:4]
  CHECK(a.u == 1);
  CHECK(a.v == 4);
  ProjPoint1 b(F, 0, 2);
  CHECK(b.u == 0);
  CHECK(b.v == 1);
  CHECK_THROWS_AS(ProjPoint1(F, 0, 0), error);
}

TEST_CASE("ring operations") {
  const Field& F = Field::get(5);
  BinaryForm u = bf(F, {1, 0}), v = bf(F, {0, 1});
  BinaryForm prod = (u + v) * (u - v);
  CHECK(prod == bf(F, {1, 0, 4}));  // u^2 - v^2
  CHECK_THROWS_AS(u + bf(F, {1, 0, 0}), error);  // degree mismatch
  CHECK((BinaryForm::zero(F) + u) == u);
  CHECK((u * BinaryForm::zero(F)).is_zero());
  CHECK(BinaryForm::monomial(F, 2, 1, 2) == bf(F, {0, 0, 2, 0}));
}

TEST_CASE("monomial and vanishing_at") {
  const Field& F = Field::get(5);
  CHECK(BinaryForm::monomial(F, 3, 2, 1).coeffs() == std::vector<Field::elt>{0, 3, 0, 0});
  ProjPoint1 b(F, 1, 2);
  BinaryForm l = BinaryForm::vanishing_at(b);
  CHECK(l.degree() == 1);
  CHECK(l.evaluate(b.u, b.v) == 0);
  CHECK(l.evaluate(1, 1) != 0);
}

TEST_CASE("derivatives") {
  const Field& F = Field::get(7);
  BinaryForm f = bf(F, {1, 3, 5});  // u^2 + 3uv + 5v^2
  CHECK(derivative_u(f) == bf(F, {2, 3}));
  CHECK(derivative_v(f) == bf(F, {3, 10 % 7}));
}

TEST_CASE("gcd, exact division, square root") {
  const Field& F = Field::get(3);
  BinaryForm u = bf(F, {1, 0}), v = bf(F, {0, 1});
  BinaryForm f = (u + v) * (u - v);
  CHECK(form_gcd(f, u + v) == (u + v));
  CHECK(form_gcd(f, u).degree() == 0);  // coprime
  CHECK(form_gcd(u * v, u + u) == u.monic());
  CHECK(divide_exact(f, u + v) == (u - v));
  CHECK_THROWS_AS(divide_exact(f, u), error);
  try {
    divide_exact(f, u);
  } catch (const error& e) {
    CHECK(e.kind() == errc::inexact_division);
  }
  // v-multiplicity handled: uv^2 / v = uv
  CHECK(divide_exact(bf(F, {0, 1, 0}) * v, v) == bf(F, {0, 1, 0}));

  BinaryForm g = (u * u + v * u) ;
  BinaryForm sq = g * g;
  auto r = form_sqrt(sq);
  REQUIRE(r.has_value());
  CHECK((*r) * (*r) == sq);
  CHECK(!form_sqrt(u).has_value());
  CHECK(!form_sqrt(f).has_value());  // squarefree of even degree
  // pure power of v (top coefficients zero)
  auto rv = form_sqrt(v * v);
  REQUIRE(rv.has_value());
  CHECK((*rv) * (*rv) == v * v);
}

TEST_CASE("squarefree detection") {
  const Field& F = Field::get(3);
  BinaryForm u = bf(F, {1, 0}), v = bf(F, {0, 1});
  CHECK(is_squarefree(u * v * (u + v)));
  CHECK(!is_squarefree(u * u * v));
  CHECK(!is_squarefree(v * v));        // double root at [1:0]
  CHECK(is_squarefree(bf(F, {2})));    // constants are squarefree
  // char-3 pitfall: u^3 + v^3 = (u+v)^3 has zero u-derivative
  CHECK(!is_squarefree(bf(F, {1, 0, 0, 1})));
}

TEST_CASE("projective roots with Galois orbit representatives") {
  const Field& F = Field::get(3);
  BinaryForm u = bf(F, {1, 0}), v = bf(F, {0, 1});
  auto roots = projective_roots(u * v * (u + v) * (u - v), 2);
  CHECK(roots.size() == 4);
  for (const auto& r : roots) {
    CHECK(r.ext_degree == 1);
    CHECK(r.multiplicity == 1);
  }
  // u^2 + v^2 is irreducible over F3: one conjugate pair over F9
  auto roots2 = projective_roots(u * u + v * v, 2);
  REQUIRE(roots2.size() == 1);
  CHECK(roots2[0].ext_degree == 2);
  CHECK(roots2[0].multiplicity == 1);
  const Field& K = *roots2[0].point.F;
  CHECK(K.order() == 9);
  CHECK((u * u + v * v).embedded(K).evaluate(roots2[0].point.u, roots2[0].point.v) == 0);
  // multiplicity counting
  auto roots3 = projective_roots(u * u * v, 1);
  REQUIRE(roots3.size() == 2);
  int mult_sum = 0;
  for (const auto& r : roots3) mult_sum += r.multiplicity;
  CHECK(mult_sum == 3);
}

TEST_CASE("embedding round trips") {
  const Field& F = Field::get(3);
  const Field& K = Field::get(3, 2);
  BinaryForm f = bf(F, {1, 2, 0, 1});
  BinaryForm fk = f.embedded(K);
  CHECK(fk.coeffs_in_subfield(F));
  CHECK(fk.retracted(F) == f);
  BinaryForm alien = bf(K, {K.from_digits({0, 1})});
  CHECK(!alien.coeffs_in_subfield(F));
}

TEST_CASE("deterministic form ordering") {
  const Field& F = Field::get(3);
  CHECK(bf(F, {1, 0}) < bf(F, {1, 0, 0}));          // lower degree first
  CHECK(BinaryForm::zero(F) < bf(F, {1}));          // zero first
  CHECK(bf(F, {1, 2}) < bf(F, {2, 0}));
}
