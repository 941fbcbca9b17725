#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadrifold/field.hpp"

using namespace quadrifold;

TEST_CASE("prime field arithmetic") {
  const Field& F = Field::get(7);
  CHECK(F.order() == 7);
  CHECK(F.add(3, 5) == 1);
  CHECK(F.sub(2, 5) == 4);
  CHECK(F.neg(3) == 4);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.div(1, 3) == 5);
  CHECK(F.pow(3, 6) == 1);  // Fermat
  CHECK(F.pow(0, 0) == 1);
  CHECK(F.from_int(-1) == 6);
  CHECK_THROWS_AS(F.inv(0), error);
  try {
    F.inv(0);
  } catch (const error& e) {
    CHECK(e.kind() == errc::division_by_zero);
    CHECK(e.exit_code() == 1);
  }
}

TEST_CASE("field construction validation") {
  CHECK_THROWS_AS(Field::get(2), error);   // even
  CHECK_THROWS_AS(Field::get(9), error);   // composite
  CHECK_THROWS_AS(Field::get(3, 0), error);
  // explicit reducible modulus: x^2 - 1 = (x-1)(x+1)
  CHECK_THROWS_AS(Field::get(3, 2, {2, 0}), error);
}

TEST_CASE("canonical instances are shared") {
  CHECK(&Field::get(5) == &Field::get(5));
  CHECK(&Field::get(3).extension(2) == &Field::get(3, 2));
  CHECK(&Field::get(3, 2).extension(2) == &Field::get(3, 4));
}

TEST_CASE("F9 has the lex-least modulus x^2 + 1") {
  const Field& F9 = Field::get(3, 2);
  CHECK(F9.modulus() == std::vector<std::uint64_t>{1, 0});
  // alpha^2 = -1 in the power basis encoding
  Field::elt alpha = F9.from_digits({0, 1});
  CHECK(F9.mul(alpha, alpha) == F9.from_digits({2, 0}));
  CHECK(F9.digits(F9.from_int(2)) == std::vector<Field::elt>{2, 0});
}

TEST_CASE("squares and deterministic square roots") {
  const Field& F7 = Field::get(7);  // squares: 0,1,2,4
  CHECK(F7.is_square(0));
  CHECK(F7.is_square(2));
  CHECK(!F7.is_square(3));
  CHECK(F7.sqrt(2) == 3);  // of {3,4} the lex-smaller
  CHECK(F7.sqrt(4) == 2);
  CHECK(F7.sqrt(0) == 0);
  CHECK_THROWS_AS(F7.sqrt(3), error);

  const Field& F13 = Field::get(13);  // q = 1 mod 4 path
  CHECK(F13.sqrt(3) == 4);            // 4^2 = 16 = 3; {4, 9} -> 4
  for (Field::elt a = 0; a < 13; ++a)
    if (F13.is_square(a)) {
      Field::elt r = F13.sqrt(a);
      CHECK(F13.mul(r, r) == a);
    }

  const Field& F9 = Field::get(3, 2);
  int squares = 0;
  for (Field::elt a = 0; a < 9; ++a)
    if (F9.is_square(a)) {
      ++squares;
      Field::elt r = F9.sqrt(a);
      CHECK(F9.mul(r, r) == a);
      CHECK((r == 0 || !F9.lex_less(F9.neg(r), r)));  // lex-smaller root chosen
    }
  CHECK(squares == 5);  // 0 and (q-1)/2 nonzero squares
}

TEST_CASE("embedding, retraction and Frobenius") {
  const Field& F3 = Field::get(3);
  const Field& F9 = Field::get(3, 2);
  for (Field::elt a = 0; a < 3; ++a) {
    Field::elt img = F9.embed(F3, a);
    CHECK(F9.in_subfield(F3, img));
    CHECK(F9.retract(F3, img) == a);
  }
  // The prime field embeds unitally.
  CHECK(F9.embed(F3, 1) == F9.one());
  CHECK(F9.embed(F3, F3.add(1, 1)) == F9.add(F9.one(), F9.one()));
  // Frobenius fixes exactly the subfield.
  int fixed = 0;
  for (Field::elt a = 0; a < 9; ++a) {
    Field::elt fr = F9.frobenius(F3, a);
    CHECK(F9.frobenius(F3, fr) == a);  // involution
    if (fr == a) ++fixed;
    CHECK(F9.in_subfield(F3, a) == (fr == a));
  }
  CHECK(fixed == 3);
  CHECK_THROWS_AS(F9.retract(F3, F9.from_digits({0, 1})), error);

  // Tower F3 < F9 < F81: embeddings compose and respect multiplication.
  const Field& F81 = Field::get(3, 4);
  for (Field::elt a = 0; a < 3; ++a)
    CHECK(F81.embed(F9, F9.embed(F3, a)) == F81.embed(F3, a));
  for (Field::elt a = 0; a < 9; ++a)
    for (Field::elt b = 0; b < 9; b += 2)
      CHECK(F81.embed(F9, F9.mul(a, b)) == F81.mul(F81.embed(F9, a), F81.embed(F9, b)));
}

TEST_CASE("extension field arithmetic is a field") {
  const Field& F25 = Field::get(5, 2);
  CHECK(F25.order() == 25);
  for (Field::elt a = 1; a < 25; ++a) {
    CHECK(F25.mul(a, F25.inv(a)) == F25.one());
    CHECK(F25.pow(a, 24) == F25.one());
  }
  // distributivity spot check
  for (Field::elt a = 0; a < 25; a += 3)
    for (Field::elt b = 0; b < 25; b += 5)
      for (Field::elt c = 0; c < 25; c += 7)
        CHECK(F25.mul(a, F25.add(b, c)) == F25.add(F25.mul(a, b), F25.mul(a, c)));
}

TEST_CASE("lex order compares digit sequences from the constant digit") {
  const Field& F9 = Field::get(3, 2);
  CHECK(F9.lex_less(F9.from_digits({0, 1}), F9.from_digits({1, 0})));
  CHECK(F9.lex_less(F9.from_digits({1, 0}), F9.from_digits({1, 1})));
  CHECK(!F9.lex_less(F9.from_digits({2, 0}), F9.from_digits({1, 1})));
}

TEST_CASE("error exit codes follow the contract") {
  CHECK(error(errc::budget_exceeded, "x").exit_code() == 2);
  CHECK(error(errc::sampling_exhausted, "x").exit_code() == 2);
  CHECK(error(errc::internal, "x").exit_code() == 3);
  CHECK(error(errc::no_rational_fiber_point, "x").exit_code() == 3);
  CHECK(error(errc::malformed_input, "x").exit_code() == 1);
  CHECK(error(errc::not_a_square, "x").exit_code() == 1);
}
