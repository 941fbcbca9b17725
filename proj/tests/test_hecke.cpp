#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadrifold/hecke.hpp"
#include "quadrifold/section_search.hpp"
#include "helpers.hpp"

using namespace quadrifold;
using namespace qtest;

namespace {

LineInFiber coord_line(const ProjPoint1& b, int i, int j) {
  LineInFiber l;
  l.b = b;
  l.K = b.F;
  l.basis[0][i] = b.F->one();
  l.basis[1][j] = b.F->one();
  return l;
}

// F_3, Q = 2u x1 x4 + 2v x2 x3 (d = 0, e = 1): plenty of constant sections,
// smooth split fibers at [1:1] and [1:2].
Fibration split_example() {
  const Field& F = Field::get(3);
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  gram[0][3] = gram[3][0] = bf(F, {1, 0});
  gram[1][2] = gram[2][1] = bf(F, {0, 1});
  return Fibration::make(F, {0, 0, 0, 0}, 1, gram);
}

}  // namespace

TEST_CASE("worked transform: exact output presentation") {
  Fibration fib = hecke_worked();
  const Field& F = fib.field();
  ProjPoint1 p(F, 0, 1);
  TransformReceipt rec = elementary_transform(fib, p, coord_line(p, 2, 3));
  CHECK(rec.output.d == std::array<int, 4>{1, 1, 0, 0});
  CHECK(rec.output.e == 0);
  CHECK(rec.det_u == 1);
  CHECK(rec.shift == 1);
  CHECK(!rec.swapped);
  CHECK(rec.ell == bf(F, {1, 0}));  // vanishes at [0:1]
  GramMatrix want;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) want[i][j] = BinaryForm::zero(F);
  want[0][0] = want[1][1] = bf(F, {1, 0, 0});           // u^2
  want[0][2] = want[2][0] = want[1][3] = want[3][1] = bf(F, {0, 1});  // v
  want[2][2] = want[3][3] = bf(F, {1});
  CHECK(rec.output.gram == want);
  // invariants: Delta and h(X) preserved, epsilon flipped, degE drops by 2
  FibrationInvariants a = invariants(fib), b = invariants(rec.output);
  CHECK(b.delta == a.delta);
  CHECK(b.heightX == a.heightX);
  CHECK(b.epsilon == 1 - a.epsilon);
  CHECK(b.degE == a.degE - 2);
  CHECK(b.census_case == CensusCase::Case3);
  // discriminant bookkeeping
  CHECK(discriminant(rec.output) ==
        discriminant(fib).scaled(F.mul(rec.det_u, rec.det_u)));
}

TEST_CASE("swapped transform inverts the move on the presentation") {
  Fibration fib = hecke_worked();
  const Field& F = fib.field();
  ProjPoint1 p(F, 0, 1);
  TransformReceipt r1 = elementary_transform(fib, p, coord_line(p, 2, 3));
  // the scaled block span(e1, e2) is isotropic in the output fiber at p
  TransformReceipt r2 = elementary_transform(r1.output, p, coord_line(p, 0, 1), true);
  CHECK(r2.output.d == std::array<int, 4>{0, 0, 0, 0});
  CHECK(r2.output.e == 1);
  Field::elt c = F.mul(F.mul(r1.det_u, r1.det_u), F.mul(r2.det_u, r2.det_u));
  CHECK(discriminant(r2.output) == discriminant(fib).scaled(c));
}

TEST_CASE("section transport: incidence decides the height shift") {
  Fibration fib = split_example();
  const Field& F = fib.field();
  ProjPoint1 p(F, 1, 1);
  TransformReceipt rec = elementary_transform(fib, p, coord_line(p, 0, 1));

  // sigma = (1,0,0,0) passes through the line at p; sigma = (0,0,1,0) misses it
  Section on = make_section(F, 0, {{1}, {}, {}, {}});
  Section off = make_section(F, 0, {{}, {}, {1}, {}});
  SectionTransform ton = transform_section(rec, on);
  CHECK(ton.incident);
  CHECK(ton.height_before == -1);
  CHECK(ton.height_after == -2);
  SectionTransform toff = transform_section(rec, off);
  CHECK(!toff.incident);
  CHECK(toff.height_after == 0);
  std::string why;
  CHECK(check_section(rec.output, ton.sec, &why));
  CHECK(check_section(rec.output, toff.sec, &why));

  // transporting every height -1 section keeps the two incidence classes apart
  SearchOptions opts;
  EnumResult all = enumerate_sections_direct(fib, -1, opts);
  REQUIRE(!all.sections.empty());
  int n_inc = 0, n_dis = 0;
  for (const auto& s : all.sections) {
    SectionTransform t = transform_section(rec, s);
    (t.incident ? n_inc : n_dis)++;
    CHECK(t.height_after == t.height_before + (t.incident ? -1 : 1));
  }
  CHECK(n_inc > 0);
  CHECK(n_dis > 0);

  // round trip through the inverse move restores the height
  TransformReceipt back = elementary_transform(rec.output, p, coord_line(p, 0, 1), true);
  for (const auto& s : all.sections) {
    SectionTransform t1 = transform_section(rec, s);
    SectionTransform t2 = transform_section(back, t1.sec);
    CHECK(t2.incident == !t1.incident);
    CHECK(t2.height_after == -1);
  }
}

TEST_CASE("validation errors") {
  Fibration fib = hecke_worked();
  const Field& F = fib.field();
  const Field& K = F.extension(2);
  ProjPoint1 p(F, 0, 1);
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const error& e) {
      return e.kind();
    }
    return errc::internal;
  };
  // non-isotropic line
  CHECK(kind_of([&] { elementary_transform(fib, p, coord_line(p, 0, 2)); }) ==
        errc::line_not_isotropic);
  // singular fiber on the discriminant
  ProjPoint1 ps(F, 1, 1);
  CHECK(kind_of([&] { elementary_transform(fib, ps, coord_line(ps, 2, 3)); }) ==
        errc::singular_fiber);
  // point and line fibers must agree
  ProjPoint1 p10(F, 1, 0);
  CHECK(kind_of([&] { elementary_transform(fib, p10, coord_line(p, 2, 3)); }) ==
        errc::fiber_mismatch);
  // base rationality of the point and of the line
  ProjPoint1 pk(K, K.one(), 0);
  CHECK(kind_of([&] { elementary_transform(fib, pk, coord_line(pk, 2, 3)); }) ==
        errc::spec_mismatch);
  LineInFiber lk = coord_line(pk, 2, 3);
  lk.b = p;  // base point, extension line
  CHECK(kind_of([&] { elementary_transform(fib, p, lk); }) == errc::spec_mismatch);
  // foreign section
  Fibration sp = split_example();
  ProjPoint1 q(F, 1, 1);
  TransformReceipt rec = elementary_transform(sp, q, coord_line(q, 0, 1));
  Section alien = make_section(F, 0, {{1}, {}, {1}, {1}});  // lives on f3_worked
  CHECK(kind_of([&] { transform_section(rec, alien); }) == errc::section_not_on_input);
}

TEST_CASE("graded automorphism can be obstructed by the degree pattern") {
  const Field& F = Field::get(3);
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  gram[0][2] = gram[2][0] = bf(F, {0, 1});
  gram[1][3] = gram[3][1] = bf(F, {1});
  Fibration fib = Fibration::make(F, {1, 0, 0, 0}, 0, gram);
  ProjPoint1 p(F, 0, 1);
  // span(e1, e2) is isotropic, but no graded automorphism can place e1 in the
  // low-degree column block
  try {
    elementary_transform(fib, p, coord_line(p, 0, 1));
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.kind() == errc::no_graded_automorphism);
  }
}
