#ifndef QUADRIFOLD_TESTS_HELPERS_HPP
#define QUADRIFOLD_TESTS_HELPERS_HPP

#include "quadrifold/section.hpp"

namespace qtest {

using namespace quadrifold;

inline BinaryForm bf(const Field& F, std::vector<Field::elt> coeffs) {
  return BinaryForm::make(F, std::move(coeffs));
}

inline Fibration diag_fibration(const Field& F, std::array<int, 4> d, int e,
                                std::vector<std::vector<Field::elt>> entries) {
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  for (int i = 0; i < 4; ++i)
    if (!entries[i].empty()) gram[i][i] = BinaryForm::make(F, entries[i]);
  return Fibration::make(F, d, e, gram);
}

/// F_3, diag(u, v, u+v, u-v), d = 0, e = 1: Delta = 4, genus 1.
inline Fibration f3_worked() {
  const Field& F = Field::get(3);
  return diag_fibration(F, {0, 0, 0, 0}, 1, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
}

/// F_5, diag(u, v, u+v, u-2v), d = 0, e = 1.
inline Fibration f5_worked() {
  const Field& F = Field::get(5);
  return diag_fibration(F, {0, 0, 0, 0}, 1, {{1, 0}, {0, 1}, {1, 1}, {1, 3}});
}

/// F_3, rows [[u,0,v,0],[0,u,0,v],[v,0,u,0],[0,v,0,u]], d = 0, e = 1:
/// the elementary-transform worked example; discriminant (u^2-v^2)^2.
inline Fibration hecke_worked() {
  const Field& F = Field::get(3);
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  BinaryForm u = bf(F, {1, 0}), v = bf(F, {0, 1});
  gram[0][0] = gram[1][1] = gram[2][2] = gram[3][3] = u;
  gram[0][2] = gram[2][0] = gram[1][3] = gram[3][1] = v;
  return Fibration::make(F, {0, 0, 0, 0}, 1, gram);
}

inline Section make_section(const Field& F, int f, std::vector<std::vector<Field::elt>> comps) {
  Section s;
  s.f = f;
  for (int i = 0; i < 4; ++i)
    s.s[i] = comps[i].empty() ? BinaryForm::zero(F) : BinaryForm::make(F, comps[i]);
  return s;
}

}  // namespace qtest

#endif
