#include "quadrifold/fibration.hpp"

#include <algorithm>

#include "quadrifold/linalg.hpp"

namespace quadrifold {

const char* census_case_name(CensusCase c) {
  switch (c) {
    case CensusCase::Case1: return "Case1";
    case CensusCase::Case2: return "Case2";
    case CensusCase::Case3: return "Case3";
    case CensusCase::Case4: return "Case4";
    case CensusCase::Unbalanced: return "Unbalanced";
  }
  return "?";
}

Fibration Fibration::make(const Field& F, std::array<int, 4> d, int e, GramMatrix gram) {
  if (e != 0 && e != 1) fail(errc::spec_mismatch, "normalized e must be 0 or 1");
  for (int di : d)
    if (di < 0) fail(errc::spec_mismatch, "normalized d must be >= 0");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const BinaryForm& g = gram[i][j];
      if (!(g == gram[j][i])) fail(errc::spec_mismatch, "Gram matrix is not symmetric");
      if (!g.is_zero() && g.degree() != d[i] + d[j] + e)
        fail(errc::spec_mismatch, "Gram entry (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") has degree " +
                                      std::to_string(g.degree()) + ", expected " +
                                      std::to_string(d[i] + d[j] + e));
      if (!g.is_zero() && &g.field() != &F) fail(errc::spec_mismatch, "Gram entry field mismatch");
    }
  return Fibration{&F, d, e, std::move(gram)};
}

namespace {

// Determinant of a k x k minor by cofactor expansion; exact form arithmetic.
BinaryForm det_minor(const Field& F, const GramMatrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  BinaryForm acc = BinaryForm::zero(F);
  bool acc_set = false;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const BinaryForm& a = m[rows[0]][cols[j]];
    if (a.is_zero()) continue;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (std::size_t l = 0; l < cols.size(); ++l)
      if (l != j) sub_cols.push_back(cols[l]);
    BinaryForm term = a * det_minor(F, m, sub_rows, sub_cols);
    if (j % 2 == 1) term = term.scaled(F.neg(F.one()));
    if (term.is_zero()) continue;
    if (!acc_set) {
      acc = term;
      acc_set = true;
    } else {
      acc = acc + term;
    }
  }
  return acc;
}

}  // namespace

BinaryForm discriminant(const Fibration& fib) {
  const Field& F = fib.field();
  BinaryForm det = det_minor(F, fib.gram, {0, 1, 2, 3}, {0, 1, 2, 3});
  if (det.is_zero()) fail(errc::degenerate_form, "Gram determinant is identically zero");
  int expected = 2 * fib.sum_d() + 4 * fib.e;
  if (det.degree() != expected)
    fail(errc::internal, "discriminant degree " + std::to_string(det.degree()) + " != " +
                             std::to_string(expected));
  return det;
}

namespace {

CensusCase classify(std::array<int, 4> d) {
  std::sort(d.begin(), d.end(), std::greater<int>());
  int a = d[3];
  if (d == std::array<int, 4>{a, a, a, a}) return CensusCase::Case1;
  if (d == std::array<int, 4>{a + 1, a, a, a}) return CensusCase::Case2;
  if (d == std::array<int, 4>{a + 1, a + 1, a, a}) return CensusCase::Case3;
  if (d == std::array<int, 4>{a + 1, a + 1, a + 1, a}) return CensusCase::Case4;
  return CensusCase::Unbalanced;
}

}  // namespace

FibrationInvariants invariants(const Fibration& fib) {
  FibrationInvariants inv;
  inv.degE = -fib.sum_d();
  inv.epsilon = fib.e;
  inv.delta = -2 * inv.degE + 4 * fib.e;
  inv.heightX = 4 * inv.delta;
  if (inv.delta >= 2)
    inv.genus = inv.delta / 2 - 1;
  inv.census_case = classify(fib.d);
  // Degree cross-check against the literal determinant.
  BinaryForm disc = discriminant(fib);
  if (disc.degree() != inv.delta) fail(errc::internal, "delta does not match deg(det)");
  // Parity congruence guard: delta + 2 degE - 4 epsilon == 0 (mod 8).
  int lhs = inv.delta + 2 * inv.degE - 4 * inv.epsilon;
  if (((lhs % 8) + 8) % 8 != 0) fail(errc::internal, "parity congruence violated");
  return inv;
}

bool has_squarefree_discriminant(const Fibration& fib) { return is_squarefree(discriminant(fib)); }

FiberData fiber_at(const Fibration& fib, const ProjPoint1& b) {
  const Field& K = *b.F;
  if (K.p() != fib.field().p() || K.k() % fib.field().k() != 0)
    fail(errc::spec_mismatch, "point field is not an extension of the base");
  FiberData out;
  out.K = &K;
  Mat m(4, Vec(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const BinaryForm& g = fib.gram[i][j];
      Field::elt val = g.is_zero() ? 0 : g.embedded(K).evaluate(b.u, b.v);
      out.g[i][j] = val;
      m[i][j] = val;
    }
  Mat copy = m;
  out.rank = rref(K, copy);
  if (out.rank == 3) {
    Mat ker = kernel_basis(K, m, 4);
    if (ker.size() != 1) fail(errc::internal, "rank-3 fiber without 1-dim kernel");
    std::array<Field::elt, 4> kv;
    // Normalize the kernel vector projectively (first nonzero = 1).
    Field::elt lead = 0;
    for (auto x : ker[0])
      if (x != 0) {
        lead = x;
        break;
      }
    Field::elt inv = K.inv(lead);
    for (int i = 0; i < 4; ++i) kv[i] = K.mul(ker[0][i], inv);
    out.kernel = kv;
  }
  return out;
}

Fibration normalize(const Field& F, std::array<int, 4> d, int e, GramMatrix gram, int* shift_out) {
  // Shift d by c and e by -2c to reach e in {0,1}; then require d >= 0.
  int target_e = ((e % 2) + 2) % 2;
  int c = (e - target_e) / 2;
  std::array<int, 4> nd;
  for (int i = 0; i < 4; ++i) nd[i] = d[i] + c;
  int min_d = *std::min_element(nd.begin(), nd.end());
  if (min_d < 0)
    fail(errc::inconsistent, "no twist reaches e in {0,1} with d >= 0; corrupt input");
  if (shift_out) *shift_out = c;
  return Fibration::make(F, nd, target_e, std::move(gram));
}

std::pair<std::array<int, 4>, int> census_pattern(CensusCase c, int n) {
  if (n < 0) fail(errc::spec_mismatch, "census n must be >= 0");
  int e = n % 2;
  int m = (n - e) / 2;
  switch (c) {
    case CensusCase::Case1: return {{m, m, m, m}, e};
    case CensusCase::Case2: return {{m + 1, m, m, m}, e};
    case CensusCase::Case3: return {{m + 1, m + 1, m, m}, e};
    case CensusCase::Case4: return {{m + 1, m + 1, m + 1, m}, e};
    case CensusCase::Unbalanced: break;
  }
  fail(errc::spec_mismatch, "no census pattern for the unbalanced class");
}

CensusSample sample_census(const Field& F, CensusCase c, int n, int tries, Rng& rng) {
  auto [d, e] = census_pattern(c, n);
  for (int t = 1; t <= tries; ++t) {
    GramMatrix gram;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        int deg = d[i] + d[j] + e;
        std::vector<Field::elt> coeffs(deg + 1);
        for (auto& x : coeffs) x = static_cast<Field::elt>(rng.below(F.order()));
        gram[i][j] = BinaryForm::make(F, coeffs);
        gram[j][i] = gram[i][j];
      }
    Fibration fib = Fibration::make(F, d, e, std::move(gram));
    try {
      if (has_squarefree_discriminant(fib)) return CensusSample{std::move(fib), t};
    } catch (const error& err) {
      if (err.kind() != errc::degenerate_form) throw;
    }
  }
  fail(errc::sampling_exhausted, "no square-free sample in " + std::to_string(tries) + " tries");
}

}  // namespace quadrifold
