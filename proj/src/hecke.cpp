#include "quadrifold/hecke.hpp"

#include <algorithm>

#include "quadrifold/linalg.hpp"

namespace quadrifold {

namespace {

using elt = Field::elt;
using FormMat = std::array<std::array<BinaryForm, 4>, 4>;

BinaryForm form_det(const Field& F, const std::vector<std::vector<BinaryForm>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BinaryForm acc = BinaryForm::zero(F);
  bool set = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<BinaryForm>> sub(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) sub[r - 1].push_back(m[r][c]);
    BinaryForm term = m[0][j] * form_det(F, sub);
    if (term.is_zero()) continue;
    if (j % 2 == 1) term = term.scaled(F.neg(F.one()));
    if (!set) {
      acc = term;
      set = true;
    } else {
      acc = acc + term;
    }
  }
  return acc;
}

elt scalar_det(const Field& F, Mat m) {
  elt det = F.one();
  std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = F.neg(det);
    }
    det = F.mul(det, m[col][col]);
    elt inv = F.inv(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      elt factor = F.mul(m[r][col], inv);
      for (std::size_t c = col; c < n; ++c) m[r][c] = F.sub(m[r][c], F.mul(factor, m[col][c]));
    }
  }
  return det;
}

// Vectors of the line's span with zero entries on the forbidden coordinate
// set, as projective representatives.
std::vector<std::array<elt, 4>> span_with_support(const Field& F, const LineInFiber& line,
                                                  const std::vector<int>& forbidden) {
  Mat rows;
  for (int i : forbidden) rows.push_back(Vec{line.basis[0][i], line.basis[1][i]});
  Mat ker = kernel_basis(F, rows, 2);
  std::vector<std::array<elt, 4>> out;
  auto emit = [&](elt a, elt b) {
    std::array<elt, 4> v{};
    for (int c = 0; c < 4; ++c)
      v[c] = F.add(F.mul(a, line.basis[0][c]), F.mul(b, line.basis[1][c]));
    out.push_back(v);
  };
  if (ker.size() == 1) {
    emit(ker[0][0], ker[0][1]);
  } else if (ker.size() == 2) {
    // The whole span: q+1 projective representatives.
    emit(F.one(), 0);
    for (elt t = 0; t < F.order(); ++t) emit(t, F.one());
  }
  return out;
}

}  // namespace

TransformReceipt elementary_transform(const Fibration& fib, const ProjPoint1& p,
                                      const LineInFiber& line, bool swap_blocks) {
  const Field& F = fib.field();
  if (p.F != &F) fail(errc::spec_mismatch, "transform point must be base-rational");
  if (line.K != &F) fail(errc::spec_mismatch, "transform line must be base-rational");
  if (!(line.b == p)) fail(errc::fiber_mismatch, "line does not live in the fiber at p");
  FiberData fd = fiber_at(fib, p);
  if (fd.rank != 4) fail(errc::singular_fiber, "fiber is singular at p");
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      elt acc = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          acc = F.add(acc, F.mul(fd.g[i][j], F.mul(line.basis[r][i], line.basis[s][j])));
      if (acc != 0) fail(errc::line_not_isotropic, "line is not isotropic at p");
    }

  // Graded automorphism U with U_ij = a_ij * m^{d_j - d_i} (zero when
  // d_j < d_i), m a linear form with m(p) = 1: its scalar matrix A = U(p) is
  // free on the allowed pattern and det U = det A is constant.  Columns of
  // the target pair must span the line at p.
  std::array<int, 2> target = swap_blocks ? std::array<int, 2>{0, 1} : std::array<int, 2>{2, 3};
  std::array<int, 2> scaled = swap_blocks ? std::array<int, 2>{2, 3} : std::array<int, 2>{0, 1};
  auto forbidden_for_col = [&](int c) {
    std::vector<int> bad;
    for (int i = 0; i < 4; ++i)
      if (fib.d[i] > fib.d[c]) bad.push_back(i);
    return bad;
  };
  auto cand0 = span_with_support(F, line, forbidden_for_col(target[0]));
  auto cand1 = span_with_support(F, line, forbidden_for_col(target[1]));

  Mat A;
  bool found = false;
  for (const auto& v0 : cand0) {
    if (found) break;
    for (const auto& v1 : cand1) {
      if (found) break;
      Mat probe{Vec(v0.begin(), v0.end()), Vec(v1.begin(), v1.end())};
      if (rank(F, probe) != 2) continue;
      // Complete with standard basis vectors on the allowed pattern.
      for (int i1 = 0; i1 < 4 && !found; ++i1) {
        if (fib.d[i1] > fib.d[scaled[0]]) continue;
        for (int i2 = 0; i2 < 4 && !found; ++i2) {
          if (i2 == i1 || fib.d[i2] > fib.d[scaled[1]]) continue;
          Mat M(4, Vec(4, 0));
          for (int r = 0; r < 4; ++r) {
            M[r][scaled[0]] = (r == i1) ? F.one() : 0;
            M[r][scaled[1]] = (r == i2) ? F.one() : 0;
            M[r][target[0]] = v0[r];
            M[r][target[1]] = v1[r];
          }
          if (rank(F, M) == 4) {
            A = M;
            found = true;
          }
        }
      }
    }
  }
  if (!found)
    fail(errc::no_graded_automorphism,
         "no graded automorphism moves the line to the coordinate plane");
  elt det_u = scalar_det(F, A);
  if (det_u == 0) fail(errc::internal, "graded automorphism with zero determinant");

  // m(p) = 1: u/p.u or v/p.v depending on which coordinate is nonzero.
  BinaryForm m_lin = p.u != 0 ? BinaryForm::make(F, {F.inv(p.u), 0})
                              : BinaryForm::make(F, {0, F.inv(p.v)});
  FormMat U;
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c) {
      if (A[i][c] == 0) {
        U[i][c] = BinaryForm::zero(F);
        continue;
      }
      BinaryForm pw = BinaryForm::constant(F, F.one());
      for (int t = 0; t < fib.d[c] - fib.d[i]; ++t) pw = pw * m_lin;
      U[i][c] = pw.scaled(A[i][c]);
    }

  // G1 = U^T G U; the target block vanishes at p by isotropy.
  FormMat G1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      BinaryForm acc = BinaryForm::zero(F);
      bool set = false;
      for (int k = 0; k < 4; ++k) {
        if (U[k][i].is_zero()) continue;
        for (int l = 0; l < 4; ++l) {
          if (U[l][j].is_zero() || fib.gram[k][l].is_zero()) continue;
          BinaryForm term = U[k][i] * fib.gram[k][l] * U[l][j];
          if (term.is_zero()) continue;
          if (!set) {
            acc = term;
            set = true;
          } else {
            acc = acc + term;
          }
        }
      }
      G1[i][j] = acc;
    }

  BinaryForm ell = BinaryForm::vanishing_at(p);
  auto is_scaled = [&](int i) { return i == scaled[0] || i == scaled[1]; };
  FormMat G3;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int cnt = (is_scaled(i) ? 1 : 0) + (is_scaled(j) ? 1 : 0);
      if (G1[i][j].is_zero()) {
        G3[i][j] = G1[i][j];
      } else if (cnt == 0) {
        G3[i][j] = divide_exact(G1[i][j], ell);
      } else if (cnt == 1) {
        G3[i][j] = G1[i][j];
      } else {
        G3[i][j] = G1[i][j] * ell;
      }
    }

  std::array<int, 4> d_new = fib.d;
  d_new[target[0]] -= 1;
  d_new[target[1]] -= 1;
  int shift = 0;
  Fibration out = normalize(F, d_new, fib.e + 1, G3, &shift);

  TransformReceipt rec;
  rec.input = fib;
  rec.output = std::move(out);
  rec.p = p;
  rec.line = line;
  rec.basis_change = U;
  rec.ell = ell;
  rec.swapped = swap_blocks;
  rec.shift = shift;
  rec.det_u = det_u;

  // Determinant bookkeeping: disc(output) = disc(input) * det_u^2.
  BinaryForm want = discriminant(fib).scaled(F.mul(det_u, det_u));
  if (!(discriminant(rec.output) == want))
    fail(errc::internal, "discriminant bookkeeping failed after the surgery");
  return rec;
}

SectionTransform transform_section(const TransformReceipt& receipt, const Section& sec) {
  const Fibration& fib = receipt.input;
  const Field& F = fib.field();
  std::string why;
  if (!check_section(fib, sec, &why))
    fail(errc::section_not_on_input, "not a section of the input fibration: " + why);

  // U^{-1} = adj(U) / det_u (det U is the constant det_u).
  const auto& U = receipt.basis_change;
  std::array<std::array<BinaryForm, 4>, 4> adj;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::vector<std::vector<BinaryForm>> minor(3);
      for (int r = 0, rr = 0; r < 4; ++r) {
        if (r == i) continue;
        for (int c = 0; c < 4; ++c)
          if (c != j) minor[rr].push_back(U[r][c]);
        ++rr;
      }
      BinaryForm cof = form_det(F, minor);
      if (!cof.is_zero() && (i + j) % 2 == 1) cof = cof.scaled(F.neg(F.one()));
      adj[j][i] = cof;  // transpose of the cofactor matrix
    }
  elt det_inv = F.inv(receipt.det_u);
  std::array<BinaryForm, 4> sp;
  for (int i = 0; i < 4; ++i) {
    BinaryForm acc = BinaryForm::zero(F);
    bool set = false;
    for (int j = 0; j < 4; ++j) {
      if (adj[i][j].is_zero() || sec.s[j].is_zero()) continue;
      BinaryForm term = adj[i][j] * sec.s[j];
      if (term.is_zero()) continue;
      if (!set) {
        acc = term;
        set = true;
      } else {
        acc = acc + term;
      }
    }
    sp[i] = acc.is_zero() ? acc : acc.scaled(det_inv);
  }

  std::array<int, 2> scaled = receipt.swapped ? std::array<int, 2>{2, 3} : std::array<int, 2>{0, 1};
  auto is_scaled = [&](int i) { return i == scaled[0] || i == scaled[1]; };
  // sigma(p) lies on the line iff the scaled coordinates of U^{-1} sigma
  // vanish at p.
  bool incident = true;
  for (int i : scaled)
    if (!sp[i].is_zero() && sp[i].evaluate(receipt.p.u, receipt.p.v) != 0) incident = false;

  std::array<BinaryForm, 4> t;
  for (int i = 0; i < 4; ++i) {
    if (sp[i].is_zero())
      t[i] = sp[i];
    else
      t[i] = is_scaled(i) ? sp[i] : sp[i] * receipt.ell;
  }
  // Saturate: the common divisor is 1 or ell, matching the incidence flag.
  BinaryForm g;
  bool gset = false;
  for (const auto& ti : t) {
    if (ti.is_zero()) continue;
    g = gset ? form_gcd(g, ti) : ti.monic();
    gset = true;
  }
  if (!gset) fail(errc::internal, "proper transform is identically zero");
  int gdeg = g.degree();
  if (gdeg > 1 || (gdeg == 1 && !(g == receipt.ell.monic())) || ((gdeg == 1) != incident))
    fail(errc::internal, "proper-transform saturation disagrees with incidence");
  if (gdeg == 1)
    for (auto& ti : t)
      if (!ti.is_zero()) ti = divide_exact(ti, receipt.ell);

  SectionTransform out;
  out.sec.f = sec.f + (incident ? -1 : 0) + receipt.shift;
  out.sec.s = std::move(t);
  canonicalize_scaling(out.sec);
  std::string why2;
  if (!check_section(receipt.output, out.sec, &why2))
    fail(errc::internal, "proper transform is not a section of the output: " + why2);
  out.incident = incident;
  out.height_before = section_height(fib, sec);
  out.height_after = section_height(receipt.output, out.sec);
  if (out.height_after != out.height_before + (incident ? -1 : 1))
    fail(errc::internal, "height shift disagrees with the incidence case");
  return out;
}

}  // namespace quadrifold
