#include "quadrifold/linalg.hpp"

#include <algorithm>

namespace quadrifold {

int rref(const Field& F, Mat& m) {
  if (m.empty()) return 0;
  std::size_t ncols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    Field::elt inv = F.inv(m[row][col]);
    for (auto& x : m[row]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Field::elt c = m[r][col];
      for (std::size_t j = 0; j < ncols; ++j) m[r][j] = F.sub(m[r][j], F.mul(c, m[row][j]));
    }
    ++row;
  }
  return static_cast<int>(row);
}

int rank(const Field& F, Mat m) { return rref(F, m); }

Mat kernel_basis(const Field& F, const Mat& m_in, std::size_t ncols) {
  Mat m = m_in;
  for (auto& r : m)
    if (r.size() != ncols) fail(errc::dimension_mismatch, "ragged matrix");
  int r = rref(F, m);
  // Pivot columns of the RREF.
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(ncols, false);
  for (int i = 0; i < r; ++i) {
    std::size_t c = 0;
    while (c < ncols && m[i][c] == 0) ++c;
    pivot_col.push_back(static_cast<int>(c));
    is_pivot[c] = true;
  }
  Mat basis;
  for (std::size_t free_c = 0; free_c < ncols; ++free_c) {
    if (is_pivot[free_c]) continue;
    Vec v(ncols, 0);
    v[free_c] = F.one();
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = F.neg(m[i][free_c]);
    basis.push_back(std::move(v));
  }
  rref(F, basis);
  return basis;
}

Vec mat_vec(const Field& F, const Mat& m, const Vec& x) {
  Vec y(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(F, m[i], x);
  return y;
}

Field::elt dot(const Field& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(errc::dimension_mismatch, "dot of unequal lengths");
  Field::elt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

}  // namespace quadrifold
