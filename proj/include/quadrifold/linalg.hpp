#ifndef QUADRIFOLD_LINALG_HPP
#define QUADRIFOLD_LINALG_HPP

#include <vector>

#include "quadrifold/field.hpp"

namespace quadrifold {

using Vec = std::vector<Field::elt>;
using Mat = std::vector<Vec>;

/// Reduced row echelon form in place; returns the rank.
int rref(const Field& F, Mat& m);

int rank(const Field& F, Mat m);

/// Rows spanning the right null space {x : m x = 0}, in RREF.
Mat kernel_basis(const Field& F, const Mat& m, std::size_t ncols);

Vec mat_vec(const Field& F, const Mat& m, const Vec& x);
Field::elt dot(const Field& F, const Vec& a, const Vec& b);

}  // namespace quadrifold

#endif
