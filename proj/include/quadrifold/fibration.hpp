#ifndef QUADRIFOLD_FIBRATION_HPP
#define QUADRIFOLD_FIBRATION_HPP

#include <array>
#include <optional>
#include <string>

#include "quadrifold/binary_form.hpp"
#include "quadrifold/rng.hpp"

namespace quadrifold {

enum class CensusCase { Case1, Case2, Case3, Case4, Unbalanced };

const char* census_case_name(CensusCase c);

using GramMatrix = std::array<std::array<BinaryForm, 4>, 4>;

/// A quadric surface fibration over P^1 given by a symmetric 4x4 Gram matrix
/// of binary forms; entry (i,j) has degree d_i + d_j + e (or is zero).
/// Normalized presentations have e in {0,1} and all d_i >= 0 with min 0 or
/// whatever the twist allows.
struct Fibration {
  const Field* F = nullptr;
  std::array<int, 4> d{};
  int e = 0;
  GramMatrix gram;

  const Field& field() const { return *F; }

  /// Validates symmetry, the degree pattern and e in {0,1}.
  static Fibration make(const Field& F, std::array<int, 4> d, int e, GramMatrix gram);

  int sum_d() const { return d[0] + d[1] + d[2] + d[3]; }
};

/// The 4x4 determinant of the Gram matrix, a form of degree 2*sum(d) + 4e.
/// Errors with DegenerateForm when identically zero.
BinaryForm discriminant(const Fibration& fib);

struct FibrationInvariants {
  int delta;
  std::optional<int> genus;  // none when delta < 2
  int epsilon;
  int degE;
  int heightX;
  CensusCase census_case;
};

FibrationInvariants invariants(const Fibration& fib);

bool has_squarefree_discriminant(const Fibration& fib);

struct FiberData {
  const Field* K;
  std::array<std::array<Field::elt, 4>, 4> g;
  int rank;
  std::optional<std::array<Field::elt, 4>> kernel;  // present iff rank == 3
};

/// Entry-wise evaluation of the Gram matrix at b (base field or extension).
FiberData fiber_at(const Fibration& fib, const ProjPoint1& b);

/// Shift (d, e) into the normalized presentation e in {0,1}, min(d) adjusted,
/// leaving Gram entries untouched.  Returns the shift applied to d.
Fibration normalize(const Field& F, std::array<int, 4> d, int e, GramMatrix gram,
                    int* shift_out = nullptr);

/// The (d, e) pattern of a census case with invariant n (e = n mod 2).
std::pair<std::array<int, 4>, int> census_pattern(CensusCase c, int n);

struct CensusSample {
  Fibration fib;
  int tries_used;
};

/// Uniformly random Gram matrix with the case pattern, rejection-sampled
/// until the discriminant is square-free.
CensusSample sample_census(const Field& F, CensusCase c, int n, int tries, Rng& rng);

}  // namespace quadrifold

#endif
