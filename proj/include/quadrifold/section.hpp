#ifndef QUADRIFOLD_SECTION_HPP
#define QUADRIFOLD_SECTION_HPP

#include <array>
#include <string>

#include "quadrifold/fibration.hpp"

namespace quadrifold {

/// A section of the fibration: a line subbundle O(-f) of E given by four
/// binary forms s_i of degree f - d_i (zero where f < d_i), lying on the
/// quadric.  Canonically scaled: the first nonzero coefficient in the scan
/// order (s_1 coefficients, then s_2, ...) equals 1.
struct Section {
  int f = 0;
  std::array<BinaryForm, 4> s;

  bool operator==(const Section& o) const { return f == o.f && s == o.s; }
};

int section_height(const Fibration& fib, const Section& sec);

/// The quadratic identity sum g_ij s_i s_j as a form (zero for true sections).
BinaryForm section_residual(const Fibration& fib, const Section& sec);

/// Common divisor of the nonzero components; degree 0 means saturated.
bool section_saturated(const Section& sec);

void canonicalize_scaling(Section& sec);

/// Independent post-hoc checker: degree pattern, quadratic identity,
/// saturation, canonical scaling.  Returns false and a reason on failure.
bool check_section(const Fibration& fib, const Section& sec, std::string* why = nullptr,
                   bool require_saturated = true);

/// Evaluate the section at a point of P^1 (possibly over an extension);
/// returns the fiber coordinates, not normalized.
std::array<Field::elt, 4> section_value(const Fibration& fib, const Section& sec,
                                        const ProjPoint1& b);

/// Deterministic ordering: by f, then coefficient sequences.
bool section_less(const Section& a, const Section& b);

}  // namespace quadrifold

#endif
