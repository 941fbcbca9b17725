#ifndef QUADRIFOLD_LINES_HPP
#define QUADRIFOLD_LINES_HPP

#include <utility>
#include <vector>

#include "quadrifold/section.hpp"

namespace quadrifold {

/// A line in a smooth fiber: a totally isotropic plane, stored as the
/// canonical RREF basis so equality is matrix equality.  K is the field of
/// definition (the base field of b's coordinates or its quadratic extension).
struct LineInFiber {
  ProjPoint1 b;
  const Field* K = nullptr;
  std::array<std::array<Field::elt, 4>, 2> basis{};

  bool operator==(const LineInFiber& o) const {
    return K == o.K && b == o.b && basis == o.basis;
  }
};

/// Deterministic order on lines of one fiber (flattened digit-lex).
bool line_less(const LineInFiber& a, const LineInFiber& b);

/// The two lines of the smooth fiber X_b through the quadric point x,
/// obtained by splitting the tangent-plane conic.  Conjugate pair over the
/// quadratic extension when disc(b) is a nonsquare.
std::pair<LineInFiber, LineInFiber> lines_through_point(const Fibration& fib, const ProjPoint1& b,
                                                        const std::array<Field::elt, 4>& x);

struct LineIntersection {
  enum class Kind { Point, Same, None } kind;
  std::array<Field::elt, 4> point{};  // normalized; valid when kind == Point
};

LineIntersection line_intersection(const LineInFiber& l1, const LineInFiber& l2);

/// 0 when dim(span l ∩ span reference) is even, 1 when odd.
int ruling_of(const LineInFiber& line, const LineInFiber& reference);

/// All lines of X_b rational over b's field, sorted by line_less.
std::vector<LineInFiber> lines_in_fiber(const Fibration& fib, const ProjPoint1& b);

/// The lexicographically least line over the splitting field of the fiber
/// (the base field of b when disc(b) is a square, else its quadratic
/// extension).  Anchors the ruling labels.
LineInFiber reference_line(const Fibration& fib, const ProjPoint1& b);

/// The pointwise section <-> line-pair correspondence at one fiber: the two
/// lines through sigma(b), labeled by parity against the reference line, with
/// label 0 bound to the lexicographically smaller square root of disc(b).
struct LabeledLines {
  ProjPoint1 b;                              // as given
  const Field* K = nullptr;                  // field of definition of the lines
  std::array<Field::elt, 2> sqrt_disc{};     // label -> chosen root of disc(b)
  std::array<LineInFiber, 2> line;           // label -> line
};

std::vector<LabeledLines> section_to_line_data(const Fibration& fib, const Section& sec,
                                               const std::vector<ProjPoint1>& points);

/// True iff the Galois action swaps the two rulings of X_b, i.e. disc(b) is a
/// nonsquare; cross-checked against the rationality of the lines through a
/// sampled rational fiber point.
bool galois_swap_check(const Fibration& fib, const ProjPoint1& b);

}  // namespace quadrifold

#endif
