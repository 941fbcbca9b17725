#ifndef QUADRIFOLD_HECKE_HPP
#define QUADRIFOLD_HECKE_HPP

#include "quadrifold/lines.hpp"

namespace quadrifold {

/// Audit record of one elementary transformation.  basis_change is the graded
/// automorphism U moving span(e3,e4) (or span(e1,e2) when swapped) onto the
/// line at p; its determinant is the constant det_u, and
/// disc(output) = disc(input) * det_u^2 exactly.
struct TransformReceipt {
  Fibration input;
  Fibration output;
  ProjPoint1 p;
  LineInFiber line;
  std::array<std::array<BinaryForm, 4>, 4> basis_change;
  BinaryForm ell;       // the linear form vanishing at p
  bool swapped = false; // orientation: which index pair was scaled
  int shift = 0;        // twist applied by the final normalize()
  Field::elt det_u = 0;
};

/// Gram-matrix surgery along a line in the smooth fiber X_p.  The default
/// orientation sends (d, e) to (d1, d2, d3-1, d4-1, e+1); swap_blocks is the
/// inverse move scaling the other block.
TransformReceipt elementary_transform(const Fibration& fib, const ProjPoint1& p,
                                      const LineInFiber& line, bool swap_blocks = false);

struct SectionTransform {
  Section sec;        // proper transform, a section of receipt.output
  bool incident;      // sigma(p) on the line?
  int height_before;
  int height_after;   // +1 disjoint, -1 incident
};

SectionTransform transform_section(const TransformReceipt& receipt, const Section& sec);

}  // namespace quadrifold

#endif
