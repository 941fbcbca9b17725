#ifndef QUADRIFOLD_BINARY_FORM_HPP
#define QUADRIFOLD_BINARY_FORM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "quadrifold/field.hpp"

namespace quadrifold {

/// A point of P^1 with coordinates in a finite field, normalized so the first
/// nonzero coordinate equals 1.
struct ProjPoint1 {
  const Field* F = nullptr;
  Field::elt u = 0, v = 0;

  ProjPoint1() = default;
  ProjPoint1(const Field& field, Field::elt uu, Field::elt vv);

  bool operator==(const ProjPoint1& o) const { return F == o.F && u == o.u && v == o.v; }
  bool operator<(const ProjPoint1& o) const;
};

/// A homogeneous form in (u, v) over a finite field.  coeffs[i] is the
/// coefficient of u^{degree-i} v^i (descending powers of u, matching the
/// text encoding).  The zero form has an empty coefficient vector and no
/// degree.
class BinaryForm {
 public:
  BinaryForm() = default;
  static BinaryForm zero(const Field& F);
  static BinaryForm constant(const Field& F, Field::elt c);
  static BinaryForm make(const Field& F, std::vector<Field::elt> coeffs);  // coeffs descending in u
  /// Monomial c * u^a v^b.
  static BinaryForm monomial(const Field& F, Field::elt c, int a, int b);
  /// The linear form vanishing at b: v(b)*u - u(b)*v.
  static BinaryForm vanishing_at(const ProjPoint1& b);

  const Field& field() const;
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const;  // errors on the zero form
  const std::vector<Field::elt>& coeffs() const { return coeffs_; }

  bool operator==(const BinaryForm& o) const;
  bool operator<(const BinaryForm& o) const;  // (degree, coeff sequence)

  Field::elt evaluate(Field::elt u, Field::elt v) const;
  Field::elt evaluate(const ProjPoint1& b) const;

  BinaryForm scaled(Field::elt c) const;
  BinaryForm monic() const;  // leading coefficient 1 in the u-ordering

  /// Multiplicity of the root [1:0] = number of leading zero coefficients.
  int mult_at_infinity() const;

  /// Same form with coefficients mapped into an extension field.
  BinaryForm embedded(const Field& big) const;
  bool coeffs_in_subfield(const Field& sub) const;
  BinaryForm retracted(const Field& sub) const;

 private:
  const Field* F_ = nullptr;
  std::vector<Field::elt> coeffs_;
};

BinaryForm operator+(const BinaryForm& f, const BinaryForm& g);
BinaryForm operator-(const BinaryForm& f, const BinaryForm& g);
BinaryForm operator*(const BinaryForm& f, const BinaryForm& g);

BinaryForm derivative_u(const BinaryForm& f);
BinaryForm derivative_v(const BinaryForm& f);

/// Monic greatest common divisor; gcd(f, 0) = monic f, gcd(0, 0) errors.
BinaryForm form_gcd(const BinaryForm& f, const BinaryForm& g);
/// Exact quotient f / g; errors with InexactDivision otherwise.
BinaryForm divide_exact(const BinaryForm& f, const BinaryForm& g);
/// Square root of a form that is a perfect square, if one exists.
std::optional<BinaryForm> form_sqrt(const BinaryForm& f);

/// True iff f has no repeated projective root over the algebraic closure.
bool is_squarefree(const BinaryForm& f);

struct FormRoot {
  ProjPoint1 point;  // over an extension; Galois orbit representative
  unsigned ext_degree;
  int multiplicity;
};

/// All projective roots over extensions of degree <= max_ext of the
/// coefficient field, one representative per Galois orbit.
std::vector<FormRoot> projective_roots(const BinaryForm& f, unsigned max_ext,
                                       std::uint64_t enumeration_budget = 1000000);

}  // namespace quadrifold

#endif
