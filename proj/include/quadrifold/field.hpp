#ifndef QUADRIFOLD_FIELD_HPP
#define QUADRIFOLD_FIELD_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "quadrifold/errors.hpp"

namespace quadrifold {

/// A finite field F_{p^k}, p an odd prime.  Elements are encoded as integers
/// in [0, p^k): the base-p digits (little-endian) are the coordinates in the
/// power basis of the modulus.  For k = 1 the encoding is the residue itself.
///
/// Instances are canonical and immutable; obtain them through Field::get so
/// pointer equality doubles as field equality.
class Field {
 public:
  using elt = std::uint64_t;

  /// Canonical field with the lexicographically least monic irreducible
  /// modulus of degree k (digit sequence a_0,...,a_{k-1} compared from a_0).
  static const Field& get(std::uint64_t p, unsigned k = 1);
  /// Field with an explicit modulus (coefficients a_0..a_{k-1} of the
  /// non-leading part of a monic degree-k polynomial).  Irreducibility is
  /// verified by trial division.
  static const Field& get(std::uint64_t p, unsigned k, const std::vector<std::uint64_t>& modulus);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return mod_; }

  elt zero() const { return 0; }
  elt one() const { return from_int(1); }
  elt from_int(std::int64_t n) const;

  elt add(elt a, elt b) const;
  elt sub(elt a, elt b) const;
  elt neg(elt a) const;
  elt mul(elt a, elt b) const;
  elt inv(elt a) const;
  elt div(elt a, elt b) const { return mul(a, inv(b)); }
  elt pow(elt a, std::uint64_t e) const;

  /// Euler criterion a^{(q-1)/2} == 1; zero counts as a square.
  bool is_square(elt a) const;
  /// Deterministic square root: of the two roots, the one with the
  /// lexicographically smaller digit sequence.
  elt sqrt(elt a) const;

  /// Digit-lexicographic comparison of canonical representations.
  bool lex_less(elt a, elt b) const;

  std::vector<elt> digits(elt a) const;
  elt from_digits(const std::vector<elt>& d) const;

  /// The canonical extension F_{p^{k*m}}.
  const Field& extension(unsigned m) const;
  /// Embed an element of `sub` (requires sub.k | k, same p) into this field,
  /// via the lexicographically least root of sub's modulus.
  elt embed(const Field& sub, elt a) const;
  bool in_subfield(const Field& sub, elt a) const;
  /// Inverse of embed; errors if a is not in the image.
  elt retract(const Field& sub, elt a) const;
  /// Relative Frobenius x -> x^{|sub|}.
  elt frobenius(const Field& sub, elt a) const { return pow(a, sub.order()); }

 private:
  Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> mod);
  Field(const Field&) = delete;

  struct Embedding {
    std::vector<elt> alpha_pow;  // alpha^0..alpha^{sub.k-1} in this field
    std::map<elt, elt> back;     // image -> preimage
  };
  const Embedding& embedding(const Field& sub) const;

  std::uint64_t p_, q_;
  unsigned k_;
  std::vector<std::uint64_t> mod_;
  mutable std::mutex emb_mutex_;
  mutable std::map<const Field*, std::unique_ptr<Embedding>> emb_;
};

}  // namespace quadrifold

#endif
