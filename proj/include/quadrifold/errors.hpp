#ifndef QUADRIFOLD_ERRORS_HPP
#define QUADRIFOLD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quadrifold {

enum class errc {
  // field / form arithmetic
  division_by_zero,
  not_a_square,
  spec_mismatch,
  inexact_division,
  zero_form,
  extension_too_large,
  // fibration
  degenerate_form,
  inconsistent,
  sampling_exhausted,
  // searches
  budget_exceeded,
  not_enough_interpolation_points,
  constraint_on_discriminant,
  constraint_off_quadric,
  // lines
  point_not_on_quadric,
  singular_fiber,
  fiber_mismatch,
  no_rational_fiber_point,
  // hecke
  line_not_isotropic,
  no_graded_automorphism,
  section_not_on_input,
  // chow
  dimension_mismatch,
  not_top_dimensional,
  // io / driver
  malformed_input,
  // a property the math guarantees failed; always a bug
  internal
};

const char* errc_name(errc k);

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}

  errc kind() const { return kind_; }

  // CLI contract: 1 malformed input, 2 budget/sampling, 3 internal invariant.
  int exit_code() const {
    switch (kind_) {
      case errc::budget_exceeded:
      case errc::sampling_exhausted:
        return 2;
      case errc::internal:
      case errc::no_rational_fiber_point:
        return 3;
      default:
        return 1;
    }
  }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

}  // namespace quadrifold

#endif
