#ifndef QUADRIFOLD_CHOW_HPP
#define QUADRIFOLD_CHOW_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quadrifold/errors.hpp"

namespace quadrifold {

/// Exact symbolic classes in the Chow ring of a projective bundle of rank
/// n+2 over a curve: integer combinations of xi^a * beta with a <= n+1 and
/// beta in {1, epsE, epsI}, where epsE, epsI are the degree-1 pullbacks
/// standing for c1(E), c1(I).  Relations: any product of two pullbacks is
/// zero, and xi^{n+2} = -epsE * xi^{n+1}.
class ChowClass {
 public:
  enum Pullback { One = 0, EpsE = 1, EpsI = 2 };

  explicit ChowClass(int n);
  static ChowClass term(int n, std::int64_t c, int xi_power, Pullback beta);
  static ChowClass xi(int n) { return term(n, 1, 1, One); }
  static ChowClass eps_e(int n) { return term(n, 1, 0, EpsE); }
  static ChowClass eps_i(int n) { return term(n, 1, 0, EpsI); }

  int n() const { return n_; }
  std::int64_t coeff(int xi_power, Pullback beta) const { return c_[xi_power][beta]; }
  bool is_zero() const;

  ChowClass operator+(const ChowClass& o) const;
  ChowClass operator-(const ChowClass& o) const;
  ChowClass operator*(const ChowClass& o) const;
  ChowClass scaled(std::int64_t k) const;
  ChowClass pow(unsigned e) const;
  bool operator==(const ChowClass& o) const { return n_ == o.n_ && c_ == o.c_; }

  std::string to_string() const;

 private:
  void add_term(std::int64_t c, int xi_power, int beta);

  int n_;
  std::vector<std::array<std::int64_t, 3>> c_;  // [xi power][pullback]
};

/// The degree of a top-dimensional class as a linear form in the formal
/// symbols degE, degI.
struct LinExpr {
  std::int64_t cE = 0;
  std::int64_t cI = 0;
  bool operator==(const LinExpr& o) const { return cE == o.cE && cI == o.cI; }
};

LinExpr degree(const ChowClass& a);

struct HeightIdentityReport {
  int n;
  LinExpr h;                 // -degree((epsE + n xi - epsI)^{n+1} (2 xi + epsI))
  std::int64_t n_pow_n;      // n^n
  bool holds;                // h == n^n * (-2 degE + (n+2) degI) identically
  std::string expression;    // expanded h as text
};

/// Verifies the intersection-theoretic height identity for 1 <= n <= 6.
HeightIdentityReport verify_height_formula(int n);

}  // namespace quadrifold

#endif
