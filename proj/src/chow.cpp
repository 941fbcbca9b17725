#include "quadrifold/chow.hpp"

namespace quadrifold {

ChowClass::ChowClass(int n) : n_(n) {
  if (n < 1) fail(errc::spec_mismatch, "relative dimension must be >= 1");
  c_.assign(n + 2, {0, 0, 0});
}

ChowClass ChowClass::term(int n, std::int64_t c, int xi_power, Pullback beta) {
  ChowClass out(n);
  out.add_term(c, xi_power, beta);
  return out;
}

bool ChowClass::is_zero() const {
  for (const auto& row : c_)
    for (auto v : row)
      if (v != 0) return false;
  return true;
}

void ChowClass::add_term(std::int64_t c, int xi_power, int beta) {
  if (c == 0) return;
  // Reduction: xi^{n+2} = -epsE xi^{n+1}; with a pullback factor the product
  // of two pullbacks kills the term; xi^{n+3} and beyond vanish outright.
  while (xi_power > n_ + 1) {
    if (beta != One) return;
    if (xi_power > n_ + 2) return;
    xi_power -= 1;
    beta = EpsE;
    c = -c;
  }
  c_[xi_power][beta] += c;
}

ChowClass ChowClass::operator+(const ChowClass& o) const {
  if (n_ != o.n_) fail(errc::dimension_mismatch, "Chow classes of different relative dimension");
  ChowClass out(n_);
  for (int a = 0; a <= n_ + 1; ++a)
    for (int b = 0; b < 3; ++b) out.c_[a][b] = c_[a][b] + o.c_[a][b];
  return out;
}

ChowClass ChowClass::operator-(const ChowClass& o) const { return *this + o.scaled(-1); }

ChowClass ChowClass::operator*(const ChowClass& o) const {
  if (n_ != o.n_) fail(errc::dimension_mismatch, "Chow classes of different relative dimension");
  ChowClass out(n_);
  for (int a = 0; a <= n_ + 1; ++a)
    for (int b = 0; b < 3; ++b) {
      if (c_[a][b] == 0) continue;
      for (int a2 = 0; a2 <= n_ + 1; ++a2)
        for (int b2 = 0; b2 < 3; ++b2) {
          if (o.c_[a2][b2] == 0) continue;
          if (b != One && b2 != One) continue;  // two pullbacks multiply to zero
          int beta = b != One ? b : b2;
          out.add_term(c_[a][b] * o.c_[a2][b2], a + a2, beta);
        }
    }
  return out;
}

ChowClass ChowClass::scaled(std::int64_t k) const {
  ChowClass out(n_);
  for (int a = 0; a <= n_ + 1; ++a)
    for (int b = 0; b < 3; ++b) out.c_[a][b] = c_[a][b] * k;
  return out;
}

ChowClass ChowClass::pow(unsigned e) const {
  ChowClass out = term(n_, 1, 0, One);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

std::string ChowClass::to_string() const {
  std::string s;
  static const char* names[3] = {"", "*epsE", "*epsI"};
  for (int a = n_ + 1; a >= 0; --a)
    for (int b = 0; b < 3; ++b) {
      std::int64_t v = c_[a][b];
      if (v == 0) continue;
      if (!s.empty()) s += v > 0 ? " + " : " - ";
      else if (v < 0) s += "-";
      std::int64_t av = v > 0 ? v : -v;
      s += std::to_string(av);
      if (a > 0) s += "*xi^" + std::to_string(a);
      s += names[b];
    }
  return s.empty() ? "0" : s;
}

LinExpr degree(const ChowClass& a) {
  LinExpr out;
  for (int p = 0; p <= a.n() + 1; ++p)
    for (int b = 0; b < 3; ++b) {
      std::int64_t v = a.coeff(p, static_cast<ChowClass::Pullback>(b));
      if (v == 0) continue;
      if (p != a.n() + 1 || b == ChowClass::One)
        fail(errc::not_top_dimensional, "class has a term outside xi^{n+1}*pullback");
      if (b == ChowClass::EpsE)
        out.cE += v;
      else
        out.cI += v;
    }
  return out;
}

HeightIdentityReport verify_height_formula(int n) {
  if (n < 1 || n > 6) fail(errc::spec_mismatch, "verify_height_formula expects 1 <= n <= 6");
  ChowClass ct = ChowClass::eps_e(n) + ChowClass::xi(n).scaled(n) - ChowClass::eps_i(n);
  ChowClass x_class = ChowClass::xi(n).scaled(2) + ChowClass::eps_i(n);
  ChowClass top = ct.pow(n + 1) * x_class;
  LinExpr d = degree(top);
  HeightIdentityReport rep;
  rep.n = n;
  rep.h = LinExpr{-d.cE, -d.cI};
  rep.n_pow_n = 1;
  for (int i = 0; i < n; ++i) rep.n_pow_n *= n;
  // h should equal n^n * Delta with Delta = -2 degE + (n+2) degI.
  rep.holds = rep.h.cE == -2 * rep.n_pow_n && rep.h.cI == (n + 2) * rep.n_pow_n;
  std::string s;
  auto term_str = [](std::int64_t c, const char* sym) {
    std::string t;
    if (c == 0) return t;
    t += c > 0 ? "+" : "-";
    t += std::to_string(c > 0 ? c : -c);
    t += "*";
    t += sym;
    return t;
  };
  s = term_str(rep.h.cE, "degE") + term_str(rep.h.cI, "degI");
  rep.expression = s.empty() ? "0" : s;
  return rep;
}

}  // namespace quadrifold
