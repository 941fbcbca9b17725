#include "quadrifold/binary_form.hpp"

#include <algorithm>

namespace quadrifold {

namespace {

using elt = Field::elt;

// Univariate helpers on descending coefficient sequences (index 0 = top
// power).  A sequence represents sum coeff[i] * t^{n-i}; leading zeros are
// stripped before use.
std::vector<elt> strip_front(std::vector<elt> c) {
  std::size_t a = 0;
  while (a < c.size() && c[a] == 0) ++a;
  return std::vector<elt>(c.begin() + a, c.end());
}

// Long division of descending sequences; divisor must have nonzero front.
// Returns quotient, leaves remainder in `num`.
std::vector<elt> seq_divmod(const Field& F, std::vector<elt>& num, const std::vector<elt>& den) {
  if (num.size() < den.size()) return {};
  std::vector<elt> q(num.size() - den.size() + 1, 0);
  elt lead_inv = F.inv(den[0]);
  for (std::size_t i = 0; i < q.size(); ++i) {
    elt c = F.mul(num[i], lead_inv);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j)
      num[i + j] = F.sub(num[i + j], F.mul(c, den[j]));
  }
  return q;
}

bool seq_is_zero(const std::vector<elt>& c) {
  return std::all_of(c.begin(), c.end(), [](elt x) { return x == 0; });
}

std::vector<elt> seq_gcd(const Field& F, std::vector<elt> a, std::vector<elt> b) {
  a = strip_front(std::move(a));
  b = strip_front(std::move(b));
  while (!b.empty()) {
    seq_divmod(F, a, b);
    a = strip_front(std::move(a));
    std::swap(a, b);
  }
  if (!a.empty()) {
    elt inv = F.inv(a[0]);
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

}  // namespace

ProjPoint1::ProjPoint1(const Field& field, elt uu, elt vv) : F(&field) {
  if (uu == 0 && vv == 0) fail(errc::spec_mismatch, "projective point (0:0)");
  if (uu != 0) {
    elt s = field.inv(uu);
    u = field.one();
    v = field.mul(vv, s);
  } else {
    u = 0;
    v = field.one();
  }
}

bool ProjPoint1::operator<(const ProjPoint1& o) const {
  if (F != o.F) return F->order() < o.F->order();
  if (u != o.u) return F->lex_less(u, o.u);
  return F->lex_less(v, o.v);
}

BinaryForm BinaryForm::zero(const Field& F) {
  BinaryForm f;
  f.F_ = &F;
  return f;
}

BinaryForm BinaryForm::constant(const Field& F, elt c) {
  return make(F, {c});
}

BinaryForm BinaryForm::make(const Field& F, std::vector<elt> coeffs) {
  BinaryForm f;
  f.F_ = &F;
  if (!seq_is_zero(coeffs)) f.coeffs_ = std::move(coeffs);
  return f;
}

BinaryForm BinaryForm::monomial(const Field& F, elt c, int a, int b) {
  if (c == 0) return zero(F);
  std::vector<elt> coeffs(a + b + 1, 0);
  coeffs[b] = c;
  return make(F, std::move(coeffs));
}

BinaryForm BinaryForm::vanishing_at(const ProjPoint1& b) {
  return make(*b.F, {b.v, b.F->neg(b.u)});
}

const Field& BinaryForm::field() const {
  if (!F_) fail(errc::spec_mismatch, "form without a field");
  return *F_;
}

int BinaryForm::degree() const {
  if (is_zero()) fail(errc::zero_form, "zero form has no degree");
  return static_cast<int>(coeffs_.size()) - 1;
}

bool BinaryForm::operator==(const BinaryForm& o) const {
  return F_ == o.F_ && coeffs_ == o.coeffs_;
}

bool BinaryForm::operator<(const BinaryForm& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return coeffs_.size() < o.coeffs_.size();
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return F_->lex_less(coeffs_[i], o.coeffs_[i]);
  return false;
}

Field::elt BinaryForm::evaluate(elt u, elt v) const {
  const Field& F = field();
  if (is_zero()) return 0;
  elt acc = 0;
  elt upow = F.one();
  std::vector<elt> up(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    up[coeffs_.size() - 1 - i] = upow;
    upow = F.mul(upow, u);
  }
  elt vpow = F.one();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    acc = F.add(acc, F.mul(F.mul(coeffs_[i], up[i]), vpow));
    vpow = F.mul(vpow, v);
  }
  return acc;
}

Field::elt BinaryForm::evaluate(const ProjPoint1& b) const {
  if (b.F != F_) fail(errc::spec_mismatch, "point over a different field");
  return evaluate(b.u, b.v);
}

BinaryForm BinaryForm::scaled(elt c) const {
  const Field& F = field();
  if (c == 0 || is_zero()) return zero(F);
  std::vector<elt> out(coeffs_);
  for (auto& x : out) x = F.mul(x, c);
  return make(F, std::move(out));
}

BinaryForm BinaryForm::monic() const {
  if (is_zero()) fail(errc::zero_form, "monic of zero form");
  for (elt c : coeffs_)
    if (c != 0) return scaled(field().inv(c));
  fail(errc::internal, "nonzero form with zero coefficients");
}

int BinaryForm::mult_at_infinity() const {
  if (is_zero()) fail(errc::zero_form, "zero form");
  int a = 0;
  while (coeffs_[a] == 0) ++a;
  return a;
}

BinaryForm BinaryForm::embedded(const Field& big) const {
  if (&big == F_) return *this;
  std::vector<elt> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = big.embed(field(), coeffs_[i]);
  BinaryForm f;
  f.F_ = &big;
  f.coeffs_ = std::move(out);
  return f;
}

bool BinaryForm::coeffs_in_subfield(const Field& sub) const {
  for (elt c : coeffs_)
    if (!field().in_subfield(sub, c)) return false;
  return true;
}

BinaryForm BinaryForm::retracted(const Field& sub) const {
  if (&sub == F_) return *this;
  std::vector<elt> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = field().retract(sub, coeffs_[i]);
  BinaryForm f;
  f.F_ = &sub;
  f.coeffs_ = std::move(out);
  return f;
}

BinaryForm operator+(const BinaryForm& f, const BinaryForm& g) {
  const Field& F = f.field();
  if (&F != &g.field()) fail(errc::spec_mismatch, "forms over different fields");
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.degree() != g.degree()) fail(errc::spec_mismatch, "adding forms of different degrees");
  std::vector<Field::elt> out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(f.coeffs()[i], g.coeffs()[i]);
  return BinaryForm::make(F, std::move(out));
}

BinaryForm operator-(const BinaryForm& f, const BinaryForm& g) {
  return f + g.scaled(g.field().neg(g.field().one()));
}

BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
  const Field& F = f.field();
  if (&F != &g.field()) fail(errc::spec_mismatch, "forms over different fields");
  if (f.is_zero() || g.is_zero()) return BinaryForm::zero(F);
  std::vector<Field::elt> out(f.coeffs().size() + g.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < g.coeffs().size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(f.coeffs()[i], g.coeffs()[j]));
  }
  return BinaryForm::make(F, std::move(out));
}

BinaryForm derivative_u(const BinaryForm& f) {
  const Field& F = f.field();
  if (f.is_zero()) return BinaryForm::zero(F);
  int d = f.degree();
  if (d == 0) return BinaryForm::zero(F);
  std::vector<Field::elt> out(d);
  for (int i = 0; i < d; ++i) out[i] = F.mul(f.coeffs()[i], F.from_int(d - i));
  return BinaryForm::make(F, std::move(out));
}

BinaryForm derivative_v(const BinaryForm& f) {
  const Field& F = f.field();
  if (f.is_zero()) return BinaryForm::zero(F);
  int d = f.degree();
  if (d == 0) return BinaryForm::zero(F);
  std::vector<Field::elt> out(d);
  for (int j = 0; j < d; ++j) out[j] = F.mul(f.coeffs()[j + 1], F.from_int(j + 1));
  return BinaryForm::make(F, std::move(out));
}

BinaryForm form_gcd(const BinaryForm& f, const BinaryForm& g) {
  const Field& F = f.field();
  if (&F != &g.field()) fail(errc::spec_mismatch, "forms over different fields");
  if (f.is_zero() && g.is_zero()) fail(errc::zero_form, "gcd of two zero forms");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  int vf = f.mult_at_infinity(), vg = g.mult_at_infinity();
  auto core = seq_gcd(F, f.coeffs(), g.coeffs());
  int vmin = std::min(vf, vg);
  std::vector<Field::elt> out(vmin, 0);
  out.insert(out.end(), core.begin(), core.end());
  return BinaryForm::make(F, std::move(out));
}

BinaryForm divide_exact(const BinaryForm& f, const BinaryForm& g) {
  const Field& F = f.field();
  if (&F != &g.field()) fail(errc::spec_mismatch, "forms over different fields");
  if (g.is_zero()) fail(errc::division_by_zero, "division by the zero form");
  if (f.is_zero()) return BinaryForm::zero(F);
  int vf = f.mult_at_infinity(), vg = g.mult_at_infinity();
  if (vf < vg || f.degree() < g.degree()) fail(errc::inexact_division, "quotient is not a form");
  std::vector<Field::elt> num(f.coeffs().begin() + vf, f.coeffs().end());
  std::vector<Field::elt> den(g.coeffs().begin() + vg, g.coeffs().end());
  auto q = seq_divmod(F, num, den);
  if (!seq_is_zero(num)) fail(errc::inexact_division, "nonzero remainder");
  std::vector<Field::elt> out(vf - vg, 0);
  out.insert(out.end(), q.begin(), q.end());
  if (static_cast<int>(out.size()) != f.degree() - g.degree() + 1)
    fail(errc::internal, "division degree bookkeeping");
  return BinaryForm::make(F, std::move(out));
}

std::optional<BinaryForm> form_sqrt(const BinaryForm& f) {
  const Field& F = f.field();
  if (f.is_zero()) return BinaryForm::zero(F);
  if (f.degree() % 2 != 0) return std::nullopt;
  int vf = f.mult_at_infinity();
  if (vf % 2 != 0) return std::nullopt;
  std::vector<Field::elt> core(f.coeffs().begin() + vf, f.coeffs().end());
  // core[0] != 0; root coefficients from the top by the square recurrence.
  if (!F.is_square(core[0])) return std::nullopt;
  std::size_t half = (core.size() - 1) / 2;
  std::vector<Field::elt> r(half + 1, 0);
  r[0] = F.sqrt(core[0]);
  Field::elt lead2inv = F.inv(F.add(r[0], r[0]));
  for (std::size_t i = 1; i <= half; ++i) {
    Field::elt acc = core[i];
    for (std::size_t j = 1; j < i; ++j) acc = F.sub(acc, F.mul(r[j], r[i - j]));
    r[i] = F.mul(acc, lead2inv);
  }
  std::vector<Field::elt> out(vf / 2, 0);
  out.insert(out.end(), r.begin(), r.end());
  BinaryForm root = BinaryForm::make(F, std::move(out));
  if (!(root * root == f)) return std::nullopt;
  return root;
}

bool is_squarefree(const BinaryForm& f) {
  if (f.is_zero()) fail(errc::zero_form, "squarefree test of the zero form");
  if (f.degree() == 0) return true;
  if (f.mult_at_infinity() > 1) return false;
  // Dehomogenize at v = 1 and test gcd(f, f') = 1.
  BinaryForm fu = derivative_u(f);
  if (fu.is_zero()) {
    // f(t,1) has zero derivative: every root of positive t-degree is repeated.
    return f.degree() - f.mult_at_infinity() == 0;
  }
  BinaryForm g = form_gcd(f, fu);
  // The gcd as forms also absorbs the [1:0] multiplicity, already handled.
  return g.degree() - g.mult_at_infinity() == 0;
}

std::vector<FormRoot> projective_roots(const BinaryForm& f, unsigned max_ext,
                                       std::uint64_t enumeration_budget) {
  if (f.is_zero()) fail(errc::zero_form, "roots of the zero form");
  if (max_ext < 1) fail(errc::spec_mismatch, "max_ext must be >= 1");
  const Field& F = f.field();
  std::vector<FormRoot> roots;
  for (unsigned m = 1; m <= max_ext; ++m) {
    double qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= static_cast<double>(F.order());
    if (qm > static_cast<double>(enumeration_budget))
      fail(errc::extension_too_large, "q^max_ext exceeds the enumeration budget");
    const Field& K = F.extension(m);
    BinaryForm fk = f.embedded(K);
    auto consider = [&](Field::elt u0, Field::elt v0) {
      if (fk.evaluate(u0, v0) != 0) return;
      // Skip points already defined over a proper subfield of K/F.
      if (m > 1) {
        for (unsigned j = 1; j < m; ++j) {
          if (m % j != 0) continue;
          const Field& sub = F.extension(j);
          if (K.in_subfield(sub, u0) && K.in_subfield(sub, v0)) return;
        }
      }
      // Galois orbit representative over the coefficient field:
      // lexicographically least conjugate under the q-power Frobenius.
      ProjPoint1 pt(K, u0, v0);
      ProjPoint1 rep = pt;
      Field::elt cu = u0, cv = v0;
      for (unsigned j = 1; j < m; ++j) {
        cu = K.pow(cu, F.order());
        cv = K.pow(cv, F.order());
        ProjPoint1 cp(K, cu, cv);
        if (cp == pt) break;
        if (cp < rep) rep = cp;
      }
      if (!(rep == pt)) return;  // reported from its least conjugate
      // Multiplicity by repeated exact division by the vanishing linear form.
      BinaryForm lin = BinaryForm::vanishing_at(pt);
      BinaryForm rest = fk;
      int mult = 0;
      while (!rest.is_zero() && rest.degree() >= 1 && rest.evaluate(pt) == 0) {
        rest = divide_exact(rest, lin);
        ++mult;
        if (rest.degree() == 0) break;
      }
      roots.push_back(FormRoot{pt, m, mult});
    };
    for (Field::elt t = 0; t < K.order(); ++t) consider(K.one(), t);
    consider(0, K.one());
  }
  return roots;
}

}  // namespace quadrifold
