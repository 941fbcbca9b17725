#include "quadrifold/field.hpp"

#include <algorithm>
#include <tuple>

namespace quadrifold {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense F_p polynomial helpers on coefficient vectors (index = power of x).
std::vector<u64> poly_trim(std::vector<u64> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<u64> poly_mod(std::vector<u64> a, const std::vector<u64>& m, u64 p) {
  // m is monic, given with leading coefficient included.
  a = poly_trim(std::move(a));
  while (a.size() >= m.size()) {
    u64 c = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      u64 t = mulmod(c, m[i], p);
      a[shift + i] = (a[shift + i] + p - t) % p;
    }
    a = poly_trim(std::move(a));
  }
  return a;
}

std::vector<u64> poly_mulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                             const std::vector<u64>& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + u128(a[i]) * b[j]) % p;
  return poly_mod(std::move(c), m, p);
}

// Trial-division irreducibility of a monic polynomial over F_p; desk scale.
bool poly_irreducible(const std::vector<u64>& f, u64 p) {
  unsigned deg = static_cast<unsigned>(f.size()) - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // Iterate monic divisors of degree 1..deg/2 by their non-leading digits.
  for (unsigned d = 1; d <= deg / 2; ++d) {
    u64 count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (u64 n = 0; n < count; ++n) {
      std::vector<u64> g(d + 1, 0);
      u64 t = n;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<u64> least_irreducible(u64 p, unsigned k) {
  if (k == 1) return {};
  u64 count = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (count > (u64(1) << 40) / p) fail(errc::extension_too_large, "modulus search space too large");
    count *= p;
  }
  // Lexicographic order on (a_0,...,a_{k-1}): a_0 is the most significant digit.
  for (u64 n = 0; n < count; ++n) {
    std::vector<u64> digits(k);
    u64 t = n;
    for (unsigned i = k; i-- > 0;) {
      digits[i] = t % p;
      t /= p;
    }
    std::vector<u64> f(digits);
    f.push_back(1);
    if (poly_irreducible(f, p)) return digits;
  }
  fail(errc::internal, "no irreducible polynomial found");
}

struct FieldKey {
  u64 p;
  unsigned k;
  std::vector<u64> mod;
  bool operator<(const FieldKey& o) const {
    return std::tie(p, k, mod) < std::tie(o.p, o.k, o.mod);
  }
};

std::map<FieldKey, std::unique_ptr<Field>>& registry() {
  static std::map<FieldKey, std::unique_ptr<Field>> r;
  return r;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Field::Field(u64 p, unsigned k, std::vector<u64> mod) : p_(p), k_(k), mod_(std::move(mod)) {
  q_ = 1;
  for (unsigned i = 0; i < k_; ++i) {
    if (q_ > (u64(1) << 62) / p_) fail(errc::extension_too_large, "field order exceeds 2^62");
    q_ *= p_;
  }
}

const Field& Field::get(u64 p, unsigned k) {
  if (!is_prime(p) || p == 2) fail(errc::spec_mismatch, "p must be an odd prime");
  if (k < 1) fail(errc::spec_mismatch, "extension degree must be >= 1");
  if (k > 1 && p > 10000) fail(errc::extension_too_large, "extension fields require small p");
  std::lock_guard<std::mutex> lock(registry_mutex());
  FieldKey key{p, k, {}};
  if (k > 1) key.mod = least_irreducible(p, k);
  auto it = registry().find(key);
  if (it == registry().end())
    it = registry().emplace(key, std::unique_ptr<Field>(new Field(p, k, key.mod))).first;
  return *it->second;
}

const Field& Field::get(u64 p, unsigned k, const std::vector<u64>& modulus) {
  if (!is_prime(p) || p == 2) fail(errc::spec_mismatch, "p must be an odd prime");
  if (k == 1) return get(p, 1);
  if (modulus.size() != k) fail(errc::spec_mismatch, "modulus must have k coefficients");
  std::vector<u64> full(modulus);
  for (auto& c : full)
    if (c >= p) fail(errc::spec_mismatch, "modulus coefficient out of range");
  full.push_back(1);
  if (!poly_irreducible(full, p)) fail(errc::spec_mismatch, "modulus is reducible over F_p");
  std::lock_guard<std::mutex> lock(registry_mutex());
  FieldKey key{p, k, modulus};
  auto it = registry().find(key);
  if (it == registry().end())
    it = registry().emplace(key, std::unique_ptr<Field>(new Field(p, k, modulus))).first;
  return *it->second;
}

Field::elt Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<elt>(r);
}

std::vector<Field::elt> Field::digits(elt a) const {
  std::vector<elt> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Field::elt Field::from_digits(const std::vector<elt>& d) const {
  if (d.size() != k_) fail(errc::spec_mismatch, "wrong number of residues");
  elt a = 0;
  for (unsigned i = k_; i-- > 0;) {
    if (d[i] >= p_) fail(errc::spec_mismatch, "residue out of range");
    a = a * p_ + d[i];
  }
  return a;
}

Field::elt Field::add(elt a, elt b) const {
  if (k_ == 1) return (a + b) % p_;
  elt r = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    r += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

Field::elt Field::neg(elt a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  elt r = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    elt d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

Field::elt Field::sub(elt a, elt b) const { return add(a, neg(b)); }

Field::elt Field::mul(elt a, elt b) const {
  if (k_ == 1) return mulmod(a, b, p_);
  std::vector<u64> full(mod_);
  full.push_back(1);
  auto c = poly_mulmod(poly_trim(digits(a)), poly_trim(digits(b)), full, p_);
  c.resize(k_, 0);
  return from_digits(c);
}

Field::elt Field::pow(elt a, u64 e) const {
  elt r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Field::elt Field::inv(elt a) const {
  if (a == 0) fail(errc::division_by_zero, "inverse of zero");
  if (k_ == 1) {
    // Fermat
    return pow(a, p_ - 2);
  }
  return pow(a, q_ - 2);
}

bool Field::is_square(elt a) const {
  if (a == 0) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

bool Field::lex_less(elt a, elt b) const {
  if (k_ == 1) return a < b;
  for (unsigned i = 0; i < k_; ++i) {
    elt da = a % p_, db = b % p_;
    if (da != db) return da < db;
    a /= p_;
    b /= p_;
  }
  return false;
}

Field::elt Field::sqrt(elt a) const {
  if (a == 0) return 0;
  if (!is_square(a)) fail(errc::not_a_square, "sqrt of a nonsquare");
  elt r;
  if (q_ % 4 == 3) {
    r = pow(a, (q_ + 1) / 4);
  } else {
    // Desk scale: exhaustive scan.
    r = 0;
    bool found = false;
    for (elt x = 1; x < q_; ++x)
      if (mul(x, x) == a) {
        r = x;
        found = true;
        break;
      }
    if (!found) fail(errc::internal, "square root scan failed");
  }
  elt s = neg(r);
  return lex_less(r, s) ? r : s;
}

const Field& Field::extension(unsigned m) const {
  if (k_ > 1 || m > 1) return Field::get(p_, k_ * m);
  return *this;
}

const Field::Embedding& Field::embedding(const Field& sub) const {
  if (sub.p_ != p_ || k_ % sub.k_ != 0)
    fail(errc::spec_mismatch, "not a subfield");
  std::lock_guard<std::mutex> lock(emb_mutex_);
  auto it = emb_.find(&sub);
  if (it != emb_.end()) return *it->second;
  auto e = std::make_unique<Embedding>();
  // Root of sub's modulus in this field: lexicographically least.
  elt alpha = 0;
  if (sub.k_ == 1) {
    alpha = 0;  // unused
  } else {
    bool found = false;
    std::vector<elt> mod_here(sub.k_ + 1);
    for (unsigned i = 0; i < sub.k_; ++i) mod_here[i] = sub.mod_[i] % p_;
    mod_here[sub.k_] = 1;
    for (elt x = 0; x < q_ && !found; ++x) {
      // Evaluate the monic modulus at x (coefficients are prime-field).
      elt v = 0;
      elt xp = one();
      for (unsigned i = 0; i <= sub.k_; ++i) {
        v = add(v, mul(mod_here[i], xp));
        xp = mul(xp, x);
      }
      if (v == 0) {
        alpha = x;
        found = true;
      }
    }
    if (!found) fail(errc::internal, "no root of subfield modulus in extension");
  }
  e->alpha_pow.resize(sub.k_);
  e->alpha_pow[0] = one();
  for (unsigned i = 1; i < sub.k_; ++i) e->alpha_pow[i] = mul(e->alpha_pow[i - 1], alpha);
  for (elt x = 0; x < sub.q_; ++x) {
    auto d = sub.digits(x);
    elt img = 0;
    for (unsigned i = 0; i < sub.k_; ++i) img = add(img, mul(d[i] % p_, e->alpha_pow[i]));
    e->back[img] = x;
  }
  auto& slot = emb_[&sub];
  slot = std::move(e);
  return *slot;
}

Field::elt Field::embed(const Field& sub, elt a) const {
  if (&sub == this) return a;
  const auto& e = embedding(sub);
  auto d = sub.digits(a);
  elt img = 0;
  for (unsigned i = 0; i < sub.k_; ++i) img = add(img, mul(d[i] % p_, e.alpha_pow[i]));
  return img;
}

bool Field::in_subfield(const Field& sub, elt a) const {
  if (&sub == this) return true;
  return embedding(sub).back.count(a) > 0;
}

Field::elt Field::retract(const Field& sub, elt a) const {
  if (&sub == this) return a;
  const auto& e = embedding(sub);
  auto it = e.back.find(a);
  if (it == e.back.end()) fail(errc::spec_mismatch, "element not in subfield");
  return it->second;
}

const char* errc_name(errc k) {
  switch (k) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::not_a_square: return "NotASquare";
    case errc::spec_mismatch: return "SpecMismatch";
    case errc::inexact_division: return "InexactDivision";
    case errc::zero_form: return "ZeroForm";
    case errc::extension_too_large: return "ExtensionTooLarge";
    case errc::degenerate_form: return "DegenerateForm";
    case errc::inconsistent: return "Inconsistent";
    case errc::sampling_exhausted: return "SamplingExhausted";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_enough_interpolation_points: return "NotEnoughInterpolationPoints";
    case errc::constraint_on_discriminant: return "ConstraintOnDiscriminant";
    case errc::constraint_off_quadric: return "ConstraintOffQuadric";
    case errc::point_not_on_quadric: return "PointNotOnQuadric";
    case errc::singular_fiber: return "SingularFiber";
    case errc::fiber_mismatch: return "FiberMismatch";
    case errc::no_rational_fiber_point: return "NoRationalFiberPoint";
    case errc::line_not_isotropic: return "LineNotIsotropic";
    case errc::no_graded_automorphism: return "NoGradedAutomorphism";
    case errc::section_not_on_input: return "SectionNotOnInput";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_top_dimensional: return "NotTopDimensional";
    case errc::malformed_input: return "MalformedInput";
    case errc::internal: return "InternalInvariantViolation";
  }
  return "UnknownError";
}

}  // namespace quadrifold
