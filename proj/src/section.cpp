#include "quadrifold/section.hpp"

namespace quadrifold {

int section_height(const Fibration& fib, const Section& sec) {
  return -fib.sum_d() + 2 * sec.f - fib.e;
}

BinaryForm section_residual(const Fibration& fib, const Section& sec) {
  const Field& F = fib.field();
  BinaryForm acc = BinaryForm::zero(F);
  bool set = false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (fib.gram[i][j].is_zero() || sec.s[i].is_zero() || sec.s[j].is_zero()) continue;
      BinaryForm term = fib.gram[i][j] * sec.s[i] * sec.s[j];
      if (!set) {
        acc = term;
        set = true;
      } else {
        acc = acc + term;
      }
    }
  return acc;
}

bool section_saturated(const Section& sec) {
  const BinaryForm* g = nullptr;
  BinaryForm acc;
  for (const auto& si : sec.s) {
    if (si.is_zero()) continue;
    if (!g) {
      acc = si.monic();
      g = &acc;
    } else {
      acc = form_gcd(acc, si);
    }
    if (acc.degree() == 0) return true;
  }
  if (!g) return false;  // no nonzero component at all
  return acc.degree() == 0;
}

void canonicalize_scaling(Section& sec) {
  const Field* F = nullptr;
  Field::elt lead = 0;
  for (const auto& si : sec.s) {
    if (si.is_zero()) continue;
    F = &si.field();
    for (Field::elt c : si.coeffs())
      if (c != 0) {
        lead = c;
        break;
      }
    if (lead != 0) break;
  }
  if (!F || lead == 0) return;
  Field::elt inv = F->inv(lead);
  for (auto& si : sec.s)
    if (!si.is_zero()) si = si.scaled(inv);
}

bool check_section(const Fibration& fib, const Section& sec, std::string* why,
                   bool require_saturated) {
  auto reject = [&](const std::string& r) {
    if (why) *why = r;
    return false;
  };
  bool any = false;
  for (int i = 0; i < 4; ++i) {
    const BinaryForm& si = sec.s[i];
    int want = sec.f - fib.d[i];
    if (si.is_zero()) {
      continue;
    }
    any = true;
    if (&si.field() != &fib.field()) return reject("component over the wrong field");
    if (want < 0) return reject("nonzero component where f < d_i");
    if (si.degree() != want)
      return reject("component " + std::to_string(i + 1) + " has wrong degree");
  }
  if (!any) return reject("all components zero");
  if (!section_residual(fib, sec).is_zero()) return reject("quadratic identity fails");
  if (require_saturated && !section_saturated(sec)) return reject("not saturated (broken section)");
  // Canonical scaling: first nonzero coefficient in scan order equals 1.
  for (const auto& si : sec.s) {
    if (si.is_zero()) continue;
    for (Field::elt c : si.coeffs()) {
      if (c == 0) continue;
      if (c != fib.field().one()) return reject("not canonically scaled");
      return true;
    }
  }
  return true;
}

std::array<Field::elt, 4> section_value(const Fibration& fib, const Section& sec,
                                        const ProjPoint1& b) {
  const Field& K = *b.F;
  std::array<Field::elt, 4> out{};
  for (int i = 0; i < 4; ++i) {
    if (sec.s[i].is_zero()) {
      out[i] = 0;
      continue;
    }
    out[i] = (&K == &fib.field()) ? sec.s[i].evaluate(b.u, b.v)
                                  : sec.s[i].embedded(K).evaluate(b.u, b.v);
  }
  return out;
}

bool section_less(const Section& a, const Section& b) {
  if (a.f != b.f) return a.f < b.f;
  for (int i = 0; i < 4; ++i) {
    if (a.s[i] == b.s[i]) continue;
    return a.s[i] < b.s[i];
  }
  return false;
}

}  // namespace quadrifold
