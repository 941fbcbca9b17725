#include "quadrifold/section_search.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quadrifold/linalg.hpp"

namespace quadrifold {

namespace {

using elt = Field::elt;

struct CoeffLayout {
  int f;
  std::array<int, 4> n;  // coefficients per component, 0 when f < d_i
  int total;
};

CoeffLayout layout_for(const Fibration& fib, int f) {
  CoeffLayout L;
  L.f = f;
  L.total = 0;
  for (int i = 0; i < 4; ++i) {
    L.n[i] = std::max(0, f - fib.d[i] + 1);
    L.total += L.n[i];
  }
  return L;
}

Section section_from_coeffs(const Fibration& fib, const CoeffLayout& L, const Vec& c) {
  Section sec;
  sec.f = L.f;
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    std::vector<elt> block(c.begin() + pos, c.begin() + pos + L.n[i]);
    pos += L.n[i];
    sec.s[i] = L.n[i] == 0 ? BinaryForm::zero(fib.field())
                           : BinaryForm::make(fib.field(), std::move(block));
  }
  return sec;
}

// Projected candidate count q^t, saturating.
long double pow_ld(long double q, int t) {
  long double r = 1;
  for (int i = 0; i < t; ++i) {
    r *= q;
    if (r > 1e30L) return 1e30L;
  }
  return r;
}

void finalize(std::vector<Section>& v) {
  std::sort(v.begin(), v.end(), section_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Examine a full candidate tuple: verify, canonicalize, route to out/broken.
void consider_candidate(const Fibration& fib, Section sec, std::vector<Section>& out,
                        std::vector<Section>* broken) {
  bool any = false;
  for (const auto& si : sec.s) any = any || !si.is_zero();
  if (!any) return;
  if (!section_residual(fib, sec).is_zero()) return;
  canonicalize_scaling(sec);
  if (section_saturated(sec)) {
    out.push_back(std::move(sec));
  } else if (broken) {
    broken->push_back(std::move(sec));
  }
}

}  // namespace

bool height_parity_feasible(const Fibration& fib, int h) {
  return ((h + fib.sum_d() + fib.e) % 2 + 2) % 2 == 0;
}

std::optional<int> twist_for_height(const Fibration& fib, int h) {
  if (!height_parity_feasible(fib, h)) return std::nullopt;
  return (h + fib.sum_d() + fib.e) / 2;
}

EnumResult enumerate_sections_reference(const Fibration& fib, int h, long long budget,
                                        bool include_broken) {
  EnumResult res;
  res.strategy = "reference";
  auto f_opt = twist_for_height(fib, h);
  if (!f_opt) return res;
  CoeffLayout L = layout_for(fib, *f_opt);
  if (L.total == 0 || *f_opt < 0) return res;
  const Field& F = fib.field();
  long double q = static_cast<long double>(F.order());
  long double projected = (pow_ld(q, L.total) - 1) / (q - 1);
  if (projected > static_cast<long double>(budget))
    fail(errc::budget_exceeded,
         "reference enumeration needs a budget of " + std::to_string((long long)projected));
  // Canonical representatives: first nonzero coefficient equal to 1.
  Vec c(L.total, 0);
  for (int lead = 0; lead < L.total; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = F.one();
    int free_from = lead + 1;
    long long combos = 1;
    for (int i = free_from; i < L.total; ++i) combos *= static_cast<long long>(F.order());
    for (long long n = 0; n < combos; ++n) {
      long long t = n;
      for (int i = free_from; i < L.total; ++i) {
        c[i] = static_cast<elt>(t % F.order());
        t /= F.order();
      }
      ++res.examined;
      consider_candidate(fib, section_from_coeffs(fib, L, c), res.sections,
                         include_broken ? &res.broken : nullptr);
    }
  }
  finalize(res.sections);
  finalize(res.broken);
  return res;
}

namespace {

// Solve A x^2 + B x + C = 0 for a form x of degree exactly want_deg (or zero);
// appends every solution.  A, B, C are forms (possibly zero).
void solve_component_quadratic(const Field& F, const BinaryForm& A, const BinaryForm& B,
                               const BinaryForm& C, int want_deg,
                               std::vector<BinaryForm>& out) {
  auto push = [&](const BinaryForm& x) {
    if (x.is_zero() || x.degree() == want_deg) out.push_back(x);
  };
  if (want_deg < 0) {
    if (C.is_zero()) out.push_back(BinaryForm::zero(F));
    return;
  }
  if (A.is_zero()) {
    if (B.is_zero()) {
      if (C.is_zero()) {
        // x unconstrained; the caller enumerates this block directly.
        fail(errc::internal, "degenerate quadratic reached the closed-form path");
      }
      return;
    }
    if (C.is_zero()) {
      out.push_back(BinaryForm::zero(F));
      return;
    }
    try {
      push(divide_exact(C, B).scaled(F.neg(F.one())));
    } catch (const error& e) {
      if (e.kind() != errc::inexact_division) throw;
    }
    return;
  }
  BinaryForm two_a = A.scaled(F.from_int(2));
  BinaryForm b2 = B * B;
  BinaryForm four_ac = (A * C).scaled(F.from_int(4));
  BinaryForm disc =
      b2.is_zero() ? (four_ac.is_zero() ? BinaryForm::zero(F) : four_ac.scaled(F.neg(F.one())))
                   : (four_ac.is_zero() ? b2 : b2 - four_ac);
  auto try_quotient = [&](const BinaryForm& num) {
    if (num.is_zero()) {
      out.push_back(BinaryForm::zero(F));
      return;
    }
    try {
      push(divide_exact(num, two_a));
    } catch (const error& e) {
      if (e.kind() != errc::inexact_division) throw;
    }
  };
  BinaryForm neg_b = B.is_zero() ? BinaryForm::zero(F) : B.scaled(F.neg(F.one()));
  if (disc.is_zero()) {
    try_quotient(neg_b);
    return;
  }
  auto root = form_sqrt(disc);
  if (!root) return;
  BinaryForm r = *root;
  BinaryForm plus = neg_b.is_zero() ? r : neg_b + r;
  BinaryForm minus = neg_b.is_zero() ? r.scaled(F.neg(F.one())) : neg_b - r;
  try_quotient(plus);
  if (!(plus == minus)) try_quotient(minus);
}

}  // namespace

EnumResult enumerate_sections_direct(const Fibration& fib, int h, const SearchOptions& opts) {
  EnumResult res;
  res.strategy = "direct";
  auto f_opt = twist_for_height(fib, h);
  if (!f_opt) return res;
  int f = *f_opt;
  CoeffLayout L = layout_for(fib, f);
  if (L.total == 0 || f < 0) return res;
  const Field& F = fib.field();
  const long long q = static_cast<long long>(F.order());

  // Solve the identity for the component with the most coefficients.
  int solve_i = 0;
  for (int i = 0; i < 4; ++i)
    if (L.n[i] >= L.n[solve_i]) solve_i = i;
  std::vector<int> prefix_idx;
  int prefix_total = 0;
  for (int i = 0; i < 4; ++i)
    if (i != solve_i) {
      prefix_idx.push_back(i);
      prefix_total += L.n[i];
    }
  long double projected = pow_ld(static_cast<long double>(q), prefix_total);
  if (projected > static_cast<long double>(opts.budget))
    fail(errc::budget_exceeded,
         "direct enumeration needs a budget of " + std::to_string((long long)projected));
  long long prefixes = static_cast<long long>(projected);

  std::vector<std::vector<Section>> out_tls, broken_tls;
  long long examined = 0;

#pragma omp parallel if (opts.parallel)
  {
#pragma omp single
    {
#ifdef _OPENMP
      int tcount = opts.parallel ? omp_get_num_threads() : 1;
#else
      int tcount = 1;
#endif
      out_tls.resize(tcount);
      broken_tls.resize(tcount);
    }
#pragma omp barrier
#ifdef _OPENMP
    int tid = omp_get_thread_num();
#else
    int tid = 0;
#endif
    std::vector<Section> local_out, local_broken;
#pragma omp for schedule(dynamic, 64) reduction(+ : examined)
    for (long long n = 0; n < prefixes; ++n) {
      long long t = n;
      Section sec;
      sec.f = f;
      for (int i : prefix_idx) {
        std::vector<elt> block(L.n[i]);
        for (int j = 0; j < L.n[i]; ++j) {
          block[j] = static_cast<elt>(t % q);
          t /= q;
        }
        sec.s[i] = L.n[i] == 0 ? BinaryForm::zero(F) : BinaryForm::make(F, std::move(block));
      }
      ++examined;
      // Quadratic in the solved component: A x^2 + B x + C.
      const BinaryForm& A = fib.gram[solve_i][solve_i];
      BinaryForm B = BinaryForm::zero(F);
      BinaryForm C = BinaryForm::zero(F);
      for (int j = 0; j < 4; ++j) {
        if (j == solve_i || sec.s[j].is_zero() || fib.gram[solve_i][j].is_zero()) continue;
        BinaryForm term = fib.gram[solve_i][j] * sec.s[j];
        B = B.is_zero() ? term : B + term;
      }
      if (!B.is_zero()) B = B.scaled(F.from_int(2));
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          if (j == solve_i || l == solve_i) continue;
          if (sec.s[j].is_zero() || sec.s[l].is_zero() || fib.gram[j][l].is_zero()) continue;
          BinaryForm term = fib.gram[j][l] * sec.s[j] * sec.s[l];
          C = C.is_zero() ? term : C + term;
        }
      int want = f - fib.d[solve_i];
      if (A.is_zero() && B.is_zero() && C.is_zero()) {
        // Degenerate: the solved component is unconstrained.
        long long combos = 1;
        for (int j = 0; j < L.n[solve_i]; ++j) combos *= q;
        for (long long v = 0; v < combos; ++v) {
          long long tt = v;
          std::vector<elt> block(L.n[solve_i]);
          for (int j = 0; j < L.n[solve_i]; ++j) {
            block[j] = static_cast<elt>(tt % q);
            tt /= q;
          }
          Section cand = sec;
          cand.s[solve_i] =
              L.n[solve_i] == 0 ? BinaryForm::zero(F) : BinaryForm::make(F, std::move(block));
          ++examined;
          consider_candidate(fib, std::move(cand), local_out,
                             opts.include_broken ? &local_broken : nullptr);
        }
      } else {
        std::vector<BinaryForm> solutions;
        solve_component_quadratic(F, A, B, C, want, solutions);
        for (auto& x : solutions) {
          Section cand = sec;
          cand.s[solve_i] = std::move(x);
          consider_candidate(fib, std::move(cand), local_out,
                             opts.include_broken ? &local_broken : nullptr);
        }
      }
    }
    out_tls[tid] = std::move(local_out);
    broken_tls[tid] = std::move(local_broken);
  }
  for (auto& v : out_tls)
    res.sections.insert(res.sections.end(), std::make_move_iterator(v.begin()),
                        std::make_move_iterator(v.end()));
  for (auto& v : broken_tls)
    res.broken.insert(res.broken.end(), std::make_move_iterator(v.begin()),
                      std::make_move_iterator(v.end()));
  res.examined = examined;
  finalize(res.sections);
  finalize(res.broken);
  return res;
}

namespace {

// Normalized projective points of the fiber quadric over K.
std::vector<std::array<elt, 4>> fiber_quadric_points(const Field& K,
                                                     const std::array<std::array<elt, 4>, 4>& g) {
  std::vector<std::array<elt, 4>> pts;
  const elt q = static_cast<elt>(K.order());
  auto on_quadric = [&](const std::array<elt, 4>& x) {
    elt acc = 0;
    for (int i = 0; i < 4; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (x[j] == 0 || g[i][j] == 0) continue;
        acc = K.add(acc, K.mul(g[i][j], K.mul(x[i], x[j])));
      }
    }
    return acc == 0;
  };
  // Representatives with first nonzero coordinate 1.
  for (int lead = 0; lead < 4; ++lead) {
    int free_n = 3 - lead;
    std::uint64_t combos = 1;
    for (int i = 0; i < free_n; ++i) combos *= q;
    for (std::uint64_t n = 0; n < combos; ++n) {
      std::array<elt, 4> x{};
      x[lead] = K.one();
      std::uint64_t t = n;
      for (int i = lead + 1; i < 4; ++i) {
        x[i] = static_cast<elt>(t % q);
        t /= q;
      }
      if (on_quadric(x)) pts.push_back(x);
    }
  }
  return pts;
}

}  // namespace

EnumResult enumerate_sections_interpolation(const Fibration& fib, int h,
                                            const SearchOptions& opts) {
  EnumResult res;
  res.strategy = "interpolation";
  auto f_opt = twist_for_height(fib, h);
  if (!f_opt) return res;
  int f = *f_opt;
  CoeffLayout L = layout_for(fib, f);
  if (L.total == 0 || f < 0) return res;
  const Field& F = fib.field();
  BinaryForm disc = discriminant(fib);

  // Pick the first f+1 points [1:t] off the discriminant, extending the
  // field when P^1(F_q) has too few.
  const Field* Kp = nullptr;
  std::vector<elt> ts;
  for (unsigned m = 1;; ++m) {
    if (pow_ld(static_cast<long double>(F.order()), static_cast<int>(m)) > 1e6L)
      fail(errc::not_enough_interpolation_points,
           "cannot collect enough off-discriminant points within the field cap");
    const Field& K = F.extension(m);
    BinaryForm disc_k = disc.embedded(K);
    ts.clear();
    for (elt t = 0; t < K.order() && ts.size() < static_cast<std::size_t>(f) + 1; ++t)
      if (disc_k.evaluate(K.one(), t) != 0) ts.push_back(t);
    if (ts.size() == static_cast<std::size_t>(f) + 1) {
      Kp = &K;
      break;
    }
  }
  const Field& K = *Kp;
  const elt qk = static_cast<elt>(K.order());

  // Candidate fiber points per interpolation node.
  std::vector<std::vector<std::array<elt, 4>>> nodes(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    FiberData fd = fiber_at(fib, ProjPoint1(K, K.one(), ts[j]));
    if (fd.rank != 4) fail(errc::internal, "off-discriminant fiber is singular");
    nodes[j] = fiber_quadric_points(K, fd.g);
  }
  long double projected = 1;
  for (const auto& nd : nodes) projected *= static_cast<long double>(nd.size());
  projected *= pow_ld(static_cast<long double>(qk - 1), f);
  if (projected > static_cast<long double>(opts.budget))
    fail(errc::budget_exceeded,
         "interpolation enumeration needs a budget of " + std::to_string((long long)projected));
  long long combos = static_cast<long long>(projected);

  // Lagrange interpolation through (ts[j], y_j) for polynomials of degree <= f
  // in t; coefficient index = power of t = power of v in the form encoding.
  std::size_t npts = ts.size();
  std::vector<std::vector<elt>> lagrange(npts);  // basis polynomial coefficients
  for (std::size_t j = 0; j < npts; ++j) {
    std::vector<elt> poly{K.one()};  // product of (t - ts[l]) / (ts[j] - ts[l])
    elt denom = K.one();
    for (std::size_t l = 0; l < npts; ++l) {
      if (l == j) continue;
      std::vector<elt> next(poly.size() + 1, 0);
      for (std::size_t a = 0; a < poly.size(); ++a) {
        next[a + 1] = K.add(next[a + 1], poly[a]);                       // * t
        next[a] = K.add(next[a], K.mul(poly[a], K.neg(ts[l])));          // * (-t_l)
      }
      poly = std::move(next);
      denom = K.mul(denom, K.sub(ts[j], ts[l]));
    }
    elt dinv = K.inv(denom);
    for (auto& c : poly) c = K.mul(c, dinv);
    poly.resize(npts, 0);
    lagrange[j] = std::move(poly);
  }

  std::vector<std::vector<Section>> out_tls, broken_tls;
  long long examined = 0;

#pragma omp parallel if (opts.parallel)
  {
#pragma omp single
    {
#ifdef _OPENMP
      int tcount = opts.parallel ? omp_get_num_threads() : 1;
#else
      int tcount = 1;
#endif
      out_tls.resize(tcount);
      broken_tls.resize(tcount);
    }
#pragma omp barrier
#ifdef _OPENMP
    int tid = omp_get_thread_num();
#else
    int tid = 0;
#endif
    std::vector<Section> local_out, local_broken;
#pragma omp for schedule(dynamic, 16) reduction(+ : examined)
    for (long long n = 0; n < combos; ++n) {
      long long t = n;
      std::vector<std::array<elt, 4>> values(npts);
      bool ok = true;
      for (std::size_t j = 0; j < npts; ++j) {
        long long pick = t % static_cast<long long>(nodes[j].size());
        t /= static_cast<long long>(nodes[j].size());
        values[j] = nodes[j][pick];
      }
      // Affine scales: lambda_0 = 1, the rest range over K^*.
      std::vector<elt> lambda(npts, K.one());
      for (int s = 0; s < f; ++s) {
        elt lam = static_cast<elt>(1 + t % static_cast<long long>(qk - 1));
        t /= static_cast<long long>(qk - 1);
        lambda[s + 1] = lam;
      }
      ++examined;
      for (std::size_t j = 0; j < npts; ++j)
        for (int i = 0; i < 4; ++i) values[j][i] = K.mul(values[j][i], lambda[j]);
      // Interpolate each component in K, check the degree pattern.
      Section cand;
      cand.f = f;
      for (int i = 0; i < 4 && ok; ++i) {
        std::vector<elt> poly(npts, 0);  // coefficient of t^a
        for (std::size_t j = 0; j < npts; ++j) {
          if (values[j][i] == 0) continue;
          for (std::size_t a = 0; a < npts; ++a)
            poly[a] = K.add(poly[a], K.mul(values[j][i], lagrange[j][a]));
        }
        int want = f - fib.d[i];
        for (std::size_t a = want < 0 ? 0 : static_cast<std::size_t>(want) + 1; a < npts; ++a)
          if (poly[a] != 0) {
            ok = false;
            break;
          }
        if (!ok) break;
        if (want < 0) {
          cand.s[i] = BinaryForm::zero(K);
        } else {
          // Form coefficients descending in u: index b = power of v = power of t.
          std::vector<elt> coeffs(want + 1);
          for (int b = 0; b <= want; ++b) coeffs[b] = poly[b];
          cand.s[i] = BinaryForm::make(K, std::move(coeffs));
        }
      }
      if (!ok) continue;
      canonicalize_scaling(cand);
      bool rational = true;
      for (const auto& si : cand.s)
        if (!si.is_zero() && !si.coeffs_in_subfield(F)) {
          rational = false;
          break;
        }
      if (!rational) continue;
      Section base;
      base.f = f;
      for (int i = 0; i < 4; ++i)
        base.s[i] = cand.s[i].is_zero() ? BinaryForm::zero(F) : cand.s[i].retracted(F);
      // Re-pad components to the graded length (interpolation can undershoot).
      bool pattern_ok = true;
      for (int i = 0; i < 4; ++i) {
        if (base.s[i].is_zero()) continue;
        int want = f - fib.d[i];
        if (base.s[i].degree() < want) {
          std::vector<elt> padded(want - base.s[i].degree(), 0);
          padded.insert(padded.end(), base.s[i].coeffs().begin(), base.s[i].coeffs().end());
          base.s[i] = BinaryForm::make(F, std::move(padded));
        } else if (base.s[i].degree() > want) {
          pattern_ok = false;
        }
      }
      if (!pattern_ok) continue;
      consider_candidate(fib, std::move(base), local_out,
                         opts.include_broken ? &local_broken : nullptr);
    }
    out_tls[tid] = std::move(local_out);
    broken_tls[tid] = std::move(local_broken);
  }
  for (auto& v : out_tls)
    res.sections.insert(res.sections.end(), std::make_move_iterator(v.begin()),
                        std::make_move_iterator(v.end()));
  for (auto& v : broken_tls)
    res.broken.insert(res.broken.end(), std::make_move_iterator(v.begin()),
                      std::make_move_iterator(v.end()));
  res.examined = examined;
  finalize(res.sections);
  finalize(res.broken);
  return res;
}

EnumResult enumerate_sections(const Fibration& fib, int h, const SearchOptions& opts) {
  try {
    return enumerate_sections_direct(fib, h, opts);
  } catch (const error& e) {
    if (e.kind() != errc::budget_exceeded) throw;
  }
  return enumerate_sections_interpolation(fib, h, opts);
}

std::optional<MinHeightResult> min_height_section(const Fibration& fib, int h_max,
                                                  const SearchOptions& opts) {
  FibrationInvariants inv = invariants(fib);
  if (inv.delta <= 0) fail(errc::spec_mismatch, "min_height_section requires Delta > 0");
  if (!has_squarefree_discriminant(fib))
    fail(errc::spec_mismatch, "min_height_section requires a square-free discriminant");
  int min_d = *std::min_element(fib.d.begin(), fib.d.end());
  int h_start = -fib.sum_d() + 2 * min_d - fib.e;
  for (int h = h_start; h <= h_max; h += 2) {
    EnumResult r = enumerate_sections(fib, h, opts);
    if (!r.sections.empty()) {
      MinHeightResult out;
      out.h = h;
      out.sec = r.sections.front();
      out.bound = inv.delta / 2 - 2 - fib.e;
      out.bound_satisfied = h <= out.bound;
      return out;
    }
  }
  return std::nullopt;
}

namespace {

// F-linear rows expressing one K-valued linear functional on the coefficient
// vector, where K is the base field or its quadratic extension over a prime
// base.  kf[c] is the K coefficient of unknown c.
void append_rows(const Fibration& fib, const Field& K, const std::vector<elt>& kf, Mat& rows) {
  const Field& F = fib.field();
  if (&K == &F) {
    rows.push_back(Vec(kf.begin(), kf.end()));
    return;
  }
  if (F.k() != 1)
    fail(errc::spec_mismatch,
         "extension-field constraints are supported over prime base fields only");
  unsigned deg = K.k();  // = 2 for quadratic constraints
  std::vector<Vec> split(deg, Vec(kf.size(), 0));
  for (std::size_t c = 0; c < kf.size(); ++c) {
    auto d = K.digits(kf[c]);
    for (unsigned a = 0; a < deg; ++a) split[a][c] = d[a];
  }
  for (auto& r : split) rows.push_back(std::move(r));
}

}  // namespace

std::optional<WeakApproxResult> weak_approx_search(const Fibration& fib,
                                                   const std::vector<PointConstraint>& constraints,
                                                   int h_max, const SearchOptions& opts) {
  const Field& F = fib.field();
  FibrationInvariants inv = invariants(fib);
  BinaryForm disc = discriminant(fib);
  // Validate constraints.
  for (std::size_t a = 0; a < constraints.size(); ++a) {
    const auto& con = constraints[a];
    const Field& K = *con.b.F;
    if (K.p() != F.p() || (K.k() != F.k() && !(F.k() == 1 && K.k() == 2)))
      fail(errc::spec_mismatch, "constraint field must be the base or its quadratic extension");
    if (disc.embedded(K).evaluate(con.b.u, con.b.v) == 0)
      fail(errc::constraint_on_discriminant, "constraint point lies on the discriminant");
    FiberData fd = fiber_at(fib, con.b);
    elt acc = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc = K.add(acc, K.mul(fd.g[i][j], K.mul(con.x[i], con.x[j])));
    if (acc != 0) fail(errc::constraint_off_quadric, "constraint point is not on the fiber quadric");
    bool nonzero = false;
    for (auto xi : con.x) nonzero = nonzero || xi != 0;
    if (!nonzero) fail(errc::spec_mismatch, "constraint with zero fiber point");
    for (std::size_t bidx = 0; bidx < a; ++bidx)
      if (constraints[bidx].b == con.b) fail(errc::spec_mismatch, "duplicate constraint points");
  }
  int N = static_cast<int>(constraints.size());
  if (h_max < 0) h_max = (3 * inv.delta) / 2 + 2 * N;
  if (constraints.empty()) {
    auto r = min_height_section(fib, h_max, opts);
    if (!r) return std::nullopt;
    return WeakApproxResult{r->h, r->sec};
  }

  int min_d = *std::min_element(fib.d.begin(), fib.d.end());
  int h_start = -fib.sum_d() + 2 * min_d - fib.e;
  const long long q = static_cast<long long>(F.order());
  for (int h = h_start; h <= h_max; h += 2) {
    auto f_opt = twist_for_height(fib, h);
    if (!f_opt || *f_opt < 0) continue;
    int f = *f_opt;
    CoeffLayout L = layout_for(fib, f);
    if (L.total == 0) continue;
    // Linear conditions sigma(b) parallel to x: x_{i0} s_i(b) - x_i s_{i0}(b) = 0.
    Mat rows;
    for (const auto& con : constraints) {
      const Field& K = *con.b.F;
      int i0 = 0;
      while (con.x[i0] == 0) ++i0;
      // K-coefficients of s_i(b) in the unknowns: block i, coefficient a
      // contributes u^{(f-d_i)-a} v^a evaluated at b.
      auto eval_coeffs = [&](int i) {
        std::vector<elt> kf(L.total, 0);
        int offset = 0;
        for (int l = 0; l < i; ++l) offset += L.n[l];
        int deg = f - fib.d[i];
        for (int a = 0; a < L.n[i]; ++a) {
          elt up = K.one(), vp = K.one();
          for (int s = 0; s < deg - a; ++s) up = K.mul(up, con.b.u);
          for (int s = 0; s < a; ++s) vp = K.mul(vp, con.b.v);
          kf[offset + a] = K.mul(up, vp);
        }
        return kf;
      };
      std::vector<std::vector<elt>> svals(4);
      for (int i = 0; i < 4; ++i) svals[i] = eval_coeffs(i);
      for (int i = 0; i < 4; ++i) {
        if (i == i0) continue;
        std::vector<elt> kf(L.total, 0);
        for (int c = 0; c < L.total; ++c)
          kf[c] = K.sub(K.mul(con.x[i0], svals[i][c]), K.mul(con.x[i], svals[i0][c]));
        append_rows(fib, K, kf, rows);
      }
    }
    Mat basis = kernel_basis(F, rows, L.total);
    int D = static_cast<int>(basis.size());
    if (D == 0) continue;
    long double projected = (pow_ld(static_cast<long double>(q), D) - 1) / (q - 1);
    if (projected > static_cast<long double>(opts.budget))
      fail(errc::budget_exceeded,
           "constrained enumeration needs a budget of " + std::to_string((long long)projected));
    std::vector<Section> hits;
    // Projective representatives of the solution space.
    for (int lead = 0; lead < D; ++lead) {
      long long combos = 1;
      for (int i = lead + 1; i < D; ++i) combos *= q;
      for (long long n = 0; n < combos; ++n) {
        Vec alpha(D, 0);
        alpha[lead] = F.one();
        long long t = n;
        for (int i = lead + 1; i < D; ++i) {
          alpha[i] = static_cast<elt>(t % q);
          t /= q;
        }
        Vec c(L.total, 0);
        for (int i = 0; i < D; ++i) {
          if (alpha[i] == 0) continue;
          for (int j = 0; j < L.total; ++j) c[j] = F.add(c[j], F.mul(alpha[i], basis[i][j]));
        }
        Section cand = section_from_coeffs(fib, L, c);
        std::vector<Section> sink;
        consider_candidate(fib, std::move(cand), sink, nullptr);
        for (auto& s : sink) {
          // Constraints must hold literally (nonzero value parallel to x).
          bool all_ok = true;
          for (const auto& con : constraints) {
            auto val = section_value(fib, s, con.b);
            const Field& K = *con.b.F;
            bool nz = false;
            for (auto v : val) nz = nz || v != 0;
            if (!nz) {
              all_ok = false;
              break;
            }
            // Normalized comparison.
            int lead_i = 0;
            while (val[lead_i] == 0) ++lead_i;
            elt sc = K.inv(val[lead_i]);
            int leadx = 0;
            while (con.x[leadx] == 0) ++leadx;
            elt scx = K.inv(con.x[leadx]);
            for (int i = 0; i < 4 && all_ok; ++i)
              if (K.mul(val[i], sc) != K.mul(con.x[i], scx)) all_ok = false;
            if (!all_ok) break;
          }
          if (all_ok) hits.push_back(std::move(s));
        }
      }
    }
    if (!hits.empty()) {
      finalize(hits);
      return WeakApproxResult{h, hits.front()};
    }
  }
  return std::nullopt;
}

StabilityReport check_stability_hypothesis(const Fibration& fib, const SearchOptions& opts) {
  FibrationInvariants inv = invariants(fib);
  if (inv.delta <= 0) fail(errc::spec_mismatch, "stability check requires Delta > 0");
  if (!has_squarefree_discriminant(fib))
    fail(errc::spec_mismatch, "stability check requires a square-free discriminant");
  StabilityReport rep;
  rep.delta = inv.delta;
  int min_d = *std::min_element(fib.d.begin(), fib.d.end());
  int h_start = -fib.sum_d() + 2 * min_d - fib.e;
  // Heights strictly below -Delta/2 (Delta is even).
  int h_below = -inv.delta / 2 - 1;
  rep.scan_from = h_start;
  rep.scan_to = h_below;
  for (int h = h_start; h <= h_below; ++h) {
    if (!height_parity_feasible(fib, h)) continue;
    EnumResult r = enumerate_sections(fib, h, opts);
    for (const auto& s : r.sections) rep.offenders.emplace_back(h, s);
  }
  rep.hypothesis_holds = rep.offenders.empty();
  rep.note = rep.hypothesis_holds
                 ? "all sections satisfy h >= -Delta/2; with a nontrivial discriminant cover the "
                   "Fano variety of lines is the projectivization of a semistable bundle"
                 : "sections of height below -Delta/2 exist; semistability is not guaranteed";
  return rep;
}

std::map<int, long long> count_by_height(const Fibration& fib, int h_min, int h_max,
                                         const SearchOptions& opts) {
  std::map<int, long long> counts;
  for (int h = h_min; h <= h_max; ++h) {
    if (!height_parity_feasible(fib, h)) {
      counts[h] = 0;
      continue;
    }
    counts[h] = static_cast<long long>(enumerate_sections(fib, h, opts).sections.size());
  }
  return counts;
}

}  // namespace quadrifold
