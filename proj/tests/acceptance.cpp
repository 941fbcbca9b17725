// Acceptance harness: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "quadrifold/chow.hpp"
#include "quadrifold/hecke.hpp"
#include "quadrifold/json_io.hpp"

using namespace quadrifold;

namespace {

int failures = 0;

void criterion(int num, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  std::printf("%s: criterion %d — %s%s%s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  if (!ok) ++failures;
}

BinaryForm bf(const Field& F, std::vector<Field::elt> c) { return BinaryForm::make(F, std::move(c)); }

Fibration diag4(const Field& F, std::vector<std::vector<Field::elt>> entries) {
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  for (int i = 0; i < 4; ++i) gram[i][i] = BinaryForm::make(F, entries[i]);
  return Fibration::make(F, {0, 0, 0, 0}, 1, gram);
}

Fibration f3_worked() {
  const Field& F = Field::get(3);
  return diag4(F, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
}

Fibration f5_worked() {
  const Field& F = Field::get(5);
  return diag4(F, {{1, 0}, {0, 1}, {1, 1}, {1, 3}});
}

Fibration hecke_worked() {
  const Field& F = Field::get(3);
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  gram[0][0] = gram[1][1] = gram[2][2] = gram[3][3] = bf(F, {1, 0});
  gram[0][2] = gram[2][0] = gram[1][3] = gram[3][1] = bf(F, {0, 1});
  return Fibration::make(F, {0, 0, 0, 0}, 1, gram);
}

std::vector<ProjPoint1> off_disc_points(const Fibration& fib, const Field& K) {
  BinaryForm disc = discriminant(fib).embedded(K);
  std::vector<ProjPoint1> pts;
  for (Field::elt t = 0; t < K.order(); ++t)
    if (disc.evaluate(K.one(), t) != 0) pts.emplace_back(K, K.one(), t);
  if (disc.evaluate(0, K.one()) != 0) pts.emplace_back(K, 0, K.one());
  return pts;
}

// Criterion 2 congruence table: (delta mod 8, genus mod 4) per case and
// parity of n.
std::pair<int, int> census_congruences(CensusCase c, int n) {
  bool odd = n % 2 != 0;
  switch (c) {
    case CensusCase::Case1: return odd ? std::pair{4, 1} : std::pair{0, 3};
    case CensusCase::Case2: return odd ? std::pair{6, 2} : std::pair{2, 0};
    case CensusCase::Case3: return odd ? std::pair{0, 3} : std::pair{4, 1};
    default:                return odd ? std::pair{2, 0} : std::pair{6, 2};
  }
}

}  // namespace

int main() {
  criterion(1, "symbolic height identity h = n^n * Delta for n = 1..4", [](std::string& d) {
    for (int n = 1; n <= 4; ++n) {
      HeightIdentityReport rep = verify_height_formula(n);
      std::int64_t nn = 1;
      for (int i = 0; i < n; ++i) nn *= n;
      if (!rep.holds || rep.n_pow_n != nn) {
        d = "identity fails at n = " + std::to_string(n);
        return false;
      }
    }
    return true;
  });

  criterion(2, "census congruences and square-free oracle, 20 samples per (case, n)",
            [](std::string& d) {
    for (CensusCase c : {CensusCase::Case1, CensusCase::Case2, CensusCase::Case3,
                         CensusCase::Case4})
      for (int n : {0, 1}) {
        auto [want_delta8, want_g4] = census_congruences(c, n);
        Rng master(2024);
        for (std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}}) {
          const Field& F = Field::get(p);
          for (int s = 0; s < 10; ++s) {
            Rng sub(master.below(std::uint64_t{1} << 62));
            CensusSample samp = sample_census(F, c, n, 2000, sub);
            FibrationInvariants inv = invariants(samp.fib);
            int g = inv.delta / 2 - 1;
            if (inv.census_case != c || inv.delta != 2 * g + 2 ||
                ((inv.delta % 8) + 8) % 8 != want_delta8 || ((g % 4) + 4) % 4 != want_g4 ||
                inv.epsilon != n % 2) {
              d = std::string("congruence failure in ") + census_case_name(c) +
                  " n=" + std::to_string(n);
              return false;
            }
            // square-free <-> every discriminant root has a rank-3 fiber
            BinaryForm disc = discriminant(samp.fib);
            if (!is_squarefree(disc)) {
              d = "sampled discriminant is not square-free";
              return false;
            }
            for (const auto& root : projective_roots(disc, 2)) {
              if (root.multiplicity != 1 || fiber_at(samp.fib, root.point).rank != 3) {
                d = "fiber rank oracle disagrees with square-freeness";
                return false;
              }
            }
          }
        }
      }
    return true;
  });

  criterion(3, "worked F3 example: discriminant, invariants, sections, minimal height",
            [](std::string& d) {
    Fibration fib = f3_worked();
    const Field& F = fib.field();
    BinaryForm u = bf(F, {1, 0}), v = bf(F, {0, 1});
    if (!(discriminant(fib) == u * v * (u * u - v * v)) ||
        !has_squarefree_discriminant(fib)) {
      d = "discriminant mismatch";
      return false;
    }
    FibrationInvariants inv = invariants(fib);
    if (inv.delta != 4 || !inv.genus || *inv.genus != 1 || inv.epsilon != 1 ||
        inv.heightX != 16) {
      d = "invariant mismatch";
      return false;
    }
    SearchOptions opts;
    EnumResult r = enumerate_sections(fib, -1, opts);
    Section want;
    want.f = 0;
    want.s = {bf(F, {1}), BinaryForm::zero(F), bf(F, {1}), bf(F, {1})};
    bool found = false;
    for (const auto& s : r.sections) found = found || s == want;
    if (!found) {
      d = "section (1,0,1,1) not found at h = -1";
      return false;
    }
    auto mh = min_height_section(fib, 10, opts);
    if (!mh || mh->h != -1 || mh->bound != -1 || !mh->bound_satisfied) {
      d = "minimal height is not -1";
      return false;
    }
    return true;
  });

  criterion(4, "correspondence round trip on all worked sections at h <= 3",
            [](std::string& d) {
    for (const Fibration& fib : {f3_worked(), f5_worked()}) {
      const Field& F = fib.field();
      BinaryForm disc = discriminant(fib);
      std::vector<ProjPoint1> pts = off_disc_points(fib, F);
      auto ext = off_disc_points(fib, F.extension(2));
      pts.insert(pts.end(), ext.begin(), ext.end());
      // galois_swap_check agrees with the is_square criterion at every point
      for (const auto& b : pts) {
        const Field& K = *b.F;
        Field::elt dv = disc.embedded(K).evaluate(b.u, b.v);
        if (galois_swap_check(fib, b) != !K.is_square(dv)) {
          d = "galois swap check disagrees with is_square";
          return false;
        }
      }
      SearchOptions opts;
      for (int h : {-1, 1, 3}) {
        for (const Section& sec : enumerate_sections(fib, h, opts).sections) {
          for (const auto& b : pts) {
            const Field& K = *b.F;
            auto x = section_value(fib, sec, b);
            auto pair = lines_through_point(fib, b, x);
            auto meet = line_intersection(pair.first, pair.second);
            if (meet.kind != LineIntersection::Kind::Point) {
              d = "lines through sigma(b) do not meet in a point";
              return false;
            }
            // normalized sigma(b) over the splitting field
            const Field& L = *pair.first.K;
            std::array<Field::elt, 4> xe{};
            for (int i = 0; i < 4; ++i) xe[i] = (&L == &K) ? x[i] : L.embed(K, x[i]);
            Field::elt lead = 0;
            for (auto c : xe)
              if (c != 0) {
                lead = c;
                break;
              }
            Field::elt sc = L.inv(lead);
            for (int i = 0; i < 4; ++i) xe[i] = L.mul(xe[i], sc);
            if (meet.point != xe) {
              d = "intersection point differs from sigma(b)";
              return false;
            }
            if (ruling_of(pair.first, pair.second) != 1) {
              d = "the two lines do not carry opposite ruling labels";
              return false;
            }
          }
        }
      }
    }
    return true;
  });

  criterion(5, "existence bound met on 20 square-free samples per case", [](std::string& d) {
    for (CensusCase c : {CensusCase::Case1, CensusCase::Case2, CensusCase::Case3,
                         CensusCase::Case4}) {
      Rng master(777);
      for (std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}}) {
        const Field& F = Field::get(p);
        for (int s = 0; s < 10; ++s) {
          Rng sub(master.below(std::uint64_t{1} << 62));
          CensusSample samp = sample_census(F, c, 1, 2000, sub);  // n = 1: Delta > 0
          FibrationInvariants inv = invariants(samp.fib);
          int bound = inv.delta / 2 - 2 - samp.fib.e;
          SearchOptions opts;
          auto mh = min_height_section(samp.fib, bound, opts);
          if (!mh || mh->h > bound || !mh->bound_satisfied) {
            d = std::string("no section within the bound in ") + census_case_name(c) +
                " over F_" + std::to_string(p) + " (sample " + std::to_string(s) + ")";
            return false;
          }
        }
      }
    }
    return true;
  });

  criterion(6, "weak approximation through sigma([1:1]) = [1:2:0:0] on the F5 example",
            [](std::string& d) {
    Fibration fib = f5_worked();
    const Field& F = fib.field();
    PointConstraint con;
    con.b = ProjPoint1(F, 1, 1);
    con.x = {1, 2, 0, 0};
    SearchOptions opts;
    auto r = weak_approx_search(fib, {con}, -1, opts);
    if (!r || r->h > 8) {
      d = "no section within the (3/2)Delta + 2N bound";
      return false;
    }
    // frozen regression value from the first verified full-budget run
    if (r->h != 1) {
      d = "minimal constrained height drifted from the recorded value 1";
      return false;
    }
    auto val = section_value(fib, r->sec, con.b);
    Field::elt sc = F.inv(val[0]);
    for (int i = 0; i < 4; ++i)
      if (F.mul(val[i], sc) != con.x[i]) {
        d = "found section misses the prescribed fiber point";
        return false;
      }
    return true;
  });

  criterion(7, "elementary transform: worked surgery, height transport, double transform",
            [](std::string& d) {
    Fibration fib = hecke_worked();
    const Field& F = fib.field();
    ProjPoint1 p(F, 0, 1);
    LineInFiber l34;
    l34.b = p;
    l34.K = &F;
    l34.basis = {{{0, 0, 1, 0}, {0, 0, 0, 1}}};
    TransformReceipt rec = elementary_transform(fib, p, l34);
    GramMatrix want;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) want[i][j] = BinaryForm::zero(F);
    want[0][0] = want[1][1] = bf(F, {1, 0, 0});
    want[0][2] = want[2][0] = want[1][3] = want[3][1] = bf(F, {0, 1});
    want[2][2] = want[3][3] = bf(F, {1});
    FibrationInvariants a = invariants(fib), b = invariants(rec.output);
    if (!(rec.output.gram == want) || rec.output.d != std::array<int, 4>{1, 1, 0, 0} ||
        rec.output.e != 0 || b.delta != a.delta || b.epsilon != 1 - a.epsilon) {
      d = "worked surgery output mismatch";
      return false;
    }
    Field::elt du2 = F.mul(rec.det_u, rec.det_u);
    if (!(discriminant(rec.output) == discriminant(fib).scaled(du2))) {
      d = "discriminants differ by more than (det U)^2";
      return false;
    }
    // input sections at h <= 3 disjoint from the line move with height +1
    // (vacuous on this input, which has none; checked on a split companion
    // with the same machinery below)
    SearchOptions opts;
    for (int h : {-1, 1, 3})
      for (const Section& s : enumerate_sections(fib, h, opts).sections) {
        SectionTransform t = transform_section(rec, s);
        if (!t.incident && t.height_after != h + 1) {
          d = "disjoint section did not gain height 1";
          return false;
        }
      }
    {
      GramMatrix g2;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g2[i][j] = BinaryForm::zero(F);
      g2[0][3] = g2[3][0] = bf(F, {1, 0});
      g2[1][2] = g2[2][1] = bf(F, {0, 1});
      Fibration split = Fibration::make(F, {0, 0, 0, 0}, 1, g2);
      ProjPoint1 q(F, 1, 1);
      LineInFiber l12;
      l12.b = q;
      l12.K = &F;
      l12.basis = {{{1, 0, 0, 0}, {0, 1, 0, 0}}};
      TransformReceipt rs = elementary_transform(split, q, l12);
      for (int h : {-1, 1})
        for (const Section& s : enumerate_sections(split, h, opts).sections) {
          SectionTransform t = transform_section(rs, s);
          if (t.height_after != h + (t.incident ? -1 : 1)) {
            d = "transported height disagrees with the incidence case";
            return false;
          }
        }
    }
    // the inverse orientation restores (d, e) and the exact presentation
    LineInFiber l12p;
    l12p.b = p;
    l12p.K = &F;
    l12p.basis = {{{1, 0, 0, 0}, {0, 1, 0, 0}}};
    TransformReceipt back = elementary_transform(rec.output, p, l12p, true);
    if (back.output.d != fib.d || back.output.e != fib.e ||
        !(discriminant(back.output) == discriminant(fib))) {
      d = "double transform failed to restore (d, e, discriminant)";
      return false;
    }
    return true;
  });

  criterion(8, "height parity without exception; strict count growth", [](std::string& d) {
    SearchOptions opts;
    for (const Fibration& fib : {f3_worked(), f5_worked()}) {
      std::map<int, long long> counts;
      for (int h = -2; h <= 3; ++h) {
        EnumResult r = enumerate_sections(fib, h, opts);
        counts[h] = static_cast<long long>(r.sections.size());
        for (const Section& s : r.sections) {
          int hs = section_height(fib, s);
          if (hs != h || ((hs - fib.sum_d() - fib.e) % 2 + 2) % 2 != 0) {
            d = "achieved height violates h = -sum d + 2f - e parity";
            return false;
          }
        }
        if (!height_parity_feasible(fib, h) && counts[h] != 0) {
          d = "sections found in the infeasible parity class";
          return false;
        }
      }
      long long prev = -1;
      for (int h = -2; h <= 3; ++h) {
        if (!height_parity_feasible(fib, h)) continue;
        if (prev > 0 && counts[h] <= prev) {
          d = "count(h+2) <= count(h) at h = " + std::to_string(h);
          return false;
        }
        prev = counts[h];
      }
      if (prev <= 0) {
        d = "no growth window observed";
        return false;
      }
    }
    return true;
  });

  criterion(9, "direct and interpolation strategies agree on 6 configurations",
            [](std::string& d) {
    struct Cfg {
      Fibration fib;
      int h;
    };
    const Field& F3 = Field::get(3);
    GramMatrix g2;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g2[i][j] = BinaryForm::zero(F3);
    g2[0][3] = g2[3][0] = bf(F3, {1, 0});
    g2[1][2] = g2[2][1] = bf(F3, {0, 1});
    Fibration split = Fibration::make(F3, {0, 0, 0, 0}, 1, g2);
    std::vector<Cfg> cfgs = {{f3_worked(), -1}, {f3_worked(), 1}, {f5_worked(), -1},
                             {f5_worked(), 1},  {split, -1},      {split, 1}};
    for (const auto& cfg : cfgs) {
      SearchOptions opts;
      EnumResult a = enumerate_sections_direct(cfg.fib, cfg.h, opts);
      EnumResult b = enumerate_sections_interpolation(cfg.fib, cfg.h, opts);
      if (a.sections.size() != b.sections.size()) {
        d = "strategy section counts differ at h = " + std::to_string(cfg.h);
        return false;
      }
      for (std::size_t i = 0; i < a.sections.size(); ++i)
        if (!(a.sections[i] == b.sections[i])) {
          d = "strategy section sets differ at h = " + std::to_string(cfg.h);
          return false;
        }
    }
    return true;
  });

  return failures == 0 ? 0 : 1;
}
