#include "quadrifold/lines.hpp"

#include <algorithm>

#include "quadrifold/linalg.hpp"

namespace quadrifold {

namespace {

using elt = Field::elt;

elt quad_value(const Field& K, const std::array<std::array<elt, 4>, 4>& g,
               const std::array<elt, 4>& x, const std::array<elt, 4>& y) {
  elt acc = 0;
  for (int i = 0; i < 4; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (y[j] == 0 || g[i][j] == 0) continue;
      acc = K.add(acc, K.mul(g[i][j], K.mul(x[i], y[j])));
    }
  }
  return acc;
}

std::array<elt, 4> normalize_point(const Field& K, std::array<elt, 4> x) {
  elt lead = 0;
  for (elt c : x)
    if (c != 0) {
      lead = c;
      break;
    }
  if (lead == 0) return x;
  elt inv = K.inv(lead);
  for (auto& c : x) c = K.mul(c, inv);
  return x;
}

LineInFiber make_line(const Field& K, const ProjPoint1& b, const std::array<elt, 4>& x,
                      const std::array<elt, 4>& dir) {
  Mat m{Vec(x.begin(), x.end()), Vec(dir.begin(), dir.end())};
  if (rref(K, m) != 2) fail(errc::internal, "line basis is rank deficient");
  LineInFiber l;
  l.b = b;
  l.K = &K;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) l.basis[r][c] = m[r][c];
  return l;
}

// Intersection dimension of two planes = 4 - rank of the stacked bases.
int intersection_dim(const LineInFiber& l1, const LineInFiber& l2) {
  const Field& K = *l1.K;
  Mat m;
  for (const auto& r : l1.basis) m.push_back(Vec(r.begin(), r.end()));
  for (const auto& r : l2.basis) m.push_back(Vec(r.begin(), r.end()));
  return 4 - rank(K, m);
}

void require_same_fiber(const LineInFiber& l1, const LineInFiber& l2) {
  if (l1.K != l2.K || !(l1.b == l2.b)) fail(errc::fiber_mismatch, "lines live in different fibers");
}

// Normalized representatives of the quadric points of a fiber over K.
std::vector<std::array<elt, 4>> quadric_points(const Field& K,
                                               const std::array<std::array<elt, 4>, 4>& g) {
  std::vector<std::array<elt, 4>> pts;
  const elt q = static_cast<elt>(K.order());
  for (int lead = 0; lead < 4; ++lead) {
    std::uint64_t combos = 1;
    for (int i = lead + 1; i < 4; ++i) combos *= q;
    for (std::uint64_t n = 0; n < combos; ++n) {
      std::array<elt, 4> x{};
      x[lead] = K.one();
      std::uint64_t t = n;
      for (int i = lead + 1; i < 4; ++i) {
        x[i] = static_cast<elt>(t % q);
        t /= q;
      }
      if (quad_value(K, g, x, x) == 0) pts.push_back(x);
    }
  }
  return pts;
}

}  // namespace

bool line_less(const LineInFiber& a, const LineInFiber& b) {
  const Field& K = *a.K;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) {
      if (a.basis[r][c] == b.basis[r][c]) continue;
      return K.lex_less(a.basis[r][c], b.basis[r][c]);
    }
  return false;
}

std::pair<LineInFiber, LineInFiber> lines_through_point(const Fibration& fib, const ProjPoint1& b,
                                                        const std::array<Field::elt, 4>& x) {
  const Field& K0 = *b.F;
  FiberData fd = fiber_at(fib, b);
  if (fd.rank != 4) fail(errc::singular_fiber, "fiber is singular at b");
  bool nonzero = false;
  for (elt c : x) nonzero = nonzero || c != 0;
  if (!nonzero) fail(errc::point_not_on_quadric, "zero fiber point");
  if (quad_value(K0, fd.g, x, x) != 0)
    fail(errc::point_not_on_quadric, "point does not lie on the fiber quadric");

  // Tangent plane x^T G y = 0: a 3-dimensional space containing x.
  Vec row(4, 0);
  for (int j = 0; j < 4; ++j) {
    elt acc = 0;
    for (int i = 0; i < 4; ++i)
      if (x[i] != 0 && fd.g[i][j] != 0) acc = K0.add(acc, K0.mul(x[i], fd.g[i][j]));
    row[j] = acc;
  }
  Mat tangent = kernel_basis(K0, Mat{row}, 4);
  if (tangent.size() != 3) fail(errc::internal, "tangent plane is not 3-dimensional");
  // Complete x to a basis {x, w1, w2} of the tangent space.
  std::array<elt, 4> w1{}, w2{};
  bool found = false;
  for (std::size_t i = 0; i < 3 && !found; ++i)
    for (std::size_t j = i + 1; j < 3 && !found; ++j) {
      Mat probe{Vec(x.begin(), x.end()), tangent[i], tangent[j]};
      if (rank(K0, probe) == 3) {
        for (int c = 0; c < 4; ++c) {
          w1[c] = tangent[i][c];
          w2[c] = tangent[j][c];
        }
        found = true;
      }
    }
  if (!found) fail(errc::internal, "could not complete the tangent basis");

  // The restriction b^2 Q(w1) + 2bc B(w1,w2) + c^2 Q(w2) splits into the two
  // line directions; its discriminant lies in the square class of disc(b).
  elt q11 = quad_value(K0, fd.g, w1, w1);
  elt q12 = quad_value(K0, fd.g, w1, w2);
  elt q22 = quad_value(K0, fd.g, w2, w2);
  elt disc = K0.sub(K0.mul(q12, q12), K0.mul(q11, q22));
  if (disc == 0) fail(errc::internal, "degenerate tangent conic on a smooth fiber");

  const Field& K = K0.is_square(disc) ? K0 : K0.extension(2);
  ProjPoint1 bK = (&K == &K0) ? b : ProjPoint1(K, K.embed(K0, b.u), K.embed(K0, b.v));
  std::array<elt, 4> xe{}, w1e{}, w2e{};
  for (int c = 0; c < 4; ++c) {
    xe[c] = (&K == &K0) ? x[c] : K.embed(K0, x[c]);
    w1e[c] = (&K == &K0) ? w1[c] : K.embed(K0, w1[c]);
    w2e[c] = (&K == &K0) ? w2[c] : K.embed(K0, w2[c]);
  }
  elt a11 = (&K == &K0) ? q11 : K.embed(K0, q11);
  elt a12 = (&K == &K0) ? q12 : K.embed(K0, q12);
  elt a22 = (&K == &K0) ? q22 : K.embed(K0, q22);
  elt r = K.sqrt((&K == &K0) ? disc : K.embed(K0, disc));

  auto combine = [&](elt cb, elt cc) {
    std::array<elt, 4> dir{};
    for (int c = 0; c < 4; ++c) dir[c] = K.add(K.mul(cb, w1e[c]), K.mul(cc, w2e[c]));
    return dir;
  };
  std::array<elt, 4> dir1, dir2;
  if (a11 != 0) {
    dir1 = combine(K.add(K.neg(a12), r), a11);
    dir2 = combine(K.sub(K.neg(a12), r), a11);
  } else {
    dir1 = combine(K.one(), 0);
    dir2 = combine(K.neg(a22), K.add(a12, a12));
  }
  return {make_line(K, bK, xe, dir1), make_line(K, bK, xe, dir2)};
}

LineIntersection line_intersection(const LineInFiber& l1, const LineInFiber& l2) {
  require_same_fiber(l1, l2);
  const Field& K = *l1.K;
  int dim = intersection_dim(l1, l2);
  LineIntersection out;
  if (dim == 2) {
    out.kind = LineIntersection::Kind::Same;
    return out;
  }
  if (dim == 0) {
    out.kind = LineIntersection::Kind::None;
    return out;
  }
  // dim == 1: solve a1 r11 + a2 r12 - b1 r21 - b2 r22 = 0.
  Mat m(4, Vec(4, 0));
  for (int coord = 0; coord < 4; ++coord) {
    m[coord][0] = l1.basis[0][coord];
    m[coord][1] = l1.basis[1][coord];
    m[coord][2] = K.neg(l2.basis[0][coord]);
    m[coord][3] = K.neg(l2.basis[1][coord]);
  }
  Mat ker = kernel_basis(K, m, 4);
  if (ker.size() != 1) fail(errc::internal, "intersection solve disagrees with the rank count");
  std::array<elt, 4> pt{};
  for (int coord = 0; coord < 4; ++coord)
    pt[coord] = K.add(K.mul(ker[0][0], l1.basis[0][coord]), K.mul(ker[0][1], l1.basis[1][coord]));
  out.kind = LineIntersection::Kind::Point;
  out.point = normalize_point(K, pt);
  return out;
}

int ruling_of(const LineInFiber& line, const LineInFiber& reference) {
  require_same_fiber(line, reference);
  return intersection_dim(line, reference) % 2;
}

std::vector<LineInFiber> lines_in_fiber(const Fibration& fib, const ProjPoint1& b) {
  const Field& K = *b.F;
  FiberData fd = fiber_at(fib, b);
  if (fd.rank != 4) fail(errc::singular_fiber, "fiber is singular at b");
  std::vector<LineInFiber> lines;
  for (const auto& x : quadric_points(K, fd.g)) {
    auto pair = lines_through_point(fib, b, x);
    if (pair.first.K == &K) lines.push_back(pair.first);
    if (pair.second.K == &K) lines.push_back(pair.second);
  }
  std::sort(lines.begin(), lines.end(), line_less);
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

LineInFiber reference_line(const Fibration& fib, const ProjPoint1& b) {
  const Field& K0 = *b.F;
  elt disc_val = discriminant(fib).embedded(K0).evaluate(b.u, b.v);
  const Field& K = (disc_val != 0 && K0.is_square(disc_val)) ? K0 : K0.extension(2);
  ProjPoint1 bK = (&K == &K0) ? b : ProjPoint1(K, K.embed(K0, b.u), K.embed(K0, b.v));
  auto lines = lines_in_fiber(fib, bK);
  if (lines.empty()) fail(errc::internal, "no line over the splitting field");
  return lines.front();
}

std::vector<LabeledLines> section_to_line_data(const Fibration& fib, const Section& sec,
                                               const std::vector<ProjPoint1>& points) {
  BinaryForm disc = discriminant(fib);
  std::vector<LabeledLines> out;
  for (const auto& b : points) {
    const Field& K0 = *b.F;
    elt disc_val = disc.embedded(K0).evaluate(b.u, b.v);
    if (disc_val == 0) fail(errc::singular_fiber, "correspondence point lies on the discriminant");
    const Field& K = K0.is_square(disc_val) ? K0 : K0.extension(2);
    ProjPoint1 bK = (&K == &K0) ? b : ProjPoint1(K, K.embed(K0, b.u), K.embed(K0, b.v));
    auto xv = section_value(fib, sec, bK);
    bool nonzero = false;
    for (elt c : xv) nonzero = nonzero || c != 0;
    if (!nonzero) fail(errc::internal, "saturated section evaluates to zero");
    auto pair = lines_through_point(fib, bK, xv);
    if (pair.first.K != &K)
      fail(errc::internal, "lines not rational over the splitting field");
    LineInFiber ref = reference_line(fib, b);
    int p1 = ruling_of(pair.first, ref);
    int p2 = ruling_of(pair.second, ref);
    if (p1 == p2) fail(errc::internal, "the two lines through a point share a ruling");
    elt root = K.sqrt((&K == &K0) ? disc_val : K.embed(K0, disc_val));
    elt other = K.neg(root);
    LabeledLines entry;
    entry.b = b;
    entry.K = &K;
    entry.sqrt_disc[0] = K.lex_less(root, other) ? root : other;
    entry.sqrt_disc[1] = K.lex_less(root, other) ? other : root;
    entry.line[p1] = pair.first;
    entry.line[p2] = pair.second;
    out.push_back(std::move(entry));
  }
  return out;
}

bool galois_swap_check(const Fibration& fib, const ProjPoint1& b) {
  const Field& K = *b.F;  // rationality is judged over b's coordinate field
  FiberData fd = fiber_at(fib, b);
  if (fd.rank != 4) fail(errc::singular_fiber, "fiber is singular at b");
  elt disc_val = discriminant(fib).embedded(K).evaluate(b.u, b.v);
  bool swaps = !K.is_square(disc_val);
  // Independent check: the two lines through a rational point are rational
  // exactly when the rulings are not swapped.
  auto pts = quadric_points(K, fd.g);
  if (pts.empty())
    fail(errc::no_rational_fiber_point, "smooth quadric surface with no rational point");
  auto pair = lines_through_point(fib, b, pts.front());
  bool rational = pair.first.K == &K;
  if (rational == swaps) fail(errc::internal, "galois swap cross-check mismatch");
  return swaps;
}

}  // namespace quadrifold
