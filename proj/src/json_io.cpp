#include "quadrifold/json_io.hpp"

#include <fstream>

#include "quadrifold/linalg.hpp"

namespace quadrifold {

namespace {

[[noreturn]] void bad(const std::string& ctx, const std::string& what) {
  fail(errc::malformed_input, ctx + ": " + what);
}

std::int64_t int_field(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) bad(ctx, std::string("missing field '") + key + "'");
  if (!j[key].is_number_integer()) bad(ctx, std::string("field '") + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::malformed_input, path + ": cannot open file");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(errc::malformed_input, path + ": invalid JSON");
  return j;
}

json elt_to_json(const Field& F, Field::elt a) {
  if (F.k() == 1) return json(a);
  json out = json::array();
  for (auto d : F.digits(a)) out.push_back(d);
  return out;
}

Field::elt elt_from_json(const Field& F, const json& j, const std::string& ctx) {
  if (j.is_number_integer()) {
    std::int64_t v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= F.p())
      bad(ctx, "residue " + std::to_string(v) + " out of range [0, p)");
    return F.from_int(v);
  }
  if (!j.is_array()) bad(ctx, "scalar must be an integer or a residue list");
  if (j.size() > F.k()) bad(ctx, "residue list longer than the field degree");
  std::vector<Field::elt> digits;
  for (const auto& d : j) {
    if (!d.is_number_integer()) bad(ctx, "residue list entries must be integers");
    std::int64_t v = d.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= F.p()) bad(ctx, "residue out of range [0, p)");
    digits.push_back(static_cast<Field::elt>(v));
  }
  digits.resize(F.k(), 0);
  return F.from_digits(digits);
}

json form_to_json(const BinaryForm& f) {
  json out = json::array();
  if (f.is_zero()) return out;
  for (auto c : f.coeffs()) out.push_back(elt_to_json(f.field(), c));
  return out;
}

BinaryForm form_from_json(const Field& F, const json& j, const std::string& ctx) {
  if (!j.is_array()) bad(ctx, "form must be a coefficient list (descending powers of u)");
  if (j.empty()) return BinaryForm::zero(F);
  std::vector<Field::elt> coeffs;
  for (std::size_t i = 0; i < j.size(); ++i)
    coeffs.push_back(elt_from_json(F, j[i], ctx + "[" + std::to_string(i) + "]"));
  return BinaryForm::make(F, std::move(coeffs));
}

Fibration fibration_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object()) bad(ctx, "fibration file must be a JSON object");
  std::int64_t p = int_field(j, "p", ctx);
  std::int64_t k = j.contains("k") ? int_field(j, "k", ctx) : 1;
  if (p < 3 || p % 2 == 0) bad(ctx, "field 'p' must be an odd prime >= 3");
  if (k < 1 || k > 12) bad(ctx, "field 'k' out of range");
  const Field* F = nullptr;
  try {
    F = &Field::get(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
  } catch (const error& e) {
    bad(ctx, e.what());
  }
  if (!j.contains("d") || !j["d"].is_array() || j["d"].size() != 4)
    bad(ctx, "field 'd' must be a list of 4 integers");
  std::array<int, 4> d{};
  for (int i = 0; i < 4; ++i) {
    if (!j["d"][i].is_number_integer()) bad(ctx, "field 'd' must be a list of 4 integers");
    d[i] = j["d"][i].get<int>();
  }
  int e = static_cast<int>(int_field(j, "e", ctx));
  if (!j.contains("gram") || !j["gram"].is_array() || j["gram"].size() != 10)
    bad(ctx, "field 'gram' must list the 10 upper-triangular entries (row-major, i <= j)");
  GramMatrix gram;
  std::size_t idx = 0;
  for (int i = 0; i < 4; ++i)
    for (int jj = i; jj < 4; ++jj) {
      gram[i][jj] = form_from_json(*F, j["gram"][idx],
                                   ctx + ": gram[" + std::to_string(i + 1) + "][" +
                                       std::to_string(jj + 1) + "]");
      gram[jj][i] = gram[i][jj];
      ++idx;
    }
  try {
    return Fibration::make(*F, d, e, std::move(gram));
  } catch (const error& e2) {
    bad(ctx, e2.what());
  }
}

json fibration_to_json(const Fibration& fib) {
  json j;
  j["p"] = fib.field().p();
  j["k"] = fib.field().k();
  j["d"] = fib.d;
  j["e"] = fib.e;
  json gram = json::array();
  for (int i = 0; i < 4; ++i)
    for (int jj = i; jj < 4; ++jj) gram.push_back(form_to_json(fib.gram[i][jj]));
  j["gram"] = std::move(gram);
  return j;
}

json section_to_json(const Fibration& fib, const Section& sec) {
  json j;
  j["f"] = sec.f;
  json s = json::array();
  for (const auto& si : sec.s) s.push_back(form_to_json(si));
  j["s"] = std::move(s);
  j["h"] = section_height(fib, sec);
  return j;
}

Section section_from_json(const Fibration& fib, const json& j, const std::string& ctx) {
  if (!j.is_object()) bad(ctx, "section must be a JSON object");
  Section sec;
  sec.f = static_cast<int>(int_field(j, "f", ctx));
  if (!j.contains("s") || !j["s"].is_array() || j["s"].size() != 4)
    bad(ctx, "field 's' must list 4 forms");
  for (int i = 0; i < 4; ++i)
    sec.s[i] = form_from_json(fib.field(), j["s"][i], ctx + ": s[" + std::to_string(i + 1) + "]");
  std::string why;
  if (!check_section(fib, sec, &why)) bad(ctx, "invalid section: " + why);
  return sec;
}

std::vector<PointConstraint> constraints_from_json(const Fibration& fib, const json& j,
                                                   const std::string& ctx) {
  if (!j.is_array()) bad(ctx, "constraint file must be a JSON list");
  const Field& F = fib.field();
  std::vector<PointConstraint> out;
  for (std::size_t a = 0; a < j.size(); ++a) {
    const json& c = j[a];
    std::string cctx = ctx + ": constraint " + std::to_string(a + 1);
    if (!c.is_object() || !c.contains("b") || !c.contains("x")) bad(cctx, "needs fields 'b' and 'x'");
    if (!c["b"].is_array() || c["b"].size() != 2) bad(cctx, "field 'b' must be [u, v]");
    if (!c["x"].is_array() || c["x"].size() != 4) bad(cctx, "field 'x' must be [x1, x2, x3, x4]");
    // Residue lists longer than the base degree put the constraint in the
    // quadratic extension.
    bool extended = false;
    auto scan = [&](const json& v) {
      if (v.is_array() && v.size() > F.k()) extended = true;
    };
    for (const auto& v : c["b"]) scan(v);
    for (const auto& v : c["x"]) scan(v);
    const Field& K = extended ? F.extension(2) : F;
    Field::elt u = elt_from_json(K, c["b"][0], cctx + ": b[0]");
    Field::elt v = elt_from_json(K, c["b"][1], cctx + ": b[1]");
    if (u == 0 && v == 0) bad(cctx, "b must be a projective point");
    PointConstraint pc;
    pc.b = ProjPoint1(K, u, v);
    for (int i = 0; i < 4; ++i)
      pc.x[i] = elt_from_json(K, c["x"][i], cctx + ": x[" + std::to_string(i + 1) + "]");
    out.push_back(pc);
  }
  return out;
}

json line_to_json(const LineInFiber& line) {
  const Field& K = *line.K;
  json j;
  j["b"] = json::array({elt_to_json(K, line.b.u), elt_to_json(K, line.b.v)});
  json basis = json::array();
  for (const auto& row : line.basis) {
    json r = json::array();
    for (auto c : row) r.push_back(elt_to_json(K, c));
    basis.push_back(std::move(r));
  }
  j["basis"] = std::move(basis);
  return j;
}

LineInFiber line_from_json(const Field& F, const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("b") || !j.contains("basis"))
    bad(ctx, "line needs fields 'b' and 'basis'");
  if (!j["b"].is_array() || j["b"].size() != 2) bad(ctx, "field 'b' must be [u, v]");
  Field::elt u = elt_from_json(F, j["b"][0], ctx + ": b[0]");
  Field::elt v = elt_from_json(F, j["b"][1], ctx + ": b[1]");
  if (u == 0 && v == 0) bad(ctx, "b must be a projective point");
  if (!j["basis"].is_array() || j["basis"].size() != 2) bad(ctx, "field 'basis' must be 2 rows");
  LineInFiber line;
  line.b = ProjPoint1(F, u, v);
  line.K = &F;
  Mat m;
  for (int r = 0; r < 2; ++r) {
    if (!j["basis"][r].is_array() || j["basis"][r].size() != 4)
      bad(ctx, "basis rows must have 4 scalars");
    Vec row;
    for (int c = 0; c < 4; ++c)
      row.push_back(elt_from_json(F, j["basis"][r][c],
                                  ctx + ": basis[" + std::to_string(r) + "][" +
                                      std::to_string(c) + "]"));
    m.push_back(std::move(row));
  }
  if (rref(F, m) != 2) bad(ctx, "basis must have rank 2");
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) line.basis[r][c] = m[r][c];
  return line;
}

json receipt_to_json(const TransformReceipt& rec) {
  const Field& F = rec.input.field();
  json j;
  j["input"] = fibration_to_json(rec.input);
  j["output"] = fibration_to_json(rec.output);
  j["p"] = json::array({elt_to_json(F, rec.p.u), elt_to_json(F, rec.p.v)});
  j["line"] = line_to_json(rec.line);
  json bc = json::array();
  for (const auto& row : rec.basis_change) {
    json r = json::array();
    for (const auto& f : row) r.push_back(form_to_json(f));
    bc.push_back(std::move(r));
  }
  j["basis_change"] = std::move(bc);
  j["swapped"] = rec.swapped;
  j["shift"] = rec.shift;
  j["det_u"] = elt_to_json(F, rec.det_u);
  return j;
}

}  // namespace quadrifold
