#include "quadrifold/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "quadrifold/chow.hpp"
#include "quadrifold/json_io.hpp"

namespace quadrifold {

namespace {

json invariants_json(const Fibration& fib) {
  FibrationInvariants inv = invariants(fib);
  json j;
  j["delta"] = inv.delta;
  if (inv.genus)
    j["genus"] = *inv.genus;
  else
    j["genus"] = nullptr;
  j["epsilon"] = inv.epsilon;
  j["degE"] = inv.degE;
  j["heightX"] = inv.heightX;
  j["case"] = census_case_name(inv.census_case);
  return j;
}

// Off-discriminant fiber points for the correspondence report: base-rational
// points first, the quadratic extension when the base has none, capped.
std::vector<ProjPoint1> correspondence_points(const Fibration& fib, std::size_t cap) {
  BinaryForm disc = discriminant(fib);
  std::vector<ProjPoint1> pts;
  auto collect = [&](const Field& K) {
    BinaryForm dk = disc.embedded(K);
    for (Field::elt t = 0; t < K.order() && pts.size() < cap; ++t)
      if (dk.evaluate(K.one(), t) != 0) pts.emplace_back(K, K.one(), t);
    if (pts.size() < cap && dk.evaluate(0, K.one()) != 0) pts.emplace_back(K, 0, K.one());
  };
  collect(fib.field());
  if (pts.empty()) collect(fib.field().extension(2));
  return pts;
}

std::string point_key(const ProjPoint1& b) {
  return std::to_string(b.u) + ":" + std::to_string(b.v);
}

struct CommonOpts {
  std::string input;
  std::string output;
  long long budget = 10000000;
  int max_ext = 2;
  std::uint64_t seed = 0;
};

json run_subcommand(const std::string& sub, const CommonOpts& common, const json& params) {
  json results;
  SearchOptions opts;
  opts.budget = common.budget;
  opts.max_ext = common.max_ext;

  auto load_fib = [&]() { return fibration_from_json(load_json_file(common.input), common.input); };

  if (sub == "invariants") {
    Fibration fib = load_fib();
    results = invariants_json(fib);
  } else if (sub == "discriminant") {
    Fibration fib = load_fib();
    BinaryForm disc = discriminant(fib);
    results["coeffs"] = form_to_json(disc);
    results["degree"] = disc.degree();
    results["squarefree"] = is_squarefree(disc);
  } else if (sub == "sections") {
    Fibration fib = load_fib();
    int h = params.at("height").get<int>();
    opts.include_broken = params.at("include_broken").get<bool>();
    EnumResult r = enumerate_sections(fib, h, opts);
    results["height"] = h;
    results["strategy"] = r.strategy;
    results["examined"] = r.examined;
    results["count"] = r.sections.size();
    json secs = json::array();
    for (const auto& s : r.sections) secs.push_back(section_to_json(fib, s));
    results["sections"] = std::move(secs);
    if (opts.include_broken) {
      json bro = json::array();
      for (const auto& s : r.broken) bro.push_back(section_to_json(fib, s));
      results["broken"] = std::move(bro);
    }
  } else if (sub == "min-height") {
    Fibration fib = load_fib();
    FibrationInvariants inv = invariants(fib);
    int bound = inv.delta / 2 - 2 - inv.epsilon;
    int h_max = params.at("max").is_null() ? bound : params.at("max").get<int>();
    auto r = min_height_section(fib, h_max, opts);
    results["bound"] = bound;
    results["max_scanned"] = h_max;
    if (r) {
      results["found"] = true;
      results["h"] = r->h;
      results["section"] = section_to_json(fib, r->sec);
      results["bound_satisfied"] = r->bound_satisfied;
    } else {
      results["found"] = false;
    }
  } else if (sub == "weak-approx") {
    Fibration fib = load_fib();
    std::string cfile = params.at("constraints").get<std::string>();
    auto cons = constraints_from_json(fib, load_json_file(cfile), cfile);
    int h_max = params.at("max").is_null() ? -1 : params.at("max").get<int>();
    auto r = weak_approx_search(fib, cons, h_max, opts);
    results["constraints"] = cons.size();
    if (r) {
      results["found"] = true;
      results["h"] = r->h;
      results["section"] = section_to_json(fib, r->sec);
    } else {
      results["found"] = false;
    }
  } else if (sub == "correspondence") {
    Fibration fib = load_fib();
    int h = params.at("height").get<int>();
    EnumResult r = enumerate_sections(fib, h, opts);
    auto pts = correspondence_points(fib, 8);
    json out = json::array();
    for (const auto& sec : r.sections) {
      json entry;
      entry["section"] = section_to_json(fib, sec);
      json lines;
      bool round_trip = true;
      auto data = section_to_line_data(fib, sec, pts);
      for (const auto& ll : data) {
        const Field& K = *ll.K;
        lines[point_key(ll.b) + ":+"] = line_to_json(ll.line[0]);
        lines[point_key(ll.b) + ":-"] = line_to_json(ll.line[1]);
        auto meet = line_intersection(ll.line[0], ll.line[1]);
        if (meet.kind != LineIntersection::Kind::Point) {
          round_trip = false;
          continue;
        }
        ProjPoint1 bK = ll.line[0].b;
        auto val = section_value(fib, sec, bK);
        Field::elt lead = 0;
        for (auto v : val)
          if (v != 0) {
            lead = v;
            break;
          }
        Field::elt inv = K.inv(lead);
        for (int i = 0; i < 4; ++i)
          if (K.mul(val[i], inv) != meet.point[i]) round_trip = false;
      }
      entry["lines"] = std::move(lines);
      entry["round_trip"] = round_trip;
      out.push_back(std::move(entry));
    }
    results["height"] = h;
    results["points"] = pts.size();
    results["sections"] = std::move(out);
  } else if (sub == "stability") {
    Fibration fib = load_fib();
    StabilityReport rep = check_stability_hypothesis(fib, opts);
    results["hypothesis_holds"] = rep.hypothesis_holds;
    results["delta"] = rep.delta;
    results["scan_from"] = rep.scan_from;
    results["scan_to"] = rep.scan_to;
    json off = json::array();
    for (const auto& [h, s] : rep.offenders) {
      json o;
      o["h"] = h;
      o["section"] = section_to_json(fib, s);
      off.push_back(std::move(o));
    }
    results["offenders"] = std::move(off);
    results["note"] = rep.note;
  } else if (sub == "hecke") {
    Fibration fib = load_fib();
    const Field& F = fib.field();
    std::string pspec = params.at("p").get<std::string>();
    auto colon = pspec.find(':');
    if (colon == std::string::npos)
      fail(errc::malformed_input, "--p expects U:V with integer-encoded scalars");
    Field::elt pu = 0, pv = 0;
    try {
      pu = static_cast<Field::elt>(std::stoull(pspec.substr(0, colon)));
      pv = static_cast<Field::elt>(std::stoull(pspec.substr(colon + 1)));
    } catch (const std::exception&) {
      fail(errc::malformed_input, "--p expects U:V with integer-encoded scalars");
    }
    if (pu >= F.order() || pv >= F.order() || (pu == 0 && pv == 0))
      fail(errc::malformed_input, "--p coordinates out of range or both zero");
    ProjPoint1 p(F, pu, pv);
    std::string lfile = params.at("line").get<std::string>();
    LineInFiber line = line_from_json(F, load_json_file(lfile), lfile);
    bool swap = params.at("swap").get<bool>();
    TransformReceipt rec = elementary_transform(fib, p, line, swap);
    results = receipt_to_json(rec);
    results["output_invariants"] = invariants_json(rec.output);
  } else if (sub == "census") {
    std::uint64_t p = params.at("p").get<std::uint64_t>();
    unsigned k = params.at("k").get<unsigned>();
    int case_no = params.at("case").get<int>();
    int n = params.at("n").get<int>();
    int samples = params.at("samples").get<int>();
    int tries = params.at("tries").get<int>();
    const Field& F = Field::get(p, k);
    CensusCase c = static_cast<CensusCase>(case_no - 1);
    auto [d, e] = census_pattern(c, n);
    int sum_d = d[0] + d[1] + d[2] + d[3];
    int delta_expected = 2 * sum_d + 4 * e;
    int genus_formal = delta_expected / 2 - 1;
    results["case"] = census_case_name(c);
    results["n"] = n;
    results["d"] = d;
    results["e"] = e;
    results["delta"] = delta_expected;
    results["genus_formal"] = genus_formal;
    results["delta_mod8"] = ((delta_expected % 8) + 8) % 8;
    results["genus_mod4"] = ((genus_formal % 4) + 4) % 4;
    results["n_mod2"] = n % 2;
    Rng master(common.seed);
    json slist = json::array();
    for (int i = 0; i < samples; ++i) {
      std::uint64_t sub_seed = master.below(std::uint64_t(1) << 62);
      Rng rng(sub_seed);
      CensusSample cs = sample_census(F, c, n, tries, rng);
      json sj;
      sj["sub_seed"] = sub_seed;
      sj["tries_used"] = cs.tries_used;
      BinaryForm disc = discriminant(cs.fib);
      sj["delta"] = disc.degree();
      sj["squarefree"] = is_squarefree(disc);
      sj["matches_pattern"] = disc.degree() == delta_expected;
      slist.push_back(std::move(sj));
    }
    results["samples"] = std::move(slist);
  } else if (sub == "chow") {
    int n = params.at("n").get<int>();
    HeightIdentityReport rep = verify_height_formula(n);
    results["n"] = rep.n;
    results["expression"] = rep.expression;
    results["identity"] = std::to_string(rep.n_pow_n) + "*Delta";
    results["holds"] = rep.holds;
  } else if (sub == "counts") {
    Fibration fib = load_fib();
    int from = params.at("from").get<int>();
    int to = params.at("to").get<int>();
    auto counts = count_by_height(fib, from, to, opts);
    json cj;
    for (const auto& [h, c] : counts) cj[std::to_string(h)] = c;
    results["counts"] = std::move(cj);
  } else {
    fail(errc::malformed_input, "unknown subcommand");
  }
  return results;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::string* report) {
  CLI::App app{"quadrifold: exact computation for quadric surface fibrations over P^1"};
  app.set_version_flag("--version", std::string("quadrifold ") + kToolVersion);
  app.require_subcommand(1);

  CommonOpts common;
  if (const char* envb = std::getenv("QUADRIFOLD_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(envb, &end, 10);
    if (end && *end == '\0' && v > 0) common.budget = v;
  }
  app.add_option("--budget", common.budget, "candidate budget")->check(CLI::PositiveNumber);
  app.add_option("--max-ext", common.max_ext, "extension degree cap");
  app.add_option("--seed", common.seed, "random seed");
  app.add_option("--output", common.output, "report file (default stdout handled by caller)");

  int height = 0;
  bool include_broken = false;
  int h_max = 0;
  bool h_max_set = false;
  std::string constraints_file, line_file, p_spec;
  bool swap_blocks = false;
  std::uint64_t census_p = 3;
  unsigned census_k = 1;
  int census_case = 1, census_n = 1, census_samples = 1, census_tries = 2000;
  int chow_n = 2;
  int from_h = 0, to_h = 0;

  auto add_input = [&](CLI::App* s) {
    s->add_option("input", common.input, "fibration JSON file")->required();
  };

  auto* s_inv = app.add_subcommand("invariants", "numerical invariants of a fibration");
  add_input(s_inv);
  auto* s_disc = app.add_subcommand("discriminant", "Gram determinant as a binary form");
  add_input(s_disc);
  auto* s_sec = app.add_subcommand("sections", "enumerate sections of one height");
  add_input(s_sec);
  s_sec->add_option("--height", height, "section height")->required();
  s_sec->add_flag("--include-broken", include_broken, "also list non-saturated solutions");
  auto* s_min = app.add_subcommand("min-height", "smallest height admitting a section");
  add_input(s_min);
  s_min->add_option("--max", h_max, "scan cap (default: the existence bound)")
      ->each([&](const std::string&) { h_max_set = true; });
  auto* s_wa = app.add_subcommand("weak-approx", "section through prescribed fiber points");
  add_input(s_wa);
  s_wa->add_option("--constraints", constraints_file, "constraint JSON file")->required();
  s_wa->add_option("--max", h_max, "scan cap (default: (3/2)Delta + 2N)")
      ->each([&](const std::string&) { h_max_set = true; });
  auto* s_cor = app.add_subcommand("correspondence", "section <-> line-pair data per fiber");
  add_input(s_cor);
  s_cor->add_option("--height", height, "section height")->required();
  auto* s_st = app.add_subcommand("stability", "scan for sections below -Delta/2");
  add_input(s_st);
  auto* s_he = app.add_subcommand("hecke", "elementary transformation along a line");
  add_input(s_he);
  s_he->add_option("--p", p_spec, "fiber point U:V")->required();
  s_he->add_option("--line", line_file, "line JSON file")->required();
  s_he->add_flag("--swap", swap_blocks, "scale the other index pair (inverse orientation)");
  auto* s_ce = app.add_subcommand("census", "sample square-free fibrations of a census case");
  s_ce->add_option("--p", census_p, "field characteristic")->required();
  s_ce->add_option("--k", census_k, "field degree");
  s_ce->add_option("--case", census_case, "census case 1-4")->required()->check(CLI::Range(1, 4));
  s_ce->add_option("--n", census_n, "case invariant n")->required();
  s_ce->add_option("--samples", census_samples, "number of samples")->required();
  s_ce->add_option("--tries", census_tries, "rejection cap per sample");
  auto* s_ch = app.add_subcommand("chow", "verify the symbolic height identity");
  s_ch->add_option("--n", chow_n, "relative dimension")->required();
  auto* s_cnt = app.add_subcommand("counts", "section counts per height");
  add_input(s_cnt);
  s_cnt->add_option("--from", from_h, "first height")->required();
  s_cnt->add_option("--to", to_h, "last height")->required();

  // Global options (--budget, --output, ...) remain usable after the
  // subcommand name.
  for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; })) s->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    if (report) *report += os.str();
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  json params;
  if (name == "sections" || name == "correspondence") params["height"] = height;
  if (name == "sections") params["include_broken"] = include_broken;
  if (name == "min-height" || name == "weak-approx")
    params["max"] = h_max_set ? json(h_max) : json(nullptr);
  if (name == "weak-approx") params["constraints"] = constraints_file;
  if (name == "hecke") {
    params["p"] = p_spec;
    params["line"] = line_file;
    params["swap"] = swap_blocks;
  }
  if (name == "census") {
    params["p"] = census_p;
    params["k"] = census_k;
    params["case"] = census_case;
    params["n"] = census_n;
    params["samples"] = census_samples;
    params["tries"] = census_tries;
  }
  if (name == "chow") params["n"] = chow_n;
  if (name == "counts") {
    params["from"] = from_h;
    params["to"] = to_h;
  }

  json out;
  out["tool"] = "quadrifold";
  out["version"] = kToolVersion;
  json config;
  config["subcommand"] = name;
  if (!common.input.empty()) config["input"] = common.input;
  config["budget"] = common.budget;
  config["max_ext"] = common.max_ext;
  config["seed"] = common.seed;
  for (auto& [key, val] : params.items()) config[key] = val;
  out["config"] = std::move(config);

  int exit_code = 0;
  try {
    if (!common.input.empty()) {
      Fibration fib = fibration_from_json(load_json_file(common.input), common.input);
      out["invariants"] = invariants_json(fib);
    }
    out["results"] = run_subcommand(name, common, params);
  } catch (const error& e) {
    out["error"] = errc_name(e.kind());
    out["message"] = e.what();
    exit_code = e.exit_code();
  } catch (const std::exception& e) {
    out["error"] = "exception";
    out["message"] = e.what();
    exit_code = 1;
  }

  std::string text = out.dump(2) + "\n";
  if (!common.output.empty()) {
    std::ofstream f(common.output);
    f << text;
  }
  if (report) *report += text;
  return exit_code;
}

}  // namespace quadrifold
