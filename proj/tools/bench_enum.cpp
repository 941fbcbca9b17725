// Benchmark: serial reference enumeration vs the pruned parallel kernel on
// the same height slices.  Wall-clock only; both outputs are cross-checked.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "quadrifold/section_search.hpp"

using namespace quadrifold;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

Fibration diag_fibration(const Field& F, std::vector<std::vector<Field::elt>> entries) {
  GramMatrix gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram[i][j] = BinaryForm::zero(F);
  for (int i = 0; i < 4; ++i) gram[i][i] = BinaryForm::make(F, entries[i]);
  return Fibration::make(F, {0, 0, 0, 0}, 1, gram);
}

void bench(const char* label, const Fibration& fib, int h) {
  SearchOptions opts;
  opts.budget = 200000000;

  auto t0 = std::chrono::steady_clock::now();
  EnumResult ref = enumerate_sections_reference(fib, h, opts.budget);
  auto t1 = std::chrono::steady_clock::now();
  EnumResult par = enumerate_sections_direct(fib, h, opts);
  auto t2 = std::chrono::steady_clock::now();
  opts.parallel = false;
  EnumResult ser = enumerate_sections_direct(fib, h, opts);
  auto t3 = std::chrono::steady_clock::now();

  bool agree = ref.sections.size() == par.sections.size() && par.sections == ser.sections;
  for (std::size_t i = 0; agree && i < ref.sections.size(); ++i)
    agree = ref.sections[i] == par.sections[i];
  std::printf("%-28s h=%2d  sections=%4zu  reference %8.3fs (%lld tuples)  "
              "kernel-serial %8.3fs  kernel-parallel %8.3fs  agree=%s\n",
              label, h, ref.sections.size(), seconds(t0, t1), ref.examined, seconds(t2, t3),
              seconds(t1, t2), agree ? "yes" : "NO");
  if (!agree) std::exit(1);
}

}  // namespace

int main() {
  const Field& F3 = Field::get(3);
  const Field& F5 = Field::get(5);
  Fibration a = diag_fibration(F3, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  Fibration b = diag_fibration(F5, {{1, 0}, {0, 1}, {1, 1}, {1, 3}});
  for (int h : {-1, 1, 3}) bench("F3 diag(u,v,u+v,u-v)", a, h);
  for (int h : {-1, 1}) bench("F5 diag(u,v,u+v,u-2v)", b, h);
  return 0;
}
