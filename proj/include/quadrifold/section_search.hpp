#ifndef QUADRIFOLD_SECTION_SEARCH_HPP
#define QUADRIFOLD_SECTION_SEARCH_HPP

#include <map>
#include <optional>
#include <vector>

#include "quadrifold/section.hpp"

namespace quadrifold {

struct SearchOptions {
  long long budget = 10000000;  // candidate tuples examined
  int max_ext = 2;
  bool include_broken = false;
  bool parallel = true;
};

struct EnumResult {
  std::vector<Section> sections;  // deterministic order (section_less)
  std::vector<Section> broken;    // populated only when include_broken
  std::string strategy;
  long long examined = 0;
};

/// Sections satisfy h == -sum(d) + 2f - e, so achieved heights lie in one
/// residue class mod 2.
bool height_parity_feasible(const Fibration& fib, int h);
/// The subbundle twist f for a given height; nullopt on parity failure.
std::optional<int> twist_for_height(const Fibration& fib, int h);

/// All sections of height exactly h.  Chooses between the pruned direct
/// kernel (solving the quadratic identity for the widest coordinate) and
/// fiber interpolation, respecting the budget.
EnumResult enumerate_sections(const Fibration& fib, int h, const SearchOptions& opts);

/// Serial reference: literal enumeration of the whole coefficient space with
/// canonical-scaling dedup.  Kept as the independent oracle for the kernels.
EnumResult enumerate_sections_reference(const Fibration& fib, int h, long long budget,
                                        bool include_broken = false);

/// Pruned direct kernel only (errors if over budget).
EnumResult enumerate_sections_direct(const Fibration& fib, int h, const SearchOptions& opts);

/// Fiber-interpolation enumeration only (errors if over budget).
EnumResult enumerate_sections_interpolation(const Fibration& fib, int h,
                                            const SearchOptions& opts);

struct MinHeightResult {
  int h;
  Section sec;
  int bound;            // Delta/2 - 2 - epsilon
  bool bound_satisfied;
};

/// First nonempty height scanning upward from the minimal feasible value.
std::optional<MinHeightResult> min_height_section(const Fibration& fib, int h_max,
                                                  const SearchOptions& opts);

struct PointConstraint {
  ProjPoint1 b;                     // off the discriminant
  std::array<Field::elt, 4> x;      // on the fiber quadric, over b's field
};

struct WeakApproxResult {
  int h;
  Section sec;
};

/// Constrained search: impose sigma(b_j) parallel to x_j as exact linear
/// conditions, enumerate the solution space ascending in h.
/// h_max < 0 selects the default (3/2) Delta + 2N.
std::optional<WeakApproxResult> weak_approx_search(const Fibration& fib,
                                                   const std::vector<PointConstraint>& constraints,
                                                   int h_max, const SearchOptions& opts);

struct StabilityReport {
  bool hypothesis_holds;
  int delta;
  int scan_from, scan_to;  // inclusive height range examined (empty if from > to)
  std::vector<std::pair<int, Section>> offenders;
  std::string note;
};

/// Scans all parity-feasible heights h < -Delta/2 for sections.
StabilityReport check_stability_hypothesis(const Fibration& fib, const SearchOptions& opts);

std::map<int, long long> count_by_height(const Fibration& fib, int h_min, int h_max,
                                         const SearchOptions& opts);

}  // namespace quadrifold

#endif
