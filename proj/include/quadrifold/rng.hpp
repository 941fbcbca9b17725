#ifndef QUADRIFOLD_RNG_HPP
#define QUADRIFOLD_RNG_HPP

#include <cstdint>
#include <random>

namespace quadrifold {

/// Seeded generator with a portable bounded draw (rejection sampling, so the
/// stream does not depend on the standard library's distribution internals).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace quadrifold

#endif
