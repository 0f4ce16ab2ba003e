#include "wnql/random.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wnql {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (const auto w : words)
    h = mix64(h ^ mix64(w));
  return h;
}

std::uint64_t double_bits(double v) {
  if (v == 0.0)
    v = 0.0;  // fold -0.0 into +0.0
  return std::bit_cast<std::uint64_t>(v);
}

Engine make_engine(std::uint64_t master_seed, Stream purpose, std::uint64_t sub) {
  const std::uint64_t s = hash_words({master_seed, static_cast<std::uint64_t>(purpose), sub});
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Engine(seq);
}

double uniform01(Engine &eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(Engine &eng, std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  // Largest multiple of range that fits, so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = eng();
  while (x >= limit)
    x = eng();
  return static_cast<std::size_t>(x % range);
}

double standard_normal(Engine &eng) {
  const double u1 = 1.0 - uniform01(eng);  // (0, 1]
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace wnql
