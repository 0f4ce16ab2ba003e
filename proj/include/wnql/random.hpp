#pragma once

// Seeded random streams.
//
// Everything is built on std::mt19937_64, whose output sequence is fixed by
// the standard. The std distributions and std::shuffle are not, so the few
// draws needed here are written out so a trace only depends on the seed.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace wnql {

using Engine = std::mt19937_64;

/// Purpose tags for substreams derived from one master seed. Adding a new
/// consumer never perturbs the draws of the existing ones.
enum class Stream : std::uint64_t {
  permutation = 1,
  initialization = 2,
  exploration = 3,
  shadowing = 4,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive hash of a sequence of words.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words);

/// Bit pattern of a double, so parameter values can take part in seeds.
std::uint64_t double_bits(double v);

/// Engine for (master seed, purpose, sub-index), e.g. agent number.
Engine make_engine(std::uint64_t master_seed, Stream purpose, std::uint64_t sub = 0);

/// Uniform in [0, 1) with 53 random bits; consumes one engine output.
double uniform01(Engine &eng);

/// Uniform in {0, ..., n-1} by rejection; n must be >= 1.
std::size_t uniform_index(Engine &eng, std::size_t n);

/// Standard normal via Box-Muller; consumes exactly two uniform01 draws.
double standard_normal(Engine &eng);

/// Fisher-Yates, last position first.
template <typename T> void shuffle(std::span<T> values, Engine &eng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = uniform_index(eng, i);
    std::swap(values[i - 1], values[j]);
  }
}

} // namespace wnql
