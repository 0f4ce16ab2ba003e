#include "doctest.h"

#include "wnql/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace wnql;

TEST_SUITE("random") {

TEST_CASE("substreams are reproducible and distinct") {
  Engine a = make_engine(42, Stream::permutation);
  Engine b = make_engine(42, Stream::permutation);
  Engine c = make_engine(42, Stream::exploration, 0);
  Engine d = make_engine(42, Stream::exploration, 1);
  const auto a0 = a();
  CHECK(a0 == b());
  CHECK(a0 != c());
  CHECK(c() != d());
}

TEST_CASE("uniform01 stays in [0, 1)") {
  Engine e = make_engine(1, Stream::initialization);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(e);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_index is uniform within 3 sigma") {
  Engine e = make_engine(3, Stream::initialization);
  const std::size_t k = 7;
  const int draws = 100000;
  std::vector<int> counts(k, 0);
  for (int i = 0; i < draws; ++i)
    ++counts[uniform_index(e, k)];
  const double p = 1.0 / k;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (const int c : counts)
    CHECK(std::abs(c - draws * p) < 3 * sigma);
}

TEST_CASE("standard_normal moments") {
  Engine e = make_engine(5, Stream::shadowing);
  const int draws = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < draws; ++i) {
    const double z = standard_normal(e);
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / draws) < 0.01);
  CHECK(std::abs(sq / draws - 1.0) < 0.02);
}

TEST_CASE("shuffle yields permutations with uniform positions") {
  Engine e = make_engine(9, Stream::permutation);
  const int n = 4, rounds = 40000;
  std::vector<int> position_counts(n * n, 0);
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    shuffle(std::span<int>(v), e);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == std::vector<int>{0, 1, 2, 3});
    for (int pos = 0; pos < n; ++pos)
      ++position_counts[v[pos] * n + pos];
  }
  const double p = 1.0 / n;
  const double sigma = std::sqrt(rounds * p * (1 - p));
  for (const int c : position_counts)
    CHECK(std::abs(c - rounds * p) < 3 * sigma);
}

TEST_CASE("double_bits folds negative zero") {
  CHECK(double_bits(0.0) == double_bits(-0.0));
  CHECK(double_bits(0.1) != double_bits(0.2));
}

}
