#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cheaptalk/rng.hpp"

using namespace cheaptalk;

TEST_CASE("same seed gives the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("stream values are pinned (cross-platform regression)") {
  // Frozen outputs; a change here means reproducibility of every recorded
  // run is broken.
  Rng r(1);
  CHECK(r.next() == 14971601782005023387ull);
  CHECK(r.next() == 13781649495232077965ull);
  CHECK(r.next() == 1847458086238483744ull);

  Rng zero(0);
  CHECK(zero.next() == 5987356902031041503ull);
  CHECK(zero.next() == 7051070477665621255ull);
  CHECK(zero.next() == 6633766593972829180ull);
}

TEST_CASE("uniform01 stays in [0,1)") {
  Rng r(7);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform_below covers the range roughly uniformly") {
  Rng r(123);
  int counts[8] = {0};
  const int draws = 80000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.uniform_below(8);
    REQUIRE(v < 8);
    ++counts[v];
  }
  for (int c : counts) {
    // expected 10000, sd ~ 94; 5 sigma band
    CHECK(c > 9500);
    CHECK(c < 10500);
  }
}

TEST_CASE("derived seeds differ per counter and are stable") {
  const uint64_t base = 99;
  CHECK(derive_seed(base, 0) != derive_seed(base, 1));
  CHECK(derive_seed(base, 1) != derive_seed(base, 2));
  CHECK(derive_seed(base, 5) == derive_seed(base, 5));
  // matches the k-th output of splitmix64 started at base
  uint64_t state = base;
  for (uint64_t k = 0; k < 10; ++k) {
    const uint64_t expected = splitmix64_next(state);
    CHECK(derive_seed(base, k) == expected);
  }
}
