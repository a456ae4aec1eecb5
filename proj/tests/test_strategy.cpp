#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cheaptalk/strategy.hpp"

using namespace cheaptalk;

TEST_CASE("index encoding is a bijection over the 8 types") {
  for (int idx = 0; idx < 8; ++idx) {
    const Strategy s = strategy_from_index(idx);
    CHECK(s.index() == idx);
    CHECK(s.u <= 1);
    CHECK(s.p <= 1);
    CHECK(s.q <= 1);
  }
  CHECK(strategy_from_index(7) == Strategy{1, 1, 1});
  CHECK(strategy_from_index(0) == Strategy{0, 0, 0});
  CHECK(strategy_from_index(5) == Strategy{1, 0, 1});
}

TEST_CASE("out-of-range indices are rejected") {
  CHECK_THROWS_AS(strategy_from_index(-1), std::out_of_range);
  CHECK_THROWS_AS(strategy_from_index(8), std::out_of_range);
}

TEST_CASE("reasoning cost marks exactly the two consistent types") {
  CHECK(reasoning_cost_indicator(Strategy{1, 1, 1}) == 0);  // ACC
  CHECK(reasoning_cost_indicator(Strategy{0, 0, 0}) == 0);  // NDD
  CHECK(reasoning_cost_indicator(Strategy{1, 1, 0}) == 1);  // ACD
  int costly = 0;
  for (int idx = 0; idx < 8; ++idx) {
    costly += reasoning_cost_indicator(strategy_from_index(idx));
  }
  CHECK(costly == 6);
}

TEST_CASE("labels follow the A/N + C/D convention") {
  CHECK(strategy_name(Strategy{0, 0, 1}) == "NDC");
  CHECK(strategy_name(Strategy{1, 0, 0}) == "ADD");
  CHECK(strategy_name(Strategy{0, 1, 1}) == "NCC");

  // full table: index, label, type
  const struct {
    int idx;
    const char* label;
    bool intuitive;
  } rows[] = {
      {7, "ACC", true},  {6, "ACD", false}, {5, "ADC", false},
      {4, "ADD", false}, {3, "NCC", false}, {2, "NCD", false},
      {1, "NDC", false}, {0, "NDD", true},
  };
  for (const auto& row : rows) {
    const Strategy s = strategy_from_index(row.idx);
    CHECK(strategy_name(s) == row.label);
    CHECK(kStrategyNames[row.idx] == strategy_name(s));
    CHECK(s.intuitive() == row.intuitive);
  }
}

TEST_CASE("alphabetical order helper matches the labels") {
  for (std::size_t c = 0; c + 1 < kAlphabeticalOrder.size(); ++c) {
    const std::string a = kStrategyNames[kAlphabeticalOrder[c]];
    const std::string b = kStrategyNames[kAlphabeticalOrder[c + 1]];
    CHECK(a < b);
  }
}
