#ifndef CHEAPTALK_GAME_HPP
#define CHEAPTALK_GAME_HPP

#include <array>
#include <cstdint>

#include "cheaptalk/strategy.hpp"

namespace cheaptalk {

// r: dilemma strength, gamma: reasoning cost per interaction,
// beta: selection intensity, mu: exploration probability per update.
struct GameParams {
  double r = 0.02;
  double gamma = 0.1;
  double beta = 10.0;
  double mu = 1e-3;
};

// Donation-game matrix, rows = focal action (C,D), columns = opponent action.
// Normalisation b-c = 1 makes c = r and b = 1+r.
struct PayoffMatrix {
  double R;  // mutual cooperation
  double S;  // cooperator exploited
  double T;  // defector exploiting
  double P;  // mutual defection
};

constexpr PayoffMatrix donation_matrix(double r) {
  return PayoffMatrix{1.0, -r, 1.0 + r, 0.0};
}

// Action of `focal` against `opponent`: the opponent's signal selects which
// response bit applies. 1 = cooperate.
constexpr int action_of(const Strategy& focal, const Strategy& opponent) {
  return opponent.u ? focal.p : focal.q;
}

// Payoff to si when paired with sj: bilinear form over the action pair,
// minus the reasoning cost if si is deliberative. Strategies are
// deterministic, so this is an exact value rather than an expectation.
inline double pair_payoff(const Strategy& si, const Strategy& sj,
                          const GameParams& g) {
  const PayoffMatrix m = donation_matrix(g.r);
  const double x = action_of(si, sj);
  const double y = action_of(sj, si);
  const double base = x * y * m.R + x * (1.0 - y) * m.S +
                      (1.0 - x) * y * m.T + (1.0 - x) * (1.0 - y) * m.P;
  return base - g.gamma * reasoning_cost_indicator(si);
}

// All 64 ordered pair payoffs, indexed [si*8 + sj]. Computed once per
// configuration and shared read-only; the update loop only does lookups.
struct PayoffTable {
  std::array<double, 64> v{};
  double at(int si, int sj) const { return v[si * 8 + sj]; }
};

inline PayoffTable payoff_table(const GameParams& g) {
  PayoffTable t;
  for (int i = 0; i < kNumStrategies; ++i) {
    for (int j = 0; j < kNumStrategies; ++j) {
      t.v[i * 8 + j] =
          pair_payoff(strategy_from_index(i), strategy_from_index(j), g);
    }
  }
  return t;
}

// Action bits for all ordered pairs, indexed [si*8 + sj]; payoff-independent.
struct ActionTable {
  std::array<uint8_t, 64> bit{};
  int at(int si, int sj) const { return bit[si * 8 + sj]; }
};

constexpr ActionTable make_action_table() {
  ActionTable t;
  for (int i = 0; i < kNumStrategies; ++i) {
    for (int j = 0; j < kNumStrategies; ++j) {
      t.bit[i * 8 + j] = static_cast<uint8_t>(
          action_of(strategy_from_index(i), strategy_from_index(j)));
    }
  }
  return t;
}

inline constexpr ActionTable kActionTable = make_action_table();

}  // namespace cheaptalk

#endif
