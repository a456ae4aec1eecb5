#ifndef CHEAPTALK_STRATEGY_HPP
#define CHEAPTALK_STRATEGY_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cheaptalk {

inline constexpr int kNumStrategies = 8;

// Behaviour triplet: u = pre-game signal (1 sends A, 0 stays silent N),
// p = in-game action when the opponent signalled, q = action when the
// opponent stayed silent (1 = cooperate, 0 = defect).
struct Strategy {
  uint8_t u;
  uint8_t p;
  uint8_t q;

  // 3-bit encoding 4u+2p+q; state arrays store these indices.
  constexpr int index() const { return 4 * u + 2 * p + q; }

  // Signal and both responses agree; no conditional reasoning involved.
  constexpr bool intuitive() const { return u == p && p == q; }

  friend constexpr bool operator==(const Strategy&, const Strategy&) = default;
};

constexpr Strategy strategy_from_index(int idx) {
  if (idx < 0 || idx >= kNumStrategies) {
    throw std::out_of_range("strategy index must be in 0..7, got " +
                            std::to_string(idx));
  }
  return Strategy{static_cast<uint8_t>((idx >> 2) & 1),
                  static_cast<uint8_t>((idx >> 1) & 1),
                  static_cast<uint8_t>(idx & 1)};
}

// 1 for the six conditional/deceptive types that pay the reasoning cost,
// 0 for the two consistent ones (ACC, NDD).
constexpr int reasoning_cost_indicator(const Strategy& s) {
  return s.intuitive() ? 0 : 1;
}

// Canonical label: A/N from the signal bit, then C/D for each response bit.
inline std::string strategy_name(const Strategy& s) {
  std::string name;
  name += s.u ? 'A' : 'N';
  name += s.p ? 'C' : 'D';
  name += s.q ? 'C' : 'D';
  return name;
}

// Labels by index (index 0 = NDD, index 7 = ACC).
inline constexpr std::array<const char*, 8> kStrategyNames = {
    "NDD", "NDC", "NCD", "NCC", "ADD", "ADC", "ACD", "ACC"};

// Indices in alphabetical label order ACC..NDD; CSV columns use this order.
inline constexpr std::array<int, 8> kAlphabeticalOrder = {7, 6, 5, 4,
                                                          3, 2, 1, 0};

}  // namespace cheaptalk

#endif
