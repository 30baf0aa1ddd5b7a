#pragma once

#include "apibt/instance.hpp"
#include "apibt/priorities.hpp"
#include "support.hpp"

namespace apibt::test {

// Six agents. In the bottom 1-wide corridor the orange agent (0, highest
// priority) heads right while two blue agents (1, 2) head left; PIBT lets
// orange push both blues back, while the optimal step moves orange back.
// Three green agents (3..5) in the separate top area never interact.
struct CorridorStandoff {
  std::shared_ptr<const GridMap> map = grid({
      "........",
      "........",
      "@@@@@@@@",
      "........",
  });
  Instance inst = instance(map, {
                                    {{3, 2}, {3, 7}},
                                    {{3, 3}, {3, 0}},
                                    {{3, 4}, {3, 1}},
                                    {{0, 0}, {0, 2}},
                                    {{1, 4}, {1, 6}},
                                    {{0, 7}, {1, 7}},
                                });
  PriorityState priorities = PriorityState::fixed_values({6, 5, 4, 3, 2, 1});

  static constexpr long kPibtFsum = 20;     // 5 + 5 + 5 + greens 5
  static constexpr long kOptimalFsum = 18;  // 7 + 3 + 3 + greens 5
  static constexpr long kLowerBound = 16;   // 5 + 3 + 3 + greens 5
};

}  // namespace apibt::test
