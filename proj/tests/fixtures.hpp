#pragma once

#include "ahs/core.hpp"

namespace ahs::test {

// Two binary attributes, two bidders with complementary diagonal valuations.
// Rows follow instantiation order 00, 01, 10, 11.
inline ProblemInstance diagonal_instance() {
  return ProblemInstance(AttributeSpec({2, 2}), {{1, 0, 0, 1}, {0, 1, 1, 0}});
}

// One binary attribute, bidders wanting opposite instantiations at 5 and 3.
inline ProblemInstance opposed_instance() {
  return ProblemInstance(AttributeSpec({2}), {{5, 0}, {0, 3}});
}

inline NaturalBundle bundle(std::vector<int> pattern) {
  return NaturalBundle{std::move(pattern)};
}

inline Instantiation point(std::vector<int> coords) {
  return Instantiation{std::move(coords)};
}

}  // namespace ahs::test
