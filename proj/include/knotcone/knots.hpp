#pragma once

// Model complexes: built-ins, staircases, boxes, mirrors, tensor products and
// a seeded random generator.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "knotcone/cfk.hpp"

namespace knotcone::knots {

class UnknownKnot : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Alternating horizontal/vertical step lengths [h1, v1, h2, v2, ...]. Must be
// palindromic. Generators are a0..ak (corners) and b1..bk, with
// ∂b_i = U^{h_i} a_{i-1} + a_i.
struct StaircaseSpec {
  std::vector<int> steps;
};

// Acyclic box with corners at i ∈ {0, -width}, j ∈ {offset, offset - height}.
// Self-symmetric under the flip iff width == height and offset == 0.
struct BoxSpec {
  int width = 1;
  int height = 1;
  int offset = 0;
};

struct RandomSpec {
  std::uint64_t seed = 0;
  int dots = 1;
  int boxes = 0;     // draws; an asymmetric draw adds its mirror-image partner too
  int max_side = 2;
  int max_offset = 2;
};

std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);
// unknot, trefoil_rh, trefoil_lh, figure_eight, t25, t27.
cfk::CfkComplex builtin(std::string_view name);

cfk::CfkComplex staircase(const StaircaseSpec& spec, std::string name = "staircase");
cfk::CfkComplex mirror(const cfk::CfkComplex& c);
cfk::CfkComplex tensor(const cfk::CfkComplex& a, const cfk::CfkComplex& b);

// Direct sum of `dots` generators at Alexander grading 0 and the given boxes.
// Boxes that are not self-symmetric must come with their partner
// (height, width, -offset) somewhere in the list.
cfk::CfkComplex box_sum(int dots, std::span<const BoxSpec> boxes, std::string name);
cfk::CfkComplex random_complex(const RandomSpec& spec);

}  // namespace knotcone::knots
