#pragma once

// Image-containment hypothesis and the rank obstructions built on it.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotcone/cfk.hpp"
#include "knotcone/surgery.hpp"

namespace knotcone::obstructions {

using surgery::HatProfile;
using surgery::Slope;

enum class Containment {
  HInV,  // im(ĥ_s)_* ⊆ im(v̂_s)_*, checked for 0 <= s <= g
  VInH,  // im(v̂_s)_* ⊆ im(ĥ_s)_*, checked for -g <= s <= 0
};

struct HypothesisEntry {
  int s = 0;
  Containment containment = Containment::HInV;
  bool pass = false;
};

struct HypothesisReport {
  std::vector<HypothesisEntry> entries;
  bool overall = true;
};

HypothesisReport hypothesis_check(const HatProfile& prof);
HypothesisReport hypothesis_check(const cfk::CfkComplex& c);

bool detect_unknot(const cfk::CfkComplex& c);

enum class Verdict { Obstructed, Consistent, NotApplicable };
std::string_view to_string(Verdict v);

struct ObstructionVerdict {
  std::string check;                // "cosmetic" or "complement"
  std::vector<std::string> labels;  // what each rank refers to
  std::vector<std::size_t> ranks;
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
};

std::string to_json(const ObstructionVerdict& v);
std::string to_text(const ObstructionVerdict& v);

// Throws std::invalid_argument when r == s.
ObstructionVerdict cosmetic_pair_check(const cfk::CfkComplex& c, Slope r, Slope s);
// Compares the rank at 1/q with b.
ObstructionVerdict complement_check(const cfk::CfkComplex& c, int q);

// Oracle ranks at p/q for coprime q <= qmax, ascending in q. Throws
// surgery::FormulaNotApplicable when the hypothesis fails.
std::vector<std::pair<int, std::size_t>> monotonicity_scan(const cfk::CfkComplex& c, int p,
                                                           int qmax);

// Whether the entries with q >= p are nondecreasing (or strictly increasing).
bool is_monotone(const std::vector<std::pair<int, std::size_t>>& scan, int p, bool strict);

}  // namespace knotcone::obstructions
