#include "knotcone/knots.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace knotcone::knots {

using cfk::CfkComplex;
using cfk::DiffTerm;
using cfk::FlipPair;
using cfk::Generator;

namespace {

const std::vector<std::string> kBuiltins = {"unknot",       "trefoil_rh", "trefoil_lh",
                                            "figure_eight", "t25",        "t27"};

// Partner map from a flip list, keyed by generator id.
std::map<std::string, std::string> partner_map(const CfkComplex& c) {
  if (!c.flip()) throw cfk::FlipRequired();
  std::map<std::string, std::string> m;
  for (const FlipPair& fp : *c.flip()) {
    m[fp.from] = fp.to;
    m[fp.to] = fp.from;
  }
  return m;
}

std::string pair_id(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

std::vector<std::string> builtin_names() { return kBuiltins; }

bool is_builtin(std::string_view name) {
  return std::find(kBuiltins.begin(), kBuiltins.end(), name) != kBuiltins.end();
}

CfkComplex builtin(std::string_view name) {
  if (name == "unknot") {
    return CfkComplex("unknot", {{"x", 0, 0}}, {}, std::vector<FlipPair>{{"x", "x"}});
  }
  if (name == "trefoil_rh") {
    return CfkComplex("trefoil_rh", {{"a", 1, 0}, {"b", 0, -1}, {"c", -1, -2}},
                      {{"b", "a", 1}, {"b", "c", 0}},
                      std::vector<FlipPair>{{"a", "c"}, {"b", "b"}});
  }
  if (name == "trefoil_lh") return mirror(builtin("trefoil_rh")).renamed("trefoil_lh");
  if (name == "figure_eight") {
    return CfkComplex(
        "figure_eight", {{"b1", 0, 0}, {"b2", -1, -1}, {"b3", 1, 1}, {"b4", 0, 0}, {"e", 0, 0}},
        {{"b1", "b2", 0}, {"b1", "b3", 1}, {"b2", "b4", 1}, {"b3", "b4", 0}},
        std::vector<FlipPair>{{"b1", "b1"}, {"b2", "b3"}, {"b4", "b4"}, {"e", "e"}});
  }
  if (name == "t25") return staircase({{1, 1, 1, 1}}, "t25");
  if (name == "t27") return staircase({{1, 1, 1, 1, 1, 1}}, "t27");
  throw UnknownKnot("unknown built-in knot '" + std::string(name) + "'");
}

CfkComplex staircase(const StaircaseSpec& spec, std::string name) {
  const auto& st = spec.steps;
  if (st.size() % 2 != 0) throw std::invalid_argument("staircase needs an even number of steps");
  if (std::any_of(st.begin(), st.end(), [](int x) { return x <= 0; })) {
    throw std::invalid_argument("staircase steps must be positive");
  }
  if (!std::equal(st.begin(), st.end(), st.rbegin())) {
    throw std::invalid_argument("staircase steps must be palindromic");
  }
  const std::size_t k = st.size() / 2;
  int g = 0;
  for (std::size_t i = 0; i < k; ++i) g += st[2 * i];

  auto a = [](std::size_t i) { return "a" + std::to_string(i); };
  auto b = [](std::size_t i) { return "b" + std::to_string(i); };

  std::vector<Generator> gens;
  std::vector<DiffTerm> terms;
  int alex = g;
  gens.push_back({a(0), alex, std::nullopt});
  for (std::size_t i = 1; i <= k; ++i) {
    const int h = st[2 * i - 2];
    const int v = st[2 * i - 1];
    alex -= h;
    gens.push_back({b(i), alex, std::nullopt});
    alex -= v;
    gens.push_back({a(i), alex, std::nullopt});
    terms.push_back({b(i), a(i - 1), h});
    terms.push_back({b(i), a(i), 0});
  }
  std::vector<FlipPair> flip;
  for (std::size_t i = 0; 2 * i <= k; ++i) flip.push_back({a(i), a(k - i)});
  for (std::size_t i = 1; 2 * i <= k + 1; ++i) flip.push_back({b(i), b(k + 1 - i)});
  return CfkComplex(std::move(name), std::move(gens), std::move(terms), std::move(flip));
}

CfkComplex mirror(const CfkComplex& c) {
  std::vector<Generator> gens = c.generators();
  for (Generator& g : gens) {
    g.alexander = -g.alexander;
    if (g.maslov) g.maslov = -*g.maslov;
  }
  std::vector<DiffTerm> terms;
  terms.reserve(c.differential().size());
  for (const DiffTerm& t : c.differential()) terms.push_back({t.to, t.from, t.upower});
  return CfkComplex(c.name() + "_mirror", std::move(gens), std::move(terms), c.flip());
}

CfkComplex tensor(const CfkComplex& a, const CfkComplex& b) {
  cfk::require_valid(a);
  cfk::require_valid(b);
  const auto pa = partner_map(a);
  const auto pb = partner_map(b);

  std::vector<Generator> gens;
  for (const Generator& x : a.generators()) {
    for (const Generator& y : b.generators()) {
      std::optional<int> m;
      if (x.maslov && y.maslov) m = *x.maslov + *y.maslov;
      gens.push_back({pair_id(x.id, y.id), x.alexander + y.alexander, m});
    }
  }
  std::vector<DiffTerm> terms;
  for (const Generator& x : a.generators()) {
    for (const Generator& y : b.generators()) {
      const std::string src = pair_id(x.id, y.id);
      for (const DiffTerm& t : a.differential()) {
        if (t.from == x.id) terms.push_back({src, pair_id(t.to, y.id), t.upower});
      }
      for (const DiffTerm& t : b.differential()) {
        if (t.from == y.id) terms.push_back({src, pair_id(x.id, t.to), t.upower});
      }
    }
  }
  std::vector<FlipPair> flip;
  for (const Generator& x : a.generators()) {
    for (const Generator& y : b.generators()) {
      const std::string self = pair_id(x.id, y.id);
      const std::string other = pair_id(pa.at(x.id), pb.at(y.id));
      if (self <= other) flip.push_back({self, other});
    }
  }
  return CfkComplex(a.name() + "#" + b.name(), std::move(gens), std::move(terms),
                    std::move(flip));
}

CfkComplex box_sum(int dots, std::span<const BoxSpec> boxes, std::string name) {
  if (dots < 0) throw std::invalid_argument("dot count must be nonnegative");
  std::vector<Generator> gens;
  std::vector<DiffTerm> terms;
  std::vector<FlipPair> flip;
  for (int d = 0; d < dots; ++d) {
    const std::string id = "d" + std::to_string(d);
    gens.push_back({id, 0, std::nullopt});
    flip.push_back({id, id});
  }

  auto corner = [](std::size_t box, int k) {
    return "x" + std::to_string(box) + "_" + std::to_string(k);
  };
  for (std::size_t n = 0; n < boxes.size(); ++n) {
    const auto [w, h, a] = boxes[n];
    if (w <= 0 || h <= 0) throw std::invalid_argument("box sides must be positive");
    gens.push_back({corner(n, 1), a, std::nullopt});
    gens.push_back({corner(n, 2), a - h, std::nullopt});
    gens.push_back({corner(n, 3), a + w, std::nullopt});
    gens.push_back({corner(n, 4), a - h + w, std::nullopt});
    terms.push_back({corner(n, 1), corner(n, 2), 0});
    terms.push_back({corner(n, 1), corner(n, 3), w});
    terms.push_back({corner(n, 2), corner(n, 4), w});
    terms.push_back({corner(n, 3), corner(n, 4), 0});
  }

  // Pair every box with its reflection (height, width, -offset).
  std::vector<bool> used(boxes.size(), false);
  for (std::size_t n = 0; n < boxes.size(); ++n) {
    if (used[n]) continue;
    const BoxSpec& bx = boxes[n];
    std::size_t m = n;
    const bool self = bx.width == bx.height && bx.offset == 0;
    if (!self) {
      m = boxes.size();
      for (std::size_t k = n + 1; k < boxes.size(); ++k) {
        if (!used[k] && boxes[k].width == bx.height && boxes[k].height == bx.width &&
            boxes[k].offset == -bx.offset) {
          m = k;
          break;
        }
      }
      if (m == boxes.size()) {
        throw std::invalid_argument("box without a flip partner in box_sum");
      }
    }
    used[n] = used[m] = true;
    flip.push_back({corner(n, 1), corner(m, 1)});
    flip.push_back({corner(n, 2), corner(m, 3)});
    if (!self) flip.push_back({corner(n, 3), corner(m, 2)});
    flip.push_back({corner(n, 4), corner(m, 4)});
  }
  return CfkComplex(std::move(name), std::move(gens), std::move(terms), std::move(flip));
}

CfkComplex random_complex(const RandomSpec& spec) {
  if (spec.dots < 1) throw std::invalid_argument("random complexes need at least one dot");
  if (spec.boxes < 0 || spec.max_side < 1 || spec.max_offset < 0) {
    throw std::invalid_argument("bad random complex parameters");
  }
  // mt19937_64 output is fixed by the standard; distributions are not, so
  // draws use plain modular reduction.
  std::mt19937_64 rng(spec.seed);
  auto draw = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  std::vector<BoxSpec> boxes;
  for (int i = 0; i < spec.boxes; ++i) {
    BoxSpec b;
    b.width = 1 + draw(spec.max_side);
    b.height = draw(2) == 0 ? b.width : 1 + draw(spec.max_side);
    b.offset = draw(2) == 0 ? 0 : draw(2 * spec.max_offset + 1) - spec.max_offset;
    boxes.push_back(b);
    if (!(b.width == b.height && b.offset == 0)) boxes.push_back({b.height, b.width, -b.offset});
  }
  return box_sum(spec.dots, boxes, "random-" + std::to_string(spec.seed));
}

}  // namespace knotcone::knots
