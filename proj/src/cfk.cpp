#include "knotcone/cfk.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

namespace knotcone::cfk {

namespace {

struct Term {
  std::size_t to;
  int upower;
};

struct HatBData {
  RegionComplex region;
  f2::Homology homology;
};

}  // namespace

struct CfkComplex::Impl {
  std::string name;
  std::vector<Generator> generators;
  std::vector<DiffTerm> differential;
  std::optional<std::vector<FlipPair>> flip;

  // Resolved views; terms naming unknown ids are left out (validation reports them).
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<Term>> out;
  std::vector<std::size_t> partner;  // empty unless the flip resolves cleanly

  mutable std::once_flag validated_once;
  mutable ValidationReport validation;

  mutable std::mutex mutex;
  mutable std::map<int, std::shared_ptr<const HatLevel>> levels;
  mutable std::shared_ptr<const HatBData> hat_b;
};

namespace {

std::shared_ptr<CfkComplex::Impl> make_impl(std::string name, std::vector<Generator> generators,
                                            std::vector<DiffTerm> differential,
                                            std::optional<std::vector<FlipPair>> flip) {
  auto impl = std::make_shared<CfkComplex::Impl>();
  impl->name = std::move(name);
  impl->generators = std::move(generators);
  impl->differential = std::move(differential);
  impl->flip = std::move(flip);

  for (std::size_t g = 0; g < impl->generators.size(); ++g) {
    impl->index.emplace(impl->generators[g].id, g);
  }
  impl->out.resize(impl->generators.size());
  for (const DiffTerm& t : impl->differential) {
    auto from = impl->index.find(t.from);
    auto to = impl->index.find(t.to);
    if (from == impl->index.end() || to == impl->index.end()) continue;
    impl->out[from->second].push_back({to->second, t.upower});
  }

  if (impl->flip) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> partner(impl->generators.size(), unset);
    bool ok = true;
    auto assign = [&](std::size_t a, std::size_t b) {
      if (partner[a] != unset && partner[a] != b) ok = false;
      partner[a] = b;
    };
    for (const FlipPair& fp : *impl->flip) {
      auto a = impl->index.find(fp.from);
      auto b = impl->index.find(fp.to);
      if (a == impl->index.end() || b == impl->index.end()) {
        ok = false;
        continue;
      }
      assign(a->second, b->second);
      assign(b->second, a->second);
    }
    if (std::find(partner.begin(), partner.end(), unset) != partner.end()) ok = false;
    if (ok) impl->partner = std::move(partner);
  }
  return impl;
}

// Parity-reduced multiset of U^k·g terms.
using TermSet = std::map<std::pair<std::size_t, int>, int>;

void toggle(TermSet& set, std::size_t g, int k) {
  auto [it, inserted] = set.emplace(std::make_pair(g, k), 1);
  if (!inserted && ++it->second % 2 == 0) set.erase(it);
}

bool odd_only(TermSet& set) {
  for (auto it = set.begin(); it != set.end();) {
    it = it->second % 2 == 0 ? set.erase(it) : std::next(it);
  }
  return set.empty();
}

std::string term_text(const CfkComplex::Impl& impl, std::size_t g, int k) {
  std::ostringstream os;
  if (k != 0) os << "U^" << k << "*";
  os << impl.generators[g].id;
  return os.str();
}

ValidationReport run_validation(const CfkComplex::Impl& impl) {
  ValidationReport report;
  auto fail = [&](std::string kind, std::string msg) {
    report.issues.push_back({std::move(kind), std::move(msg)});
  };

  std::set<std::string> seen;
  for (const Generator& g : impl.generators) {
    if (!seen.insert(g.id).second) fail("duplicate-id", "generator id '" + g.id + "' repeats");
  }

  std::set<std::tuple<std::string, std::string, int>> seen_terms;
  for (const DiffTerm& t : impl.differential) {
    const std::string where = "term " + t.from + " -> U^" + std::to_string(t.upower) + "*" + t.to;
    auto from = impl.index.find(t.from);
    auto to = impl.index.find(t.to);
    if (from == impl.index.end() || to == impl.index.end()) {
      fail("unknown-id", where + " names an unknown generator");
      continue;
    }
    if (!seen_terms.emplace(t.from, t.to, t.upower).second) {
      fail("duplicate-term", where + " is listed twice");
    }
    if (t.upower < 0) fail("filtration", where + " raises the i filtration");
    const int a_from = impl.generators[from->second].alexander;
    const int a_to = impl.generators[to->second].alexander;
    if (a_to - t.upower > a_from) fail("filtration", where + " raises the j filtration");
    if (t.upower == 0 && a_to == a_from) {
      fail("reducedness", where + " preserves both filtrations");
    }
  }

  // ∂² = 0 at generator level; U-equivariance makes this the full check.
  for (std::size_t x = 0; x < impl.generators.size(); ++x) {
    TermSet sq;
    for (const Term& t1 : impl.out[x]) {
      for (const Term& t2 : impl.out[t1.to]) toggle(sq, t2.to, t1.upower + t2.upower);
    }
    if (!odd_only(sq)) {
      const auto& [g, k] = sq.begin()->first;
      fail("d-squared", "d^2(" + impl.generators[x].id + ") contains " + term_text(impl, g, k));
    }
  }

  if (!impl.flip) return report;

  const std::size_t n = impl.generators.size();
  std::vector<std::vector<std::size_t>> partners(n);
  for (const FlipPair& fp : *impl.flip) {
    auto a = impl.index.find(fp.from);
    auto b = impl.index.find(fp.to);
    if (a == impl.index.end() || b == impl.index.end()) {
      fail("flip", "flip pair " + fp.from + " <-> " + fp.to + " names an unknown generator");
      continue;
    }
    partners[a->second].push_back(b->second);
    partners[b->second].push_back(a->second);
  }
  for (std::size_t g = 0; g < n; ++g) {
    std::sort(partners[g].begin(), partners[g].end());
    partners[g].erase(std::unique(partners[g].begin(), partners[g].end()), partners[g].end());
    const std::string& id = impl.generators[g].id;
    if (partners[g].empty()) {
      fail("flip", "generator " + id + " has no flip partner");
    } else if (partners[g].size() > 1) {
      fail("flip", "generator " + id + " has more than one flip partner");
    } else {
      const std::size_t y = partners[g].front();
      if (impl.generators[y].alexander != -impl.generators[g].alexander) {
        fail("flip", "flip partner of " + id + " must have Alexander grading " +
                         std::to_string(-impl.generators[g].alexander));
      }
    }
  }
  if (impl.partner.empty()) return report;

  // ι(x) = U^{-A(x)} x'; check ι∂x = ∂ιx.
  for (std::size_t x = 0; x < n; ++x) {
    TermSet diff;
    for (const Term& t : impl.out[x]) {
      toggle(diff, impl.partner[t.to], t.upower - impl.generators[t.to].alexander);
    }
    const std::size_t xp = impl.partner[x];
    for (const Term& t : impl.out[xp]) {
      toggle(diff, t.to, t.upower - impl.generators[x].alexander);
    }
    if (!odd_only(diff)) {
      fail("flip", "flip does not commute with the differential at " + impl.generators[x].id);
    }
  }

  std::map<int, int> counts;
  for (const Generator& g : impl.generators) ++counts[g.alexander];
  for (const auto& [s, count] : counts) {
    auto mirror = counts.find(-s);
    if (mirror == counts.end() || mirror->second != count) {
      fail("symmetry", "knot Floer homology is not symmetric at Alexander grading " +
                           std::to_string(s));
    }
  }
  return report;
}

const ValidationReport& cached_validation(const CfkComplex& c) {
  const auto& impl = c.impl();
  std::call_once(impl.validated_once, [&] { impl.validation = run_validation(impl); });
  return impl.validation;
}

bool in_region(RegionTag tag, int i, int j) {
  switch (tag.kind) {
    case RegionKind::HatA:
      return std::max(i, j - tag.s) == 0;
    case RegionKind::HatB:
      return i == 0;
    case RegionKind::JLevel:
      return j == tag.s;
    case RegionKind::Quadrant:
      return i < 0 && j >= tag.s;
  }
  return false;
}

// Chain-level matrix that sends each listed source element to a target element.
f2::Matrix element_map(const RegionComplex& source, const RegionComplex& target,
                       auto&& image_of) {
  f2::Matrix m(target.dim(), source.dim());
  for (std::size_t col = 0; col < source.dim(); ++col) {
    const std::optional<LatticeElement> img = image_of(source.basis[col]);
    if (!img) continue;
    const auto row = target.index_of(*img);
    if (!row) throw std::logic_error("chain map leaves its target region");
    m.flip(*row, col);
  }
  return m;
}

void check_stage(const RegionComplex& s, const RegionComplex& t, const f2::Matrix& m,
                 const char* what) {
  if (!f2::is_chain_map(s.complex, t.complex, m)) {
    throw std::logic_error(std::string("stage is not a chain map: ") + what);
  }
}

std::shared_ptr<const HatBData> hat_b_data(const CfkComplex& c) {
  const auto& impl = c.impl();
  {
    std::lock_guard lock(impl.mutex);
    if (impl.hat_b) return impl.hat_b;
  }
  RegionComplex region = region_complex(c, RegionTag::hat_b());
  f2::Homology homology(region.complex);
  auto data = std::make_shared<const HatBData>(HatBData{std::move(region), std::move(homology)});
  std::lock_guard lock(impl.mutex);
  if (!impl.hat_b) impl.hat_b = std::move(data);
  return impl.hat_b;
}

std::shared_ptr<const HatLevel> build_level(const CfkComplex& c, int s) {
  const auto& impl = c.impl();
  const auto b = hat_b_data(c);
  RegionComplex a = region_complex(c, RegionTag::hat_a(s));
  const f2::Homology ha(a.complex);

  f2::Matrix v_chain = element_map(a, b->region, [](LatticeElement e) {
    return e.upower == 0 ? std::optional<LatticeElement>(LatticeElement{e.generator, 0})
                         : std::nullopt;
  });
  check_stage(a, b->region, v_chain, "vertical projection");
  f2::Matrix v_induced =
      f2::induced_map_on_homology(a.complex, b->region.complex, v_chain, ha, b->homology);

  auto level = std::make_shared<HatLevel>();
  level->s = s;

  if (!impl.partner.empty()) {
    const RegionComplex js = region_complex(c, RegionTag::j_level(s));
    const RegionComplex j0 = region_complex(c, RegionTag::j_level(0));
    f2::Matrix project = element_map(a, js, [&](LatticeElement e) {
      const int j = c.alexander(e.generator) - e.upower;
      return j == s ? std::optional<LatticeElement>(e) : std::nullopt;
    });
    check_stage(a, js, project, "projection onto j = s");
    f2::Matrix shift = element_map(js, j0, [&](LatticeElement e) {
      return std::optional<LatticeElement>(LatticeElement{e.generator, e.upower + s});
    });
    check_stage(js, j0, shift, "multiplication by U^s");
    f2::Matrix flip = element_map(j0, b->region, [&](LatticeElement e) {
      // ι(U^k x) = U^{k - A(x)} x'
      return std::optional<LatticeElement>(
          LatticeElement{impl.partner[e.generator], e.upower - c.alexander(e.generator)});
    });
    check_stage(j0, b->region, flip, "flip");
    f2::Matrix h_chain = flip * shift * project;
    f2::Matrix h_induced =
        f2::induced_map_on_homology(a.complex, b->region.complex, h_chain, ha, b->homology);
    level->h = FilteredChainMap{a, b->region, std::move(h_chain), std::move(h_induced)};
  }
  level->v = FilteredChainMap{std::move(a), b->region, std::move(v_chain), std::move(v_induced)};
  return level;
}

}  // namespace

CfkComplex::CfkComplex(std::string name, std::vector<Generator> generators,
                       std::vector<DiffTerm> differential,
                       std::optional<std::vector<FlipPair>> flip)
    : impl_(make_impl(std::move(name), std::move(generators), std::move(differential),
                      std::move(flip))) {}

const std::string& CfkComplex::name() const { return impl_->name; }
const std::vector<Generator>& CfkComplex::generators() const { return impl_->generators; }
const std::vector<DiffTerm>& CfkComplex::differential() const { return impl_->differential; }
const std::optional<std::vector<FlipPair>>& CfkComplex::flip() const { return impl_->flip; }

int CfkComplex::max_alexander() const {
  int m = 0;
  bool first = true;
  for (const Generator& g : generators()) {
    m = first ? g.alexander : std::max(m, g.alexander);
    first = false;
  }
  return m;
}

int CfkComplex::min_alexander() const {
  int m = 0;
  bool first = true;
  for (const Generator& g : generators()) {
    m = first ? g.alexander : std::min(m, g.alexander);
    first = false;
  }
  return m;
}

CfkComplex CfkComplex::renamed(std::string name) const {
  return CfkComplex(std::move(name), generators(), differential(), flip());
}

ValidationReport validate(const CfkComplex& c) { return cached_validation(c); }

void require_valid(const CfkComplex& c) {
  const ValidationReport& r = cached_validation(c);
  if (!r.valid()) {
    throw InvalidComplex("complex '" + c.name() + "' is invalid: " + r.issues.front().message);
  }
}

RegionTag RegionTag::parse(std::string_view text) {
  if (text == "HatB") return hat_b();
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw std::invalid_argument("unknown region tag '" + std::string(text) + "'");
  }
  const std::string_view head = text.substr(0, open);
  const std::string_view arg = text.substr(open + 1, text.size() - open - 2);
  int s = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), s);
  if (ec != std::errc() || ptr != arg.data() + arg.size()) {
    throw std::invalid_argument("bad region parameter in '" + std::string(text) + "'");
  }
  if (head == "HatA") return hat_a(s);
  if (head == "JLevel") return j_level(s);
  if (head == "Quadrant") return quadrant(s);
  throw std::invalid_argument("unknown region tag '" + std::string(text) + "'");
}

std::string RegionTag::to_string() const {
  switch (kind) {
    case RegionKind::HatA:
      return "HatA(" + std::to_string(s) + ")";
    case RegionKind::HatB:
      return "HatB";
    case RegionKind::JLevel:
      return "JLevel(" + std::to_string(s) + ")";
    case RegionKind::Quadrant:
      return "Quadrant(" + std::to_string(s) + ")";
  }
  return "?";
}

std::optional<std::size_t> RegionComplex::index_of(LatticeElement e) const {
  // Bases are sorted by (generator, upower).
  auto it = std::lower_bound(basis.begin(), basis.end(), e, [](const auto& a, const auto& b) {
    return a.generator != b.generator ? a.generator < b.generator : a.upower < b.upower;
  });
  if (it == basis.end() || !(*it == e)) return std::nullopt;
  return static_cast<std::size_t>(it - basis.begin());
}

RegionComplex region_complex(const CfkComplex& c, RegionTag tag) {
  require_valid(c);
  const auto& impl = c.impl();
  RegionComplex rc;
  rc.tag = tag;
  for (std::size_t g = 0; g < c.size(); ++g) {
    const int a = c.alexander(g);
    switch (tag.kind) {
      case RegionKind::HatA:
        rc.basis.push_back({g, std::max(0, a - tag.s)});
        break;
      case RegionKind::HatB:
        rc.basis.push_back({g, 0});
        break;
      case RegionKind::JLevel:
        rc.basis.push_back({g, a - tag.s});
        break;
      case RegionKind::Quadrant:
        for (int k = 1; k <= a - tag.s; ++k) rc.basis.push_back({g, k});
        break;
    }
  }
  f2::Matrix d(rc.dim(), rc.dim());
  for (std::size_t col = 0; col < rc.dim(); ++col) {
    const LatticeElement e = rc.basis[col];
    for (const Term& t : impl.out[e.generator]) {
      const int k = e.upower + t.upower;
      if (!in_region(tag, -k, c.alexander(t.to) - k)) continue;
      if (auto row = rc.index_of({t.to, k})) d.flip(*row, col);
    }
  }
  rc.complex = f2::Complex(std::move(d));
  return rc;
}

const HatLevel& hat_level(const CfkComplex& c, int s) {
  require_valid(c);
  const auto& impl = c.impl();
  {
    std::lock_guard lock(impl.mutex);
    if (auto it = impl.levels.find(s); it != impl.levels.end()) return *it->second;
  }
  auto level = build_level(c, s);
  std::lock_guard lock(impl.mutex);
  auto [it, inserted] = impl.levels.emplace(s, std::move(level));
  return *it->second;
}

const RegionComplex& hat_b(const CfkComplex& c) {
  require_valid(c);
  return hat_b_data(c)->region;
}

FilteredChainMap v_hat(const CfkComplex& c, int s) { return hat_level(c, s).v; }

FilteredChainMap h_hat(const CfkComplex& c, int s) {
  if (!c.has_flip()) throw FlipRequired();
  return *hat_level(c, s).h;
}

std::size_t hfk_hat(const CfkComplex& c, int s) {
  require_valid(c);
  return static_cast<std::size_t>(std::count_if(
      c.generators().begin(), c.generators().end(),
      [s](const Generator& g) { return g.alexander == s; }));
}

std::size_t b_rank(const CfkComplex& c) {
  require_valid(c);
  return hat_b_data(c)->homology.dim();
}

bool is_isomorphism(const f2::Matrix& m) {
  return m.rows() == m.cols() && f2::rank(m) == m.rows();
}

int genus(const CfkComplex& c) {
  require_valid(c);
  for (int s = c.max_alexander() + 1; s >= 1; --s) {
    if (!is_isomorphism(hat_level(c, s - 1).v.induced)) return s;
  }
  return 0;
}

std::size_t single_point_region_rank(const CfkComplex& c) {
  const int g = genus(c);
  if (g == 0) throw UndefinedRegion("the single-point region needs positive genus");
  return region_complex(c, RegionTag::quadrant(g - 1)).complex.homology_dimension();
}

CfkComplex reflected(const CfkComplex& c) {
  require_valid(c);
  if (!c.has_flip()) throw FlipRequired();
  // x^r = U^{A(x)} x sits at (0, -A(x)) in the swapped coordinates.
  std::vector<Generator> gens = c.generators();
  for (Generator& g : gens) {
    if (g.maslov) *g.maslov -= 2 * g.alexander;
    g.alexander = -g.alexander;
  }
  std::vector<DiffTerm> terms = c.differential();
  for (DiffTerm& t : terms) {
    const int a_from = c.alexander(c.impl().index.at(t.from));
    const int a_to = c.alexander(c.impl().index.at(t.to));
    t.upower += a_from - a_to;
  }
  return CfkComplex(c.name() + ".reflected", std::move(gens), std::move(terms), c.flip());
}

}  // namespace knotcone::cfk
