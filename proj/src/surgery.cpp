#include "knotcone/surgery.hpp"

#include <charconv>
#include <chrono>
#include <exception>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "knotcone/obstructions.hpp"

namespace knotcone::surgery {

Slope::Slope(int p_, int q_) : p(p_), q(q_) {
  if (p <= 0 || q <= 0) throw InvalidSlope("slope must have p > 0 and q > 0");
  if (std::gcd(p, q) != 1) {
    throw InvalidSlope("slope " + std::to_string(p) + "/" + std::to_string(q) +
                       " is not in lowest terms");
  }
}

Slope Slope::parse(std::string_view text) {
  auto number = [&](std::string_view part) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw InvalidSlope("cannot parse slope '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Slope(number(text), 1);
  return Slope(number(text.substr(0, slash)), number(text.substr(slash + 1)));
}

std::string Slope::to_string() const { return std::to_string(p) + "/" + std::to_string(q); }

std::vector<Slope> coprime_grid(int pmax, int qmax) {
  std::vector<Slope> out;
  for (int p = 1; p <= pmax; ++p) {
    for (int q = 1; q <= qmax; ++q) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

int floor_div(int a, int b) {
  int d = a / b;
  if ((a % b != 0) && (a < 0)) --d;
  return d;
}

namespace {

int ceil_div(int a, int b) { return -floor_div(-a, b); }

int bound_for(int genus, Slope s) { return genus + 1 + ceil_div(s.p, s.q); }

void require_level(int genus, Slope s, int level) {
  const int bound = bound_for(genus, s);
  if (level < bound) {
    throw TruncationError("truncation level " + std::to_string(level) + " is below the bound " +
                          std::to_string(bound) + " for slope " + s.to_string());
  }
}

void require_flip(const cfk::CfkComplex& c) {
  cfk::require_valid(c);
  if (!c.has_flip()) throw cfk::FlipRequired();
}

// Solves m·x = w, or returns nullopt when w is outside the column space.
std::optional<f2::BitVector> solve(const f2::Matrix& m, const f2::BitVector& w) {
  f2::SpanSolver solver(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) solver.insert(m.column(c));
  auto red = solver.reduce(w);
  if (red.residual.any()) return std::nullopt;
  return red.combination;
}

}  // namespace

int truncation_bound(const cfk::CfkComplex& c, Slope s) { return bound_for(cfk::genus(c), s); }

// ------------------------------------------------------------------ profiles

const f2::Matrix& HatProfile::v_at(int s) const {
  if (s < smin || s > smax()) throw std::out_of_range("profile has no level " + std::to_string(s));
  return v[static_cast<std::size_t>(s - smin)];
}

const f2::Matrix& HatProfile::h_at(int s) const {
  if (s < smin || s > smax()) throw std::out_of_range("profile has no level " + std::to_string(s));
  return h[static_cast<std::size_t>(s - smin)];
}

void HatProfile::check() const {
  if (v.size() != h.size()) throw f2::DimensionError("profile needs one h map per v map");
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].rows() != b || h[k].rows() != b || v[k].cols() != h[k].cols()) {
      throw f2::DimensionError("profile map shapes disagree at level " +
                               std::to_string(smin + static_cast<int>(k)));
    }
  }
}

HatProfile hat_profile(const cfk::CfkComplex& c, int smin, int smax) {
  require_flip(c);
  HatProfile prof;
  prof.name = c.name();
  prof.genus = cfk::genus(c);
  prof.b = cfk::b_rank(c);
  prof.smin = smin;
  for (int s = smin; s <= smax; ++s) {
    const cfk::HatLevel& level = cfk::hat_level(c, s);
    prof.v.push_back(level.v.induced);
    prof.h.push_back(level.h->induced);
  }
  return prof;
}

HatProfile hat_profile(const cfk::CfkComplex& c, int margin) {
  const int g = cfk::genus(c);
  return hat_profile(c, -(g + margin), g + margin);
}

HatProfile hat_profile_for(const cfk::CfkComplex& c, Slope s) {
  const int level = truncation_bound(c, s);
  return hat_profile(c, -level, level);
}

// -------------------------------------------------------------- chain level

MappingCone build_cone(const cfk::CfkComplex& c, Slope s, int level) {
  require_flip(c);
  require_level(cfk::genus(c), s, level);
  const int qc = s.q * level;

  MappingCone cone{s, level, {}, {}, {0}, {0}, {}};
  for (int j = -qc + 1; j <= qc - 1; ++j) {
    cone.a_columns.push_back(j);
    cone.a_offset.push_back(cone.a_offset.back() +
                            cfk::hat_level(c, floor_div(j, s.q)).v.source.dim());
  }
  const cfk::RegionComplex& bhat = cfk::hat_b(c);
  const int b_first = -qc + s.p + 1;
  for (int j = b_first; j <= qc - 1; ++j) {
    cone.b_columns.push_back(j);
    cone.b_offset.push_back(cone.b_offset.back() + bhat.dim());
  }

  const std::size_t na = cone.a_dim();
  f2::Matrix d(cone.dim(), cone.dim());
  for (std::size_t k = 0; k < cone.b_columns.size(); ++k) {
    d.add_block(na + cone.b_offset[k], na + cone.b_offset[k], bhat.complex.differential());
  }
  for (std::size_t k = 0; k < cone.a_columns.size(); ++k) {
    const int j = cone.a_columns[k];
    const cfk::HatLevel& lv = cfk::hat_level(c, floor_div(j, s.q));
    d.add_block(cone.a_offset[k], cone.a_offset[k], lv.v.source.complex.differential());
    if (j >= b_first) {
      d.add_block(na + cone.b_offset[static_cast<std::size_t>(j - b_first)], cone.a_offset[k],
                  lv.v.chain);
    }
    if (j + s.p <= qc - 1) {
      d.add_block(na + cone.b_offset[static_cast<std::size_t>(j + s.p - b_first)],
                  cone.a_offset[k], lv.h->chain);
    }
  }
  cone.differential = std::move(d);
  return cone;
}

std::size_t cone_rank_chain(const cfk::CfkComplex& c, Slope s, int level) {
  const MappingCone cone = build_cone(c, s, level);
  return f2::Complex(cone.differential).homology_dimension();
}

std::size_t cone_rank_chain(const cfk::CfkComplex& c, Slope s) {
  return cone_rank_chain(c, s, truncation_bound(c, s));
}

// ---------------------------------------------------------- homology level

HomologyCone homology_cone(const HatProfile& prof, Slope s, int level) {
  prof.check();
  require_level(prof.genus, s, level);
  if (!prof.covers(-level, level - 1)) {
    throw std::out_of_range("profile does not cover truncation level " + std::to_string(level));
  }
  const int qc = s.q * level;
  HomologyCone cone{s, level, {}, {}, {0}, {0}, {}};
  for (int j = -qc + 1; j <= qc - 1; ++j) {
    cone.a_columns.push_back(j);
    cone.a_offset.push_back(cone.a_offset.back() + prof.a_dim(floor_div(j, s.q)));
  }
  const int b_first = -qc + s.p + 1;
  for (int j = b_first; j <= qc - 1; ++j) {
    cone.b_columns.push_back(j);
    cone.b_offset.push_back(cone.b_offset.back() + prof.b);
  }
  f2::Matrix d(cone.b_offset.back(), cone.a_offset.back());
  for (std::size_t k = 0; k < cone.a_columns.size(); ++k) {
    const int j = cone.a_columns[k];
    const int sj = floor_div(j, s.q);
    if (j >= b_first) {
      d.add_block(cone.b_offset[static_cast<std::size_t>(j - b_first)], cone.a_offset[k],
                  prof.v_at(sj));
    }
    if (j + s.p <= qc - 1) {
      d.add_block(cone.b_offset[static_cast<std::size_t>(j + s.p - b_first)], cone.a_offset[k],
                  prof.h_at(sj));
    }
  }
  cone.d = std::move(d);
  return cone;
}

std::size_t cone_rank_homological(const HatProfile& prof, Slope s, int level) {
  const HomologyCone cone = homology_cone(prof, s, level);
  const std::size_t r = f2::rank(cone.d);
  return (cone.d.cols() - r) + (cone.d.rows() - r);
}

std::size_t cone_rank_homological(const cfk::CfkComplex& c, Slope s) {
  return cone_rank_homological(hat_profile_for(c, s), s, truncation_bound(c, s));
}

std::size_t t_invariant(const HatProfile& prof, Slope s) {
  std::size_t t = 0;
  for (int j = 0; j < s.p; ++j) {
    t += f2::image_intersection_rank(prof.v_at(floor_div(j, s.q)),
                                     prof.h_at(floor_div(j - s.p, s.q)));
  }
  return t;
}

std::size_t t_invariant(const cfk::CfkComplex& c, Slope s) {
  return t_invariant(hat_profile_for(c, s), s);
}

namespace {

void require_hypothesis(const HatProfile& prof) {
  if (!obstructions::hypothesis_check(prof).overall) {
    throw FormulaNotApplicable("image containments fail for " + prof.name +
                               "; the closed-form count does not apply");
  }
}

std::size_t kernel_dim(const f2::Matrix& m) { return m.cols() - f2::rank(m); }

}  // namespace

std::size_t rank_formula(const HatProfile& prof, Slope s) {
  require_hypothesis(prof);
  const long long b = static_cast<long long>(prof.b);
  auto term = [&](int level) {
    const f2::Matrix& v = prof.v_at(level);
    return static_cast<long long>(kernel_dim(v)) + b - static_cast<long long>(f2::rank(v));
  };
  long long total = static_cast<long long>(s.q) * term(0);
  for (int level = 1; level <= prof.genus - 1; ++level) total += 2LL * s.q * term(level);
  total += 2LL * static_cast<long long>(t_invariant(prof, s)) - static_cast<long long>(s.p) * b;
  if (total < 0) throw InvariantViolation("rank formula evaluated to a negative number");
  return static_cast<std::size_t>(total);
}

std::size_t rank_formula(const cfk::CfkComplex& c, Slope s) {
  return rank_formula(hat_profile_for(c, s), s);
}

std::size_t kernel_rank(const HatProfile& prof, Slope s) {
  require_hypothesis(prof);
  std::size_t total = static_cast<std::size_t>(s.q) * kernel_dim(prof.v_at(0));
  for (int level = 1; level <= prof.genus - 1; ++level) {
    total += 2 * static_cast<std::size_t>(s.q) * kernel_dim(prof.v_at(level));
  }
  return total + t_invariant(prof, s);
}

std::size_t kernel_rank(const cfk::CfkComplex& c, Slope s) {
  return kernel_rank(hat_profile_for(c, s), s);
}

int nu_surrogate(const HatProfile& prof) {
  if (prof.b != 1) {
    throw NotApplicable("nu is only defined when rank H(B) = 1 (here " + std::to_string(prof.b) +
                        ")");
  }
  for (int s = std::max(0, prof.smin); s <= prof.smax(); ++s) {
    if (f2::rank(prof.v_at(s)) == prof.b) return s;
  }
  throw std::out_of_range("profile window ends before v becomes surjective");
}

int nu_surrogate(const cfk::CfkComplex& c) { return nu_surrogate(hat_profile(c, 1)); }

std::size_t t_closed_form(const HatProfile& prof, Slope s) {
  const int nu = nu_surrogate(prof);
  if (nu == 0) return static_cast<std::size_t>(s.p);
  return static_cast<std::size_t>(std::max(0, s.p - (2 * nu - 1) * s.q));
}

std::size_t t_closed_form(const cfk::CfkComplex& c, Slope s) {
  return t_closed_form(hat_profile(c, 1), s);
}

// ------------------------------------------------------------ kernel basis

KernelBasis kernel_basis_construction(const HatProfile& prof, Slope s, int level) {
  require_hypothesis(prof);
  KernelBasis out{homology_cone(prof, s, level), {}};
  const HomologyCone& cone = out.cone;
  const int qc = s.q * level;
  const int first = -qc + 1;
  const int b_first = -qc + s.p + 1;
  auto sv = [&](int col) { return floor_div(col, s.q); };
  auto place = [&](f2::BitVector& acc, int col, const f2::BitVector& x) {
    acc.xor_at(cone.a_offset[static_cast<std::size_t>(col - first)], x);
  };

  // Push h(cur) rightward until it dies or leaves the window.
  auto tail_right = [&](f2::BitVector& acc, int col, f2::BitVector cur) {
    while (col + s.p <= qc - 1) {
      const f2::BitVector target = prof.h_at(sv(col)).apply(cur);
      if (target.none()) return;
      col += s.p;
      auto y = solve(prof.v_at(sv(col)), target);
      if (!y) throw InvariantViolation("rightward cancellation failed at column " +
                                       std::to_string(col));
      place(acc, col, *y);
      cur = std::move(*y);
    }
  };
  auto tail_left = [&](f2::BitVector& acc, int col, f2::BitVector cur) {
    while (col >= b_first) {
      const f2::BitVector target = prof.v_at(sv(col)).apply(cur);
      if (target.none()) return;
      col -= s.p;
      auto z = solve(prof.h_at(sv(col)), target);
      if (!z) throw InvariantViolation("leftward cancellation failed at column " +
                                       std::to_string(col));
      place(acc, col, *z);
      cur = std::move(*z);
    }
  };

  for (int j = first; j <= qc - 1; ++j) {
    const f2::Matrix& m = j >= 0 ? prof.v_at(sv(j)) : prof.h_at(sv(j));
    for (const f2::BitVector& x : f2::kernel_basis(m)) {
      f2::BitVector acc(cone.d.cols());
      place(acc, j, x);
      if (j >= 0) {
        tail_right(acc, j, x);
      } else {
        tail_left(acc, j, x);
      }
      out.elements.push_back({KernelKind::XTilde, j, std::move(acc)});
    }
  }

  for (int j = 0; j < s.p; ++j) {
    const f2::Matrix& v = prof.v_at(sv(j));
    const f2::Matrix& h = prof.h_at(sv(j - s.p));
    f2::SpanSolver seen(prof.b, v.cols() + h.cols());
    for (const f2::BitVector& pair : f2::kernel_basis(f2::hconcat(v, h))) {
      const f2::BitVector y = pair.slice(0, v.cols());
      const f2::BitVector z = pair.slice(v.cols(), h.cols());
      const f2::BitVector w = v.apply(y);
      if (w.none() || !seen.insert(w)) continue;
      f2::BitVector acc(cone.d.cols());
      place(acc, j, y);
      place(acc, j - s.p, z);
      tail_right(acc, j, y);
      tail_left(acc, j - s.p, z);
      out.elements.push_back({KernelKind::YTilde, j, std::move(acc)});
    }
  }

  for (const KernelElement& e : out.elements) {
    if (cone.d.apply(e.coords).any()) {
      throw InvariantViolation("constructed element at column " + std::to_string(e.column) +
                               " is not in the kernel");
    }
  }
  return out;
}

KernelBasis kernel_basis_construction(const cfk::CfkComplex& c, Slope s) {
  return kernel_basis_construction(hat_profile_for(c, s), s, truncation_bound(c, s));
}

// ------------------------------------------------------------------ reports

Method parse_method(std::string_view text) {
  if (text == "oracle") return Method::Oracle;
  if (text == "formula") return Method::Formula;
  if (text == "both") return Method::Both;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

RankReport rank_report(const cfk::CfkComplex& c, Slope s, Method m) {
  const auto start = std::chrono::steady_clock::now();
  require_flip(c);
  const HatProfile prof = hat_profile_for(c, s);
  const int level = truncation_bound(c, s);

  RankReport r;
  r.name = c.name();
  r.slope = s;
  r.b = prof.b;
  r.genus = prof.genus;
  r.t = t_invariant(prof, s);
  r.hypothesis = obstructions::hypothesis_check(prof).overall;
  if (prof.b == 1) r.nu = nu_surrogate(prof);

  if (m != Method::Formula) {
    const std::size_t chain = cone_rank_chain(c, s, level);
    const std::size_t homological = cone_rank_homological(prof, s, level);
    if (chain != homological) {
      throw InvariantViolation("oracles disagree on " + c.name() + " at " + s.to_string() +
                               ": chain " + std::to_string(chain) + ", homological " +
                               std::to_string(homological));
    }
    r.oracle = chain;
  }
  if (m != Method::Oracle && r.hypothesis) r.formula = rank_formula(prof, s);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "-";
}

nlohmann::ordered_json json_of(const RankReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["p"] = r.slope.p;
  j["q"] = r.slope.q;
  j["oracle"] = r.oracle ? nlohmann::ordered_json(*r.oracle) : nlohmann::ordered_json();
  j["formula"] = r.formula ? nlohmann::ordered_json(*r.formula) : nlohmann::ordered_json();
  j["t"] = r.t;
  j["nu"] = r.nu ? nlohmann::ordered_json(*r.nu) : nlohmann::ordered_json();
  j["hypothesis"] = r.hypothesis;
  j["b"] = r.b;
  j["genus"] = r.genus;
  return j;
}

}  // namespace

std::string tsv_header() { return "name\tp\tq\toracle\tformula\tt\tnu\thypothesis\tb\tgenus"; }

std::string to_tsv(const RankReport& r) {
  std::ostringstream os;
  os << r.name << '\t' << r.slope.p << '\t' << r.slope.q << '\t' << cell(r.oracle) << '\t'
     << cell(r.formula) << '\t' << r.t << '\t' << cell(r.nu) << '\t'
     << (r.hypothesis ? "pass" : "fail") << '\t' << r.b << '\t' << r.genus;
  return os.str();
}

std::string to_json(const RankReport& r) { return json_of(r).dump(); }

std::string to_json(const std::vector<RankReport>& rs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RankReport& r : rs) arr.push_back(json_of(r));
  return arr.dump(2);
}

std::vector<RankReport> scan_serial(const cfk::CfkComplex& c, const std::vector<Slope>& slopes,
                                    Method m) {
  std::vector<RankReport> out;
  out.reserve(slopes.size());
  for (const Slope& s : slopes) out.push_back(rank_report(c, s, m));
  return out;
}

std::vector<RankReport> scan(const cfk::CfkComplex& c, const std::vector<Slope>& slopes,
                             Method m) {
  require_flip(c);
  cfk::genus(c);  // warm the shared caches before fanning out
  std::vector<RankReport> out(slopes.size());
  std::vector<std::exception_ptr> errors(slopes.size());
  const long long n = static_cast<long long>(slopes.size());
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = rank_report(c, slopes[static_cast<std::size_t>(k)], m);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace knotcone::surgery
