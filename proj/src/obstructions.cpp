#include "knotcone/obstructions.hpp"

#include <exception>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace knotcone::obstructions {

HypothesisReport hypothesis_check(const HatProfile& prof) {
  prof.check();
  const int g = prof.genus;
  if (!prof.covers(-g, g)) throw std::out_of_range("profile does not cover [-genus, genus]");
  HypothesisReport rep;
  for (int s = 0; s <= g; ++s) {
    const bool ok = f2::column_space_contains(prof.v_at(s), prof.h_at(s));
    rep.entries.push_back({s, Containment::HInV, ok});
  }
  for (int s = -g; s <= 0; ++s) {
    const bool ok = f2::column_space_contains(prof.h_at(s), prof.v_at(s));
    rep.entries.push_back({s, Containment::VInH, ok});
  }
  for (const auto& e : rep.entries) rep.overall = rep.overall && e.pass;
  return rep;
}

HypothesisReport hypothesis_check(const cfk::CfkComplex& c) {
  return hypothesis_check(surgery::hat_profile(c, 0));
}

bool detect_unknot(const cfk::CfkComplex& c) { return cfk::genus(c) == 0; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed:
      return "obstructed";
    case Verdict::Consistent:
      return "consistent";
    case Verdict::NotApplicable:
      return "not-applicable";
  }
  return "not-applicable";
}

std::string to_json(const ObstructionVerdict& v) {
  nlohmann::ordered_json j;
  j["check"] = v.check;
  j["labels"] = v.labels;
  j["ranks"] = v.ranks;
  j["verdict"] = to_string(v.verdict);
  j["reason"] = v.reason;
  return j.dump();
}

std::string to_text(const ObstructionVerdict& v) {
  std::ostringstream os;
  os << "verdict=" << to_string(v.verdict);
  for (std::size_t k = 0; k < v.ranks.size(); ++k) {
    os << ' ' << v.labels[k] << '=' << v.ranks[k];
  }
  os << "\nreason: " << v.reason;
  return os.str();
}

ObstructionVerdict cosmetic_pair_check(const cfk::CfkComplex& c, Slope r, Slope s) {
  if (r == s) throw std::invalid_argument("cosmetic check needs two distinct slopes");
  if (!c.has_flip()) throw cfk::FlipRequired();
  ObstructionVerdict out;
  out.check = "cosmetic";
  if (r.p != s.p) {
    out.verdict = Verdict::NotApplicable;
    out.reason = "numerators differ, so first homology already distinguishes " + r.to_string() +
                 " and " + s.to_string();
    return out;
  }
  const std::size_t rr = surgery::cone_rank_chain(c, r);
  const std::size_t rs = surgery::cone_rank_chain(c, s);
  out.labels = {"rank(" + r.to_string() + ")", "rank(" + s.to_string() + ")"};
  out.ranks = {rr, rs};
  if (rr != rs) {
    out.verdict = Verdict::Obstructed;
    out.reason = "total hat ranks differ";
  } else {
    out.verdict = Verdict::Consistent;
    out.reason = "total hat ranks agree; this does not show the surgeries are homeomorphic";
    if (!detect_unknot(c) && (r.p <= r.q || s.p <= s.q)) {
      out.reason += ". A nontrivial knot admits such a pair only when both slopes exceed 1";
    }
  }
  return out;
}

ObstructionVerdict complement_check(const cfk::CfkComplex& c, int q) {
  const Slope s(1, q);
  if (!c.has_flip()) throw cfk::FlipRequired();
  ObstructionVerdict out;
  out.check = "complement";
  const std::size_t rank = surgery::cone_rank_chain(c, s);
  const std::size_t b = cfk::b_rank(c);
  out.labels = {"rank(" + s.to_string() + ")", "b"};
  out.ranks = {rank, b};
  if (rank != b) {
    out.verdict = Verdict::Obstructed;
    out.reason = "surgery rank differs from the rank of the ambient manifold";
  } else {
    out.verdict = Verdict::Consistent;
    out.reason = "surgery rank equals the rank of the ambient manifold";
  }
  return out;
}

std::vector<std::pair<int, std::size_t>> monotonicity_scan(const cfk::CfkComplex& c, int p,
                                                           int qmax) {
  if (!hypothesis_check(c).overall) {
    throw surgery::FormulaNotApplicable("monotonicity needs the image containments");
  }
  std::vector<int> qs;
  for (int q = 1; q <= qmax; ++q) {
    if (std::gcd(p, q) == 1) qs.push_back(q);
  }
  std::vector<std::pair<int, std::size_t>> out(qs.size());
  std::vector<std::exception_ptr> errors(qs.size());
  const long long n = static_cast<long long>(qs.size());
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      out[i] = {qs[i], surgery::cone_rank_chain(c, Slope(p, qs[i]))};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

bool is_monotone(const std::vector<std::pair<int, std::size_t>>& scan, int p, bool strict) {
  const std::pair<int, std::size_t>* prev = nullptr;
  for (const auto& entry : scan) {
    if (entry.first < p) continue;
    if (prev) {
      if (strict ? entry.second <= prev->second : entry.second < prev->second) return false;
    }
    prev = &entry;
  }
  return true;
}

}  // namespace knotcone::obstructions
