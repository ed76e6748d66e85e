#pragma once

// Bifiltered knot Floer complexes and the finite region complexes cut out of
// them.
//
// A complex is given by finitely many generators over F[U, U^-1]. The copy
// U^k·x of a generator x sits at lattice point (i, j) = (-k, A(x) - k), where
// A(x) is the Alexander grading. A differential term (x -> y, k) means ∂x
// contains U^k·y. Complexes must be reduced: every term strictly lowers at
// least one of the two filtrations.
//
// Region complexes are subquotients: a basis element (x, k) belongs to a
// region when its lattice point does, and differential components that leave
// the region are dropped. Every named region is a difference of two
// downward-closed sets, so this is always a complex.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "knotcone/f2.hpp"

namespace knotcone::cfk {

struct Generator {
  std::string id;
  int alexander = 0;
  std::optional<int> maslov;  // carried through I/O only

  bool operator==(const Generator&) const = default;
};

struct DiffTerm {
  std::string from;
  std::string to;
  int upower = 0;

  bool operator==(const DiffTerm&) const = default;
};

// Unordered pairing {from, to}; from == to marks a fixed generator. Listing a
// pair in both directions is allowed.
struct FlipPair {
  std::string from;
  std::string to;

  bool operator==(const FlipPair&) const = default;
};

class InvalidComplex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FlipRequired : public std::runtime_error {
 public:
  FlipRequired() : std::runtime_error("operation requires a complex with a flip involution") {}
};

class UndefinedRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CfkComplex {
 public:
  CfkComplex(std::string name, std::vector<Generator> generators,
             std::vector<DiffTerm> differential,
             std::optional<std::vector<FlipPair>> flip = std::nullopt);

  const std::string& name() const;
  const std::vector<Generator>& generators() const;
  const std::vector<DiffTerm>& differential() const;
  const std::optional<std::vector<FlipPair>>& flip() const;
  bool has_flip() const { return flip().has_value(); }

  std::size_t size() const { return generators().size(); }
  int alexander(std::size_t g) const { return generators()[g].alexander; }
  int max_alexander() const;
  int min_alexander() const;

  CfkComplex renamed(std::string name) const;

  // Implementation detail shared by copies; holds the memoized region data.
  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------- validation

struct ValidationIssue {
  std::string kind;  // e.g. "duplicate-id", "filtration", "reducedness", "d-squared"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
};

ValidationReport validate(const CfkComplex& c);

// Throws InvalidComplex listing the first failure when `c` is not valid.
void require_valid(const CfkComplex& c);

// ------------------------------------------------------------------- regions

enum class RegionKind {
  HatA,      // max(i, j - s) = 0
  HatB,      // i = 0
  JLevel,    // j = s
  Quadrant,  // i < 0 and j >= s
};

struct RegionTag {
  RegionKind kind = RegionKind::HatB;
  int s = 0;

  static RegionTag hat_a(int s) { return {RegionKind::HatA, s}; }
  static RegionTag hat_b() { return {RegionKind::HatB, 0}; }
  static RegionTag j_level(int s) { return {RegionKind::JLevel, s}; }
  static RegionTag quadrant(int s) { return {RegionKind::Quadrant, s}; }

  // Accepts "HatA(3)", "HatB", "JLevel(-1)", "Quadrant(2)"; throws
  // std::invalid_argument otherwise.
  static RegionTag parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const RegionTag&) const = default;
};

// U^upower · generator; may have a negative power inside JLevel regions.
struct LatticeElement {
  std::size_t generator = 0;
  int upower = 0;

  bool operator==(const LatticeElement&) const = default;
};

struct RegionComplex {
  RegionTag tag;
  std::vector<LatticeElement> basis;
  f2::Complex complex;

  std::size_t dim() const { return basis.size(); }
  std::optional<std::size_t> index_of(LatticeElement e) const;
};

RegionComplex region_complex(const CfkComplex& c, RegionTag tag);

// A chain map between region complexes together with its matrix on homology
// (in the pivot bases of f2::Homology).
struct FilteredChainMap {
  RegionComplex source;
  RegionComplex target;
  f2::Matrix chain;
  f2::Matrix induced;
};

// Vertical projection Â_s -> B̂.
FilteredChainMap v_hat(const CfkComplex& c, int s);
// Â_s -> JLevel(s) -> (U^s) JLevel(0) -> (flip) B̂. Throws FlipRequired.
FilteredChainMap h_hat(const CfkComplex& c, int s);

// Memoized per-level data; safe to call from several threads.
struct HatLevel {
  int s = 0;
  FilteredChainMap v;
  std::optional<FilteredChainMap> h;  // present iff the complex has a flip
};
const HatLevel& hat_level(const CfkComplex& c, int s);
const RegionComplex& hat_b(const CfkComplex& c);

// ------------------------------------------------------------ scalar invariants

std::size_t hfk_hat(const CfkComplex& c, int s);
std::size_t b_rank(const CfkComplex& c);
int genus(const CfkComplex& c);
std::size_t single_point_region_rank(const CfkComplex& c);

// Exchanges the roles of the two filtrations. Generator x keeps its id and
// gets Alexander grading -A(x); requires a flip, which is carried over.
CfkComplex reflected(const CfkComplex& c);

bool is_isomorphism(const f2::Matrix& m);

}  // namespace knotcone::cfk
