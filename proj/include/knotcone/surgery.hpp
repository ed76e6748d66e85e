#pragma once

// Hat-flavor mapping cone for p/q surgery and the quantities read off it.
//
// Column j of the A-side holds Â_{⌊j/q⌋}, column j of the B-side holds B̂.
// The v-block sends A_j to B_j and the h-block sends A_j to B_{j+p}. At
// truncation level c the A-side runs over j ∈ [-qc+1, qc-1] and the B-side
// over j ∈ [-qc+p+1, qc-1]; blocks whose target column is missing are dropped.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "knotcone/cfk.hpp"
#include "knotcone/f2.hpp"

namespace knotcone::surgery {

class InvalidSlope : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TruncationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The image containments behind the closed-form count fail.
class FormulaNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ν and its closed form are only defined when b = 1.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Slope {
  int p = 1;
  int q = 1;

  // Throws InvalidSlope unless p, q > 0 and gcd(p, q) = 1.
  Slope(int p, int q);
  // "p/q" or "p" (meaning p/1).
  static Slope parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const Slope&) const = default;
  auto operator<=>(const Slope&) const = default;
};

// All coprime (p, q) with 1 <= p <= pmax and 1 <= q <= qmax, sorted by (p, q).
std::vector<Slope> coprime_grid(int pmax, int qmax);

// Floor toward negative infinity; b > 0.
int floor_div(int a, int b);

int truncation_bound(const cfk::CfkComplex& c, Slope s);

// Homology-level data of a complex over a window of s values: the induced
// maps (v̂_s)_* and (ĥ_s)_* in fixed bases. Profiles can also be assembled by
// hand, which is how the formula-not-applicable paths are exercised.
struct HatProfile {
  std::string name;
  int genus = 0;
  std::size_t b = 0;
  int smin = 0;
  std::vector<f2::Matrix> v;  // v[s - smin]: H(Â_s) -> H(B̂)
  std::vector<f2::Matrix> h;  // h[s - smin]

  int smax() const { return smin + static_cast<int>(v.size()) - 1; }
  bool covers(int lo, int hi) const { return lo >= smin && hi <= smax(); }
  // Throw std::out_of_range outside [smin, smax].
  const f2::Matrix& v_at(int s) const;
  const f2::Matrix& h_at(int s) const;
  std::size_t a_dim(int s) const { return v_at(s).cols(); }

  // Checks shapes; throws f2::DimensionError.
  void check() const;
};

// Window [-(genus + margin), genus + margin]; requires a flip.
HatProfile hat_profile(const cfk::CfkComplex& c, int margin);
HatProfile hat_profile(const cfk::CfkComplex& c, int smin, int smax);

// Window wide enough for every slope with p/q <= max_ratio (rounded up).
HatProfile hat_profile_for(const cfk::CfkComplex& c, Slope s);

// ------------------------------------------------------------------ the cone

struct MappingCone {
  Slope slope{1, 1};
  int level = 0;
  std::vector<int> a_columns;  // j values, ascending
  std::vector<int> b_columns;
  std::vector<std::size_t> a_offset;  // chain offsets; size a_columns + 1
  std::vector<std::size_t> b_offset;  // relative to the start of the B-side
  f2::Matrix differential;            // [[dA, 0], [D, dB]]

  std::size_t a_dim() const { return a_offset.back(); }
  std::size_t b_dim() const { return b_offset.back(); }
  std::size_t dim() const { return a_dim() + b_dim(); }
};

MappingCone build_cone(const cfk::CfkComplex& c, Slope s, int level);

// Chain-level homology of the cone; never looks at induced maps.
std::size_t cone_rank_chain(const cfk::CfkComplex& c, Slope s);
std::size_t cone_rank_chain(const cfk::CfkComplex& c, Slope s, int level);

// The block matrix D̂_* between the homologies of the A-side and B-side.
struct HomologyCone {
  Slope slope{1, 1};
  int level = 0;
  std::vector<int> a_columns;
  std::vector<int> b_columns;
  std::vector<std::size_t> a_offset;
  std::vector<std::size_t> b_offset;
  f2::Matrix d;  // rows: B-side homology, cols: A-side homology
};

HomologyCone homology_cone(const HatProfile& prof, Slope s, int level);

// dim ker D̂_* + dim coker D̂_*.
std::size_t cone_rank_homological(const HatProfile& prof, Slope s, int level);
std::size_t cone_rank_homological(const cfk::CfkComplex& c, Slope s);

std::size_t t_invariant(const HatProfile& prof, Slope s);
std::size_t t_invariant(const cfk::CfkComplex& c, Slope s);

// Throw FormulaNotApplicable when the hypothesis containments fail.
std::size_t rank_formula(const HatProfile& prof, Slope s);
std::size_t rank_formula(const cfk::CfkComplex& c, Slope s);
std::size_t kernel_rank(const HatProfile& prof, Slope s);
std::size_t kernel_rank(const cfk::CfkComplex& c, Slope s);

// Least s >= 0 with (v̂_s)_* surjective; NotApplicable unless b = 1.
int nu_surrogate(const HatProfile& prof);
int nu_surrogate(const cfk::CfkComplex& c);
std::size_t t_closed_form(const HatProfile& prof, Slope s);
std::size_t t_closed_form(const cfk::CfkComplex& c, Slope s);

// ------------------------------------------------------------ kernel basis

enum class KernelKind { XTilde, YTilde };

struct KernelElement {
  KernelKind kind = KernelKind::XTilde;
  int column = 0;      // where the leading class sits
  f2::BitVector coords;  // in the A-side homology of the cone
};

struct KernelBasis {
  HomologyCone cone;
  std::vector<KernelElement> elements;
};

KernelBasis kernel_basis_construction(const HatProfile& prof, Slope s, int level);
KernelBasis kernel_basis_construction(const cfk::CfkComplex& c, Slope s);

// ------------------------------------------------------------------ reports

enum class Method { Oracle, Formula, Both };
Method parse_method(std::string_view text);

struct RankReport {
  std::string name;
  Slope slope{1, 1};
  std::optional<std::size_t> oracle;
  std::optional<std::size_t> formula;
  std::size_t t = 0;
  std::optional<int> nu;
  bool hypothesis = false;
  std::size_t b = 0;
  int genus = 0;
  double seconds = 0.0;  // wall time, not serialized

  // Both present and different.
  bool mismatch() const { return oracle && formula && *oracle != *formula; }
};

// With Method::Oracle or Both the chain and homological oracles are both run
// and must agree (InvariantViolation otherwise).
RankReport rank_report(const cfk::CfkComplex& c, Slope s, Method m = Method::Both);

std::string tsv_header();
std::string to_tsv(const RankReport& r);
std::string to_json(const RankReport& r);
std::string to_json(const std::vector<RankReport>& rs);

// Reports for every slope, in the given order. The parallel version fills the
// result vector with an OpenMP loop; the serial one is the reference.
std::vector<RankReport> scan(const cfk::CfkComplex& c, const std::vector<Slope>& slopes,
                             Method m = Method::Both);
std::vector<RankReport> scan_serial(const cfk::CfkComplex& c, const std::vector<Slope>& slopes,
                                    Method m = Method::Both);

}  // namespace knotcone::surgery
