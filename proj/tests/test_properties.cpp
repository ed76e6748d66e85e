// Invariants checked over the built-in models and 100 seeded random complexes.

#include <map>
#include <numeric>

#include "doctest.h"
#include "knotcone/knots.hpp"
#include "knotcone/obstructions.hpp"
#include "knotcone/surgery.hpp"
#include "support.hpp"

using namespace knotcone;
using surgery::Slope;

namespace {

std::vector<cfk::CfkComplex> corpus() {
  auto out = testsupport::builtins();
  for (std::uint64_t seed = 0; seed < 100; ++seed) out.push_back(testsupport::random_knot(seed));
  return out;
}

const std::vector<cfk::CfkComplex>& shared_corpus() {
  static const auto c = corpus();
  return c;
}

std::size_t kernel_dim(const f2::Matrix& m) { return m.cols() - f2::rank(m); }

}  // namespace

TEST_SUITE("properties cfk") {
  TEST_CASE("symmetry between v at s and h at -s") {
    for (const auto& c : shared_corpus()) {
      for (int s = -5; s <= 5; ++s) {
        const auto& v = cfk::v_hat(c, s).induced;
        const auto& h = cfk::h_hat(c, -s).induced;
        CHECK(f2::rank(v) == f2::rank(h));
        CHECK(kernel_dim(v) == kernel_dim(h));
      }
    }
  }

  TEST_CASE("image monotonicity") {
    for (const auto& c : shared_corpus()) {
      for (int s = -5; s < 5; ++s) {
        const auto& v0 = cfk::v_hat(c, s).induced;
        const auto& v1 = cfk::v_hat(c, s + 1).induced;
        CHECK(f2::image_intersection_rank(v0, v1) == f2::rank(v0));
        const auto& h0 = cfk::h_hat(c, s).induced;
        const auto& h1 = cfk::h_hat(c, s + 1).induced;
        CHECK(f2::image_intersection_rank(h0, h1) == f2::rank(h1));
      }
    }
  }

  TEST_CASE("finiteness and stabilization thresholds") {
    for (const auto& c : shared_corpus()) {
      const int g = cfk::genus(c);
      const std::size_t b = cfk::b_rank(c);
      for (int s = g; s <= g + 3; ++s) {
        CHECK(cfk::is_isomorphism(cfk::v_hat(c, s).induced));
        CHECK(cfk::is_isomorphism(cfk::h_hat(c, -s).induced));
        CHECK(cfk::v_hat(c, s).source.complex.homology_dimension() == b);
        CHECK(cfk::v_hat(c, -s).source.complex.homology_dimension() == b);
      }
      for (int s = g + 1; s <= g + 3; ++s) {
        CHECK(cfk::h_hat(c, s).induced.is_zero());
        CHECK(cfk::v_hat(c, -s).induced.is_zero());
      }
      if (g > 0) CHECK_FALSE(cfk::is_isomorphism(cfk::v_hat(c, g - 1).induced));
    }
  }

  TEST_CASE("knot Floer symmetry and the single point region") {
    for (const auto& c : shared_corpus()) {
      for (int s = 0; s <= 5; ++s) CHECK(cfk::hfk_hat(c, s) == cfk::hfk_hat(c, -s));
      const int g = cfk::genus(c);
      if (g >= 1) {
        CHECK(cfk::single_point_region_rank(c) == cfk::hfk_hat(c, g));
        CHECK(cfk::hfk_hat(c, g) > 0);
      }
    }
  }

  TEST_CASE("flips induce isomorphisms on region homology") {
    // ι(U^k x) = U^{k - A(x)} x' carries JLevel(0) onto HatB.
    for (const auto& c : shared_corpus()) {
      std::map<std::string, std::string> partner;
      for (const auto& fp : *c.flip()) {
        partner[fp.from] = fp.to;
        partner[fp.to] = fp.from;
      }
      std::map<std::string, std::size_t> index;
      for (std::size_t g = 0; g < c.size(); ++g) index[c.generators()[g].id] = g;
      const auto j0 = cfk::region_complex(c, cfk::RegionTag::j_level(0));
      const auto b = cfk::region_complex(c, cfk::RegionTag::hat_b());
      f2::Matrix f(b.dim(), j0.dim());
      for (std::size_t col = 0; col < j0.dim(); ++col) {
        const auto e = j0.basis[col];
        const std::size_t y = index.at(partner.at(c.generators()[e.generator].id));
        const auto row = b.index_of({y, e.upower - c.alexander(e.generator)});
        REQUIRE(row.has_value());
        f.set(*row, col);
      }
      CHECK(cfk::is_isomorphism(f2::induced_map_on_homology(j0.complex, b.complex, f)));
    }
  }

  TEST_CASE("hypothesis holds on every flip-equipped model") {
    for (const auto& c : shared_corpus()) CHECK(obstructions::hypothesis_check(c).overall);
  }
}

TEST_SUITE("properties surgery") {
  TEST_CASE("oracles and formula agree on the random corpus") {
    const auto slopes = surgery::coprime_grid(8, 8);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto c = testsupport::random_knot(seed);
      for (const Slope& s : slopes) {
        const auto prof = surgery::hat_profile_for(c, s);
        const int level = surgery::truncation_bound(c, s);
        const std::size_t chain = surgery::cone_rank_chain(c, s, level);
        CHECK(chain == surgery::cone_rank_homological(prof, s, level));
        CHECK(chain == surgery::rank_formula(prof, s));
      }
    }
  }

  TEST_CASE("t matches its closed form when b = 1") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto c = testsupport::random_b1_knot(seed);
      const auto prof = surgery::hat_profile(c, 12);
      for (const Slope& s : surgery::coprime_grid(8, 8)) {
        CHECK(surgery::t_invariant(prof, s) == surgery::t_closed_form(prof, s));
      }
    }
  }

  TEST_CASE("kernel construction on the random corpus") {
    for (std::uint64_t seed = 0; seed < 100; seed += 3) {
      const auto c = testsupport::random_knot(seed);
      for (const Slope& s : surgery::coprime_grid(4, 4)) {
        const auto kb = surgery::kernel_basis_construction(c, s);
        std::vector<f2::BitVector> cols;
        for (const auto& e : kb.elements) {
          CHECK(kb.cone.d.apply(e.coords).none());
          cols.push_back(e.coords);
        }
        CHECK(f2::rank(f2::Matrix::from_columns(kb.cone.d.cols(), cols)) == cols.size());
        CHECK(cols.size() == surgery::kernel_rank(c, s));
        CHECK(cols.size() == kernel_dim(kb.cone.d));
      }
    }
  }

  TEST_CASE("truncation stability on the random corpus") {
    for (std::uint64_t seed = 0; seed < 100; seed += 7) {
      const auto c = testsupport::random_knot(seed);
      for (const Slope& s : {Slope(1, 1), Slope(3, 2), Slope(2, 5)}) {
        const int bound = surgery::truncation_bound(c, s);
        const std::size_t base = surgery::cone_rank_chain(c, s, bound);
        CHECK(surgery::cone_rank_chain(c, s, bound + 1) == base);
        CHECK(surgery::cone_rank_chain(c, s, bound + 3) == base);
      }
    }
  }
}

TEST_SUITE("properties obstructions") {
  TEST_CASE("rank grows from p/q to p/q' across q < p < q'") {
    for (const auto& c : shared_corpus()) {
      if (obstructions::detect_unknot(c)) continue;
      for (int p = 2; p <= 5; ++p) {
        for (int q = 1; q < p; ++q) {
          for (int q2 = p + 1; q2 <= 7; ++q2) {
            if (std::gcd(p, q) != 1 || std::gcd(p, q2) != 1) continue;
            CHECK(surgery::cone_rank_chain(c, Slope(p, q2)) >
                  surgery::cone_rank_chain(c, Slope(p, q)));
          }
        }
      }
    }
  }

  TEST_CASE("monotone in q once q >= p") {
    for (const auto& c : shared_corpus()) {
      const bool strict = !obstructions::detect_unknot(c);
      for (int p = 1; p <= 3; ++p) {
        const auto m = obstructions::monotonicity_scan(c, p, 8);
        CHECK(obstructions::is_monotone(m, p, strict));
      }
    }
  }

  TEST_CASE("equal ranks at p in {1, 2} only for genus zero") {
    for (const auto& c : shared_corpus()) {
      for (int p = 1; p <= 2; ++p) {
        const auto m = obstructions::monotonicity_scan(c, p, 9);
        bool repeat = false;
        for (std::size_t i = 0; i < m.size(); ++i) {
          for (std::size_t k = i + 1; k < m.size(); ++k) repeat = repeat || m[i].second == m[k].second;
        }
        if (repeat) CHECK(obstructions::detect_unknot(c));
      }
    }
  }

  TEST_CASE("complement obstruction for q >= 2") {
    for (const auto& c : shared_corpus()) {
      if (obstructions::detect_unknot(c)) continue;
      for (int q = 2; q <= 4; ++q) {
        CHECK(obstructions::complement_check(c, q).verdict == obstructions::Verdict::Obstructed);
      }
    }
  }
}
