#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "knotcone/knots.hpp"
#include "knotcone/surgery.hpp"
#include "support.hpp"

using namespace knotcone;
using namespace knotcone::surgery;

namespace {

cfk::CfkComplex K(const char* name) { return knots::builtin(name); }

// b = 1, genus 1, with im(ĥ_0)_* not inside im(v̂_0)_*.
HatProfile broken_profile() {
  HatProfile prof;
  prof.name = "broken";
  prof.genus = 1;
  prof.b = 1;
  prof.smin = -10;
  for (int s = -10; s <= 10; ++s) {
    prof.v.push_back(s >= 1 ? f2::Matrix::identity(1) : f2::Matrix(1, 1));
    prof.h.push_back(s <= 0 ? f2::Matrix::identity(1) : f2::Matrix(1, 1));
  }
  return prof;
}

std::size_t kernel_dim(const f2::Matrix& m) { return m.cols() - f2::rank(m); }

}  // namespace

TEST_SUITE("surgery slopes") {
  TEST_CASE("construction and parsing") {
    CHECK(Slope::parse("3/2") == Slope(3, 2));
    CHECK(Slope::parse("5") == Slope(5, 1));
    CHECK(Slope(7, 3).to_string() == "7/3");
    CHECK_THROWS_AS(Slope(2, 4), InvalidSlope);
    CHECK_THROWS_AS(Slope(0, 1), InvalidSlope);
    CHECK_THROWS_AS(Slope(-1, 2), InvalidSlope);
    CHECK_THROWS_AS(Slope::parse("1/"), InvalidSlope);
    CHECK_THROWS_AS(Slope::parse("a/b"), InvalidSlope);
    CHECK_THROWS_AS(Slope::parse("-3/2"), InvalidSlope);
  }

  TEST_CASE("floor division rounds toward negative infinity") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(-6, 2) == -3);
    CHECK(floor_div(-1, 5) == -1);
    CHECK(floor_div(0, 3) == 0);
  }

  TEST_CASE("coprime grid") {
    const auto g = coprime_grid(4, 4);
    CHECK(g.size() == 11);
    CHECK(std::is_sorted(g.begin(), g.end()));
  }
}

TEST_SUITE("surgery cone") {
  TEST_CASE("truncation bounds") {
    CHECK(truncation_bound(K("unknot"), Slope(1, 1)) == 2);
    CHECK(truncation_bound(K("trefoil_rh"), Slope(1, 1)) == 3);
    CHECK(truncation_bound(K("t25"), Slope(7, 2)) == 7);
  }

  TEST_CASE("column counts") {
    auto cone = build_cone(K("unknot"), Slope(1, 1), 2);
    CHECK(cone.a_columns.size() == 3);
    CHECK(cone.b_columns.size() == 2);
    cone = build_cone(K("trefoil_rh"), Slope(1, 1), 3);
    CHECK(cone.a_columns.size() == 5);
    CHECK(cone.b_columns.size() == 4);
    cone = build_cone(K("trefoil_rh"), Slope(1, 2), 3);
    CHECK(cone.a_columns.size() == 11);
    CHECK(cone.b_columns.size() == 10);
    std::size_t expected = 0;
    for (int j : cone.a_columns) {
      expected += cfk::hat_level(K("trefoil_rh"), floor_div(j, 2)).v.source.dim();
    }
    CHECK(cone.a_dim() == expected);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(build_cone(K("trefoil_rh"), Slope(1, 1), 2), TruncationError);
    const auto t = K("trefoil_rh");
    const cfk::CfkComplex noflip("noflip", t.generators(), t.differential());
    CHECK_THROWS_AS(build_cone(noflip, Slope(1, 1), 3), cfk::FlipRequired);
    CHECK_THROWS_AS(cone_rank_chain(noflip, Slope(1, 1)), cfk::FlipRequired);
    CHECK_THROWS_AS(t_invariant(noflip, Slope(1, 1)), cfk::FlipRequired);
  }

  TEST_CASE("boundary columns carry a single block") {
    const Slope s(3, 2);
    const auto c = K("figure_eight");
    const int level = truncation_bound(c, s);
    const auto cone = build_cone(c, s, level);
    const int qc = s.q * level;
    const std::size_t na = cone.a_dim();
    for (std::size_t k = 0; k < cone.a_columns.size(); ++k) {
      const int j = cone.a_columns[k];
      bool hits_v = false, hits_h = false;
      for (std::size_t col = cone.a_offset[k]; col < cone.a_offset[k + 1]; ++col) {
        for (std::size_t b = 0; b < cone.b_columns.size(); ++b) {
          for (std::size_t r = na + cone.b_offset[b]; r < na + cone.b_offset[b + 1]; ++r) {
            if (!cone.differential.get(r, col)) continue;
            if (cone.b_columns[b] == j) hits_v = true;
            if (cone.b_columns[b] == j + s.p) hits_h = true;
          }
        }
      }
      if (j <= -qc + s.p) CHECK_FALSE(hits_v);
      if (j >= qc - s.p) CHECK_FALSE(hits_h);
    }
  }

  TEST_CASE("chain rank agrees with the reference eliminator") {
    for (const auto& c : testsupport::builtins()) {
      for (Slope s : {Slope(1, 1), Slope(2, 3), Slope(5, 2)}) {
        const auto cone = build_cone(c, s, truncation_bound(c, s));
        CHECK(cone_rank_chain(c, s) ==
              cone.dim() - 2 * f2::reference::rank(cone.differential));
      }
    }
    const auto cone = build_cone(K("unknot"), Slope(1, 1), 2);
    CHECK(testsupport::brute_homology(cone.differential) == 1);
  }
}

TEST_SUITE("surgery ranks") {
  TEST_CASE("chain oracle examples") {
    for (const Slope& s : coprime_grid(6, 6)) {
      CHECK(cone_rank_chain(K("unknot"), s) == static_cast<std::size_t>(s.p));
    }
    CHECK(cone_rank_chain(K("trefoil_rh"), Slope(1, 1)) == 1);
    CHECK(cone_rank_chain(K("figure_eight"), Slope(1, 1)) == 3);
  }

  TEST_CASE("homological oracle examples") {
    CHECK(cone_rank_homological(K("unknot"), Slope(5, 3)) == 5);
    CHECK(cone_rank_homological(K("trefoil_rh"), Slope(1, 2)) == 3);
    CHECK(cone_rank_homological(K("figure_eight"), Slope(2, 1)) == 4);
  }

  TEST_CASE("t invariant") {
    for (const Slope& s : coprime_grid(8, 8)) {
      CHECK(t_invariant(K("unknot"), s) == static_cast<std::size_t>(s.p));
      CHECK(t_invariant(K("figure_eight"), s) == static_cast<std::size_t>(s.p));
      CHECK(t_invariant(K("trefoil_rh"), s) ==
            static_cast<std::size_t>(std::max(0, s.p - s.q)));
    }
  }

  TEST_CASE("rank formula examples") {
    for (const Slope& s : coprime_grid(6, 6)) {
      CHECK(rank_formula(K("unknot"), s) == static_cast<std::size_t>(s.p));
      CHECK(rank_formula(K("trefoil_rh"), s) ==
            static_cast<std::size_t>(2 * s.q + 2 * std::max(0, s.p - s.q) - s.p));
      CHECK(rank_formula(K("figure_eight"), s) == static_cast<std::size_t>(2 * s.q + s.p));
    }
    CHECK(rank_formula(K("trefoil_rh"), Slope(1, 1)) == 1);
    CHECK(rank_formula(K("figure_eight"), Slope(1, 1)) == 3);
  }

  TEST_CASE("trefoil rank data") {
    const auto prof = hat_profile(K("trefoil_rh"), 2);
    CHECK(kernel_dim(prof.v_at(0)) == 1);
    CHECK(f2::rank(prof.v_at(0)) == 0);
    CHECK(prof.b == 1);
    const auto f8 = hat_profile(K("figure_eight"), 2);
    CHECK(kernel_dim(f8.v_at(0)) == 2);
    CHECK(f2::rank(f8.v_at(0)) == 1);
  }

  TEST_CASE("nu and the closed form for t") {
    CHECK(nu_surrogate(K("unknot")) == 0);
    CHECK(nu_surrogate(K("trefoil_rh")) == 1);
    CHECK(nu_surrogate(K("figure_eight")) == 0);
    CHECK(t_closed_form(K("trefoil_rh"), Slope(5, 1)) == 4);
    CHECK(t_closed_form(K("trefoil_rh"), Slope(1, 3)) == 0);
    CHECK(t_closed_form(K("figure_eight"), Slope(3, 2)) == 3);
    const auto two = knots::box_sum(2, {}, "two");
    CHECK_THROWS_AS(nu_surrogate(two), NotApplicable);
    CHECK_THROWS_AS(t_closed_form(two, Slope(1, 1)), NotApplicable);
  }

  TEST_CASE("kernel rank examples") {
    for (const Slope& s : coprime_grid(5, 5)) {
      CHECK(kernel_rank(K("unknot"), s) == static_cast<std::size_t>(s.p));
    }
    CHECK(kernel_rank(K("trefoil_rh"), Slope(1, 1)) == 1);
    CHECK(kernel_rank(K("figure_eight"), Slope(1, 1)) == 3);
  }

  TEST_CASE("hypothesis failure leaves the oracle and blocks the formula") {
    const auto prof = broken_profile();
    CHECK_THROWS_AS(rank_formula(prof, Slope(1, 1)), FormulaNotApplicable);
    CHECK_THROWS_AS(kernel_rank(prof, Slope(1, 1)), FormulaNotApplicable);
    CHECK_THROWS_AS(kernel_basis_construction(prof, Slope(1, 1), 3), FormulaNotApplicable);
    CHECK_NOTHROW(cone_rank_homological(prof, Slope(1, 1), 3));
    CHECK_NOTHROW(t_invariant(prof, Slope(1, 1)));
  }

  TEST_CASE("profiles are shape checked") {
    auto prof = broken_profile();
    prof.h.pop_back();
    CHECK_THROWS_AS(prof.check(), f2::DimensionError);
    CHECK_THROWS_AS(broken_profile().v_at(11), std::out_of_range);
    CHECK_THROWS_AS(homology_cone(broken_profile(), Slope(1, 1), 2), TruncationError);
  }
}

TEST_SUITE("surgery kernel basis") {
  TEST_CASE("examples") {
    auto kb = kernel_basis_construction(K("unknot"), Slope(1, 1));
    REQUIRE(kb.elements.size() == 1);
    CHECK(kb.elements[0].kind == KernelKind::YTilde);

    kb = kernel_basis_construction(K("trefoil_rh"), Slope(1, 1));
    REQUIRE(kb.elements.size() == 1);
    CHECK(kb.elements[0].kind == KernelKind::XTilde);
    CHECK(kb.elements[0].coords.count() == 1);  // empty tail

    kb = kernel_basis_construction(K("figure_eight"), Slope(1, 1));
    REQUIRE(kb.elements.size() == 3);
    CHECK(std::count_if(kb.elements.begin(), kb.elements.end(), [](const KernelElement& e) {
            return e.kind == KernelKind::XTilde;
          }) == 2);
  }

  TEST_CASE("elements are independent kernel vectors spanning the kernel") {
    for (const auto& c : testsupport::builtins()) {
      for (const Slope& s : coprime_grid(5, 5)) {
        const auto kb = kernel_basis_construction(c, s);
        std::vector<f2::BitVector> cols;
        for (const auto& e : kb.elements) {
          CHECK(kb.cone.d.apply(e.coords).none());
          cols.push_back(e.coords);
        }
        const auto m = f2::Matrix::from_columns(kb.cone.d.cols(), cols);
        CHECK(f2::rank(m) == kb.elements.size());
        CHECK(kb.elements.size() == kernel_rank(c, s));
        CHECK(kb.elements.size() == kernel_dim(kb.cone.d));
      }
    }
  }
}

TEST_SUITE("surgery identities") {
  TEST_CASE("truncation stability") {
    for (const auto& c : testsupport::builtins()) {
      const auto prof = hat_profile(c, 12);
      for (const Slope& s : coprime_grid(4, 4)) {
        const int bound = truncation_bound(c, s);
        const std::size_t base = cone_rank_chain(c, s, bound);
        for (int extra : {1, 3}) {
          CHECK(cone_rank_chain(c, s, bound + extra) == base);
          CHECK(cone_rank_homological(prof, s, bound + extra) == base);
        }
      }
    }
  }

  TEST_CASE("large surgery count") {
    for (const auto& c : testsupport::builtins()) {
      const int g = cfk::genus(c);
      const std::size_t b = cfk::b_rank(c);
      std::size_t window = 0;
      for (int s = -g; s <= g; ++s) {
        window += cfk::hat_level(c, s).v.source.complex.homology_dimension();
      }
      for (int n = 2 * g + 2; n <= 2 * g + 6; ++n) {
        const std::size_t expected = window + static_cast<std::size_t>(n - 2 * g - 1) * b;
        CHECK(rank_formula(c, Slope(n, 1)) == expected);
        CHECK(cone_rank_chain(c, Slope(n, 1)) == expected);
      }
    }
  }
}

TEST_SUITE("surgery reports") {
  TEST_CASE("report fields") {
    const auto r = rank_report(K("trefoil_rh"), Slope(1, 2));
    CHECK(r.oracle == 3u);
    CHECK(r.formula == 3u);
    CHECK(r.t == 0);
    CHECK(r.nu == 1);
    CHECK(r.hypothesis);
    CHECK(r.b == 1);
    CHECK(r.genus == 1);
    CHECK_FALSE(r.mismatch());
    const auto o = rank_report(K("trefoil_rh"), Slope(1, 2), Method::Oracle);
    CHECK_FALSE(o.formula.has_value());
    const auto f = rank_report(K("trefoil_rh"), Slope(1, 2), Method::Formula);
    CHECK_FALSE(f.oracle.has_value());
    CHECK(parse_method("both") == Method::Both);
    CHECK_THROWS_AS(parse_method("guess"), std::invalid_argument);
  }

  TEST_CASE("tsv and json carry the same numbers") {
    const auto reports = scan(K("figure_eight"), coprime_grid(3, 3));
    const auto arr = nlohmann::json::parse(to_json(reports));
    REQUIRE(arr.size() == reports.size());
    for (std::size_t k = 0; k < reports.size(); ++k) {
      std::istringstream row(to_tsv(reports[k]));
      std::vector<std::string> cells;
      for (std::string cell; std::getline(row, cell, '\t');) cells.push_back(cell);
      REQUIRE(cells.size() == 10);
      const auto& j = arr[k];
      CHECK(cells[0] == j["name"].get<std::string>());
      CHECK(cells[1] == std::to_string(j["p"].get<int>()));
      CHECK(cells[2] == std::to_string(j["q"].get<int>()));
      CHECK(cells[3] == std::to_string(j["oracle"].get<int>()));
      CHECK(cells[4] == std::to_string(j["formula"].get<int>()));
      CHECK(cells[5] == std::to_string(j["t"].get<int>()));
      CHECK(cells[6] == std::to_string(j["nu"].get<int>()));
      CHECK(cells[7] == (j["hypothesis"].get<bool>() ? "pass" : "fail"));
      CHECK(cells[8] == std::to_string(j["b"].get<int>()));
      CHECK(cells[9] == std::to_string(j["genus"].get<int>()));
    }
  }

  TEST_CASE("parallel scan matches the serial reference") {
    for (const auto& c : testsupport::builtins()) {
      const auto slopes = coprime_grid(6, 6);
      const auto par = scan(c, slopes);
      const auto ser = scan_serial(c, slopes);
      REQUIRE(par.size() == ser.size());
      for (std::size_t k = 0; k < par.size(); ++k) CHECK(to_tsv(par[k]) == to_tsv(ser[k]));
    }
  }
}
