// knotcone command-line front end.
//
// Exit status: 0 success, 1 failed check, 2 usage or input error.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotcone/cfk.hpp"
#include "knotcone/cfk_json.hpp"
#include "knotcone/knots.hpp"
#include "knotcone/obstructions.hpp"
#include "knotcone/surgery.hpp"

namespace {

using namespace knotcone;
using surgery::Slope;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cfk::CfkComplex load_input(const std::string& input) {
  if (std::filesystem::exists(input)) return cfk::load_complex(input);
  if (knots::is_builtin(input)) return knots::builtin(input);
  throw UsageError("no such file or built-in knot: " + input);
}

Slope slope_from(int p, int q, const std::string& text) {
  if (!text.empty()) return Slope::parse(text);
  return Slope(p, q);
}

std::string hfk_profile(const cfk::CfkComplex& c) {
  std::ostringstream os;
  bool first = true;
  for (int s = c.max_alexander(); s >= c.min_alexander(); --s) {
    os << (first ? "" : ",") << s << ':' << cfk::hfk_hat(c, s);
    first = false;
  }
  return os.str();
}

int cmd_validate(const std::string& input, const std::string& format) {
  const cfk::CfkComplex c = load_input(input);
  const cfk::ValidationReport rep = cfk::validate(c);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["name"] = c.name();
    j["valid"] = rep.valid();
    j["issues"] = nlohmann::ordered_json::array();
    for (const auto& i : rep.issues) j["issues"].push_back({{"kind", i.kind}, {"message", i.message}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << c.name() << '\t' << (rep.valid() ? "valid" : "invalid") << '\n';
    for (const auto& i : rep.issues) std::cout << i.kind << '\t' << i.message << '\n';
  }
  return rep.valid() ? kOk : kCheckFailed;
}

int cmd_info(const std::string& input, const std::string& format) {
  const cfk::CfkComplex c = load_input(input);
  cfk::require_valid(c);
  const int g = cfk::genus(c);
  const std::size_t b = cfk::b_rank(c);
  std::optional<int> nu;
  std::optional<bool> hyp;
  if (c.has_flip()) {
    hyp = obstructions::hypothesis_check(c).overall;
    if (b == 1) nu = surgery::nu_surrogate(c);
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["name"] = c.name();
    j["generators"] = c.size();
    j["genus"] = g;
    j["b"] = b;
    nlohmann::ordered_json hfk = nlohmann::ordered_json::object();
    for (int s = c.max_alexander(); s >= c.min_alexander(); --s) {
      hfk[std::to_string(s)] = cfk::hfk_hat(c, s);
    }
    j["hfk_hat"] = hfk;
    j["nu"] = nu ? nlohmann::ordered_json(*nu) : nlohmann::ordered_json();
    j["hypothesis"] = hyp ? nlohmann::ordered_json(*hyp) : nlohmann::ordered_json();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "name\t" << c.name() << '\n'
              << "generators\t" << c.size() << '\n'
              << "genus\t" << g << '\n'
              << "b\t" << b << '\n'
              << "hfk_hat\t" << hfk_profile(c) << '\n'
              << "nu\t" << (nu ? std::to_string(*nu) : "-") << '\n'
              << "hypothesis\t" << (hyp ? (*hyp ? "pass" : "fail") : "-") << '\n';
  }
  return kOk;
}

int cmd_rank(const std::string& input, Slope s, const std::string& method,
             const std::string& format) {
  const cfk::CfkComplex c = load_input(input);
  const surgery::RankReport r = surgery::rank_report(c, s, surgery::parse_method(method));
  if (format == "json") {
    std::cout << surgery::to_json(r) << '\n';
  } else if (format == "tsv") {
    std::cout << surgery::tsv_header() << '\n' << surgery::to_tsv(r) << '\n';
  } else {
    auto cell = [](const auto& v) { return v ? std::to_string(*v) : std::string("-"); };
    std::cout << "oracle=" << cell(r.oracle) << " formula=" << cell(r.formula) << " t=" << r.t
              << " nu=" << cell(r.nu) << " hypothesis=" << (r.hypothesis ? "pass" : "fail")
              << '\n';
  }
  return r.mismatch() ? kCheckFailed : kOk;
}

int cmd_scan(const std::string& input, int pmax, int qmax, bool check, bool serial,
             const std::string& method, const std::string& format) {
  if (pmax < 1 || qmax < 1) throw UsageError("--pmax and --qmax must be positive");
  const cfk::CfkComplex c = load_input(input);
  const auto slopes = surgery::coprime_grid(pmax, qmax);
  const surgery::Method m = surgery::parse_method(method);
  const auto reports = serial ? surgery::scan_serial(c, slopes, m) : surgery::scan(c, slopes, m);
  if (format == "json") {
    std::cout << surgery::to_json(reports) << '\n';
  } else {
    std::cout << surgery::tsv_header() << '\n';
    for (const auto& r : reports) std::cout << surgery::to_tsv(r) << '\n';
  }
  bool failed = false;
  for (const auto& r : reports) {
    if (r.mismatch()) failed = true;
    if (check && m != surgery::Method::Oracle && !r.formula) failed = true;
  }
  return failed ? kCheckFailed : kOk;
}

int print_verdict(const obstructions::ObstructionVerdict& v, const std::string& format) {
  if (format == "json") {
    std::cout << obstructions::to_json(v) << '\n';
  } else {
    std::cout << obstructions::to_text(v) << '\n';
  }
  return kOk;
}

int cmd_gen(const std::string& kind, const knots::RandomSpec& rs, const std::string& steps,
            const std::vector<std::string>& operands) {
  cfk::CfkComplex c = [&]() -> cfk::CfkComplex {
    if (kind == "random") return knots::random_complex(rs);
    if (kind == "staircase") {
      knots::StaircaseSpec spec;
      std::stringstream ss(steps);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        try {
          spec.steps.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw UsageError("bad staircase step '" + item + "'");
        }
      }
      return knots::staircase(spec);
    }
    if (kind == "mirror") {
      if (operands.size() != 1) throw UsageError("mirror takes one input");
      return knots::mirror(load_input(operands[0]));
    }
    if (kind == "tensor") {
      if (operands.size() != 2) throw UsageError("tensor takes two inputs");
      return knots::tensor(load_input(operands[0]), load_input(operands[1]));
    }
    if (knots::is_builtin(kind)) return knots::builtin(kind);
    throw UsageError("unknown generator '" + kind + "'");
  }();
  cfk::require_valid(c);
  std::cout << cfk::to_json(c);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hat Heegaard Floer ranks of Dehn surgeries from knot Floer complexes"};
  app.require_subcommand(1);

  std::string input, format = "text", method = "both", slope_text;
  int p = 1, q = 1;

  auto* validate = app.add_subcommand("validate", "check a complex and list its problems");
  validate->add_option("input", input, "complex file or built-in name")->required();
  validate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* info = app.add_subcommand("info", "genus, b, knot Floer profile, nu and hypothesis");
  info->add_option("input", input)->required();
  info->add_option("--format", format)->check(CLI::IsMember({"text", "tsv", "json"}));

  auto* rank = app.add_subcommand("rank", "surgery rank by oracle and/or formula");
  rank->add_option("input", input)->required();
  rank->add_option("-p", p, "numerator");
  rank->add_option("-q", q, "denominator");
  rank->add_option("--slope", slope_text, "slope as p/q (overrides -p/-q)");
  rank->add_option("--method", method)->check(CLI::IsMember({"oracle", "formula", "both"}));
  auto* rank_format =
      rank->add_option("--format", format)->check(CLI::IsMember({"text", "tsv", "json"}));

  int pmax = 4, qmax = 4;
  bool check = false, serial = false;
  auto* scan = app.add_subcommand("scan", "ranks over the coprime grid p <= pmax, q <= qmax");
  scan->add_option("input", input)->required();
  scan->add_option("--pmax", pmax);
  scan->add_option("--qmax", qmax);
  scan->add_flag("--check", check, "fail when the formula is unavailable or disagrees");
  scan->add_flag("--serial", serial, "single-threaded reference loop");
  scan->add_option("--method", method)->check(CLI::IsMember({"oracle", "formula", "both"}));
  scan->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));

  std::string r_text, s_text;
  auto* cosmetic = app.add_subcommand("cosmetic", "rank obstruction for a pair of slopes");
  cosmetic->add_option("input", input)->required();
  cosmetic->add_option("-r", r_text, "first slope p/q")->required();
  cosmetic->add_option("-s", s_text, "second slope p/q")->required();
  cosmetic->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* complement = app.add_subcommand("complement", "compare the 1/q surgery with the ambient");
  complement->add_option("input", input)->required();
  complement->add_option("-q", q)->required();
  complement->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string kind, steps;
  std::vector<std::string> operands;
  knots::RandomSpec rs;
  auto* gen = app.add_subcommand("gen", "write a complex as JSON");
  gen->add_option("kind", kind, "built-in name, random, staircase, mirror or tensor")->required();
  gen->add_option("operands", operands, "inputs for mirror and tensor");
  gen->add_option("--seed", rs.seed);
  gen->add_option("--dots", rs.dots);
  gen->add_option("--boxes", rs.boxes);
  gen->add_option("--max-side", rs.max_side);
  gen->add_option("--max-offset", rs.max_offset);
  gen->add_option("--steps", steps, "comma-separated staircase steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(input, format);
    if (*info) return cmd_info(input, format);
    if (*rank) {
      return cmd_rank(input, slope_from(p, q, slope_text), method,
                      rank_format->count() == 0 ? "tsv" : format);
    }
    if (*scan) return cmd_scan(input, pmax, qmax, check, serial, method, format == "text" ? "tsv" : format);
    if (*cosmetic) {
      const auto c = load_input(input);
      return print_verdict(
          obstructions::cosmetic_pair_check(c, Slope::parse(r_text), Slope::parse(s_text)),
          format);
    }
    if (*complement) {
      const auto c = load_input(input);
      return print_verdict(obstructions::complement_check(c, Slope(1, q).q), format);
    }
    if (*gen) return cmd_gen(kind, rs, steps, operands);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const surgery::InvalidSlope& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cfk::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}
