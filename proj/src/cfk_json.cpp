#include "knotcone/cfk_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace knotcone::cfk {

namespace {

using json = nlohmann::ordered_json;

const json& field(const json& obj, const char* key, const char* where) {
  if (!obj.is_object()) throw FormatError(std::string(where) + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(std::string(where) + " is missing \"" + key + "\"");
  }
  return *it;
}

std::string as_string(const json& v, const char* what) {
  if (!v.is_string()) throw FormatError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

int as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return v.get<int>();
}

const json& as_array(const json& v, const char* what) {
  if (!v.is_array()) throw FormatError(std::string(what) + " must be an array");
  return v;
}

}  // namespace

std::string to_json(const CfkComplex& c) {
  json doc;
  doc["name"] = c.name();
  json gens = json::array();
  for (const Generator& g : c.generators()) {
    json jg;
    jg["id"] = g.id;
    jg["alexander"] = g.alexander;
    if (g.maslov) jg["maslov"] = *g.maslov;
    gens.push_back(std::move(jg));
  }
  doc["generators"] = std::move(gens);
  json terms = json::array();
  for (const DiffTerm& t : c.differential()) {
    terms.push_back({{"from", t.from}, {"to", t.to}, {"upower", t.upower}});
  }
  doc["differential"] = std::move(terms);
  if (c.flip()) {
    json pairs = json::array();
    for (const FlipPair& fp : *c.flip()) pairs.push_back({{"from", fp.from}, {"to", fp.to}});
    doc["flip"] = std::move(pairs);
  }
  return doc.dump(2) + "\n";
}

CfkComplex from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  const std::string name = as_string(field(doc, "name", "complex"), "name");

  std::vector<Generator> gens;
  for (const json& jg : as_array(field(doc, "generators", "complex"), "generators")) {
    Generator g;
    g.id = as_string(field(jg, "id", "generator"), "generator id");
    g.alexander = as_int(field(jg, "alexander", "generator"), "alexander");
    if (auto it = jg.find("maslov"); it != jg.end() && !it->is_null()) {
      g.maslov = as_int(*it, "maslov");
    }
    gens.push_back(std::move(g));
  }

  std::vector<DiffTerm> terms;
  for (const json& jt : as_array(field(doc, "differential", "complex"), "differential")) {
    DiffTerm t;
    t.from = as_string(field(jt, "from", "term"), "term from");
    t.to = as_string(field(jt, "to", "term"), "term to");
    t.upower = as_int(field(jt, "upower", "term"), "upower");
    terms.push_back(std::move(t));
  }

  std::optional<std::vector<FlipPair>> flip;
  if (auto it = doc.find("flip"); it != doc.end() && !it->is_null()) {
    flip.emplace();
    for (const json& jp : as_array(*it, "flip")) {
      flip->push_back({as_string(field(jp, "from", "flip pair"), "flip from"),
                       as_string(field(jp, "to", "flip pair"), "flip to")});
    }
  }
  return CfkComplex(name, std::move(gens), std::move(terms), std::move(flip));
}

CfkComplex load_complex(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void save_complex(const CfkComplex& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << to_json(c);
}

}  // namespace knotcone::cfk
