#include "ahs/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ahs {

namespace {

using nlohmann::json;

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

ProblemInstance read_instance_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cardinalities") || !doc.contains("valuations"))
    throw std::runtime_error("instance JSON needs cardinalities and valuations");
  try {
    std::vector<int> cards = doc["cardinalities"].get<std::vector<int>>();
    std::vector<std::vector<double>> rows =
        doc["valuations"].get<std::vector<std::vector<double>>>();
    return ProblemInstance(AttributeSpec(std::move(cards)), std::move(rows));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance JSON malformed: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("instance invalid: ") + e.what());
  }
}

ProblemInstance read_instance_json_file(const std::string& path) {
  std::ifstream in = open_file(path);
  return read_instance_json(in);
}

void write_instance_json(const ProblemInstance& inst, std::ostream& out) {
  json doc;
  doc["cardinalities"] = inst.spec().cardinalities();
  json rows = json::array();
  for (int i = 0; i < inst.num_bidders(); ++i) {
    json row = json::array();
    for (std::int64_t w = 0; w < inst.spec().num_instantiations(); ++w)
      row.push_back(inst.valuation(i, w));
    rows.push_back(std::move(row));
  }
  doc["valuations"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::string bundle_to_string(const NaturalBundle& b) {
  std::string s;
  for (int v : b.pattern) {
    if (v == kHidden) {
      s += '?';
    } else if (v < 10) {
      s += static_cast<char>('0' + v);
    } else if (v < 36) {
      s += static_cast<char>('a' + v - 10);
    } else {
      throw std::invalid_argument("bundle value too large to serialize");
    }
  }
  return s;
}

NaturalBundle bundle_from_string(const AttributeSpec& spec, const std::string& s) {
  if (static_cast<int>(s.size()) != spec.k())
    throw std::runtime_error("bundle string length != number of attributes");
  NaturalBundle b;
  for (int i = 0; i < spec.k(); ++i) {
    char c = s[i];
    int v;
    if (c == '?') {
      v = kHidden;
    } else if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'z') {
      v = c - 'a' + 10;
    } else {
      throw std::runtime_error(std::string("bad bundle character '") + c + "'");
    }
    if (v != kHidden && v >= spec.cardinality(i))
      throw std::runtime_error("bundle value exceeds attribute cardinality");
    b.pattern.push_back(v);
  }
  return b;
}

std::string scheme_to_json(const AttributeSpec& spec, const HidingScheme& s) {
  HidingScheme sorted = s;
  canonicalize(spec, sorted);
  json arr = json::array();
  for (const NaturalBundle& b : sorted.bundles) arr.push_back(bundle_to_string(b));
  return arr.dump();
}

HidingScheme scheme_from_json(const AttributeSpec& spec, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("scheme JSON parse error: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("scheme JSON must be an array");
  HidingScheme s;
  for (const json& item : doc) {
    if (!item.is_string()) throw std::runtime_error("scheme entries must be strings");
    s.bundles.push_back(bundle_from_string(spec, item.get<std::string>()));
  }
  return s;
}

OneInThreeSatInstance read_sat_text(std::istream& in) {
  std::string tok;
  if (!(in >> tok) || tok != "p")
    throw std::runtime_error("formula must start with 'p cnf E D' header");
  std::string kind;
  int E = 0, D = 0;
  if (!(in >> kind >> E >> D) || kind != "cnf")
    throw std::runtime_error("formula must start with 'p cnf E D' header");
  OneInThreeSatInstance sat;
  sat.num_variables = E;
  for (int c = 0; c < D; ++c) {
    std::array<int, 3> clause{};
    for (int& v : clause)
      if (!(in >> v)) throw std::runtime_error("truncated clause");
    int terminator = -1;
    if (!(in >> terminator) || terminator != 0)
      throw std::runtime_error("clause must list three variables and end with 0");
    sat.clauses.push_back(clause);
  }
  try {
    sat.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("formula invalid: ") + e.what());
  }
  return sat;
}

OneInThreeSatInstance read_sat_text_file(const std::string& path) {
  std::ifstream in = open_file(path);
  return read_sat_text(in);
}

void write_sat_text(const OneInThreeSatInstance& sat, std::ostream& out) {
  out << "p cnf " << sat.num_variables << ' ' << sat.num_clauses() << '\n';
  for (const auto& c : sat.clauses)
    out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
}

}  // namespace ahs
