#pragma once

#include <iosfwd>
#include <string>

#include "ahs/core.hpp"
#include "ahs/gadgets.hpp"

namespace ahs {

// Instance JSON: {"cardinalities": [...], "valuations": [[...], ...]} with
// one valuation row per bidder in instantiation index order.
ProblemInstance read_instance_json(std::istream& in);
ProblemInstance read_instance_json_file(const std::string& path);
void write_instance_json(const ProblemInstance& inst, std::ostream& out);

// Bundle strings use one character per attribute: '0'-'9' then 'a'-'z' for
// values, '?' for hidden. Schemes serialize as arrays of bundle strings in
// canonical order.
std::string bundle_to_string(const NaturalBundle& b);
NaturalBundle bundle_from_string(const AttributeSpec& spec, const std::string& s);
std::string scheme_to_json(const AttributeSpec& spec, const HidingScheme& s);
HidingScheme scheme_from_json(const AttributeSpec& spec, const std::string& text);

// Formula text: "p cnf E D" header, then one clause of three positive
// variable indices per line, each terminated by 0.
OneInThreeSatInstance read_sat_text(std::istream& in);
OneInThreeSatInstance read_sat_text_file(const std::string& path);
void write_sat_text(const OneInThreeSatInstance& sat, std::ostream& out);

}  // namespace ahs
