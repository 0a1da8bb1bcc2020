#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "howson/action.hpp"

namespace howson {

/// A validated semidirect product description with named generating sets.
struct Instance {
  std::shared_ptr<const Action> action;
  std::map<std::string, std::vector<SdpElem>> gensets;

  const std::vector<SdpElem>& genset(const std::string& name) const;
  /// Parses {"e": label, "g": literal}.
  SdpElem parse_elem(const nlohmann::json& j) const;
};

/// Parses an instance document:
///   semilattice: {elements: [labels], meet: [[indices]]}
///   group: {kind, degree?, generators: [names] or [{name, perm}]}
///   action: {generator name: image array}
///   gensets: {name: [{e, g}]}
/// Throws ParseError, InvalidSemilattice, NotAutomorphism, NotHomomorphism.
Instance parse_instance(const nlohmann::json& doc);
/// Reads and parses a file; JSON syntax errors report line and column.
Instance load_instance(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

/// Inverse of parse_instance.
nlohmann::json instance_to_json(const Action& act,
                                const std::map<std::string, std::vector<SdpElem>>& gensets);

nlohmann::json elem_to_json(const Action& act, const SdpElem& u);

}  // namespace howson
