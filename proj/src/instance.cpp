#include "howson/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "howson/error.hpp"

namespace howson {

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string(where) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::shared_ptr<const Group> parse_group(const nlohmann::json& j) {
  const GroupKind kind = parse_group_kind(field(j, "kind", "group").get<std::string>());
  const auto& gens = field(j, "generators", "group");
  if (!gens.is_array()) throw Error(ErrorKind::ParseError, "group: generators must be an array");
  if (kind == GroupKind::FinitePerm) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> perms;
    for (const auto& g : gens) {
      names.push_back(field(g, "name", "generator").get<std::string>());
      perms.push_back(field(g, "perm", "generator").get<std::vector<int>>());
    }
    const int degree = j.contains("degree") ? j["degree"].get<int>()
                                            : (perms.empty() ? 1 : static_cast<int>(perms[0].size()));
    return std::make_shared<const Group>(Group::finite_perm(degree, names, perms));
  }
  auto names = gens.get<std::vector<std::string>>();
  if (j.contains("rank") && j["rank"].get<std::size_t>() != names.size()) {
    throw Error(ErrorKind::ParseError, "group: rank does not match generator count");
  }
  return std::make_shared<const Group>(kind == GroupKind::Free ? Group::free(names)
                                                              : Group::free_abelian(names));
}

}  // namespace

const std::vector<SdpElem>& Instance::genset(const std::string& name) const {
  auto it = gensets.find(name);
  if (it == gensets.end()) throw Error(ErrorKind::ParseError, "unknown generating set '" + name + "'");
  return it->second;
}

SdpElem Instance::parse_elem(const nlohmann::json& j) const {
  const auto& label = field(j, "e", "element");
  if (!label.is_string()) throw Error(ErrorKind::ParseError, "element: 'e' must be a label");
  SdpElem u{action->semilattice().index_of(label.get<std::string>()),
            action->group().parse(field(j, "g", "element"))};
  return u;
}

Instance parse_instance(const nlohmann::json& doc) {
  try {
    const auto& sj = field(doc, "semilattice", "instance");
    auto semilattice = std::make_shared<const Semilattice>(
        field(sj, "elements", "semilattice").get<std::vector<std::string>>(),
        field(sj, "meet", "semilattice").get<std::vector<std::vector<Element>>>());
    auto group = parse_group(field(doc, "group", "instance"));
    const auto& aj = field(doc, "action", "instance");
    std::vector<SAut> images;
    for (const auto& name : group->generator_names()) {
      if (!aj.contains(name)) {
        throw Error(ErrorKind::ParseError, "action: no image for generator '" + name + "'");
      }
      images.emplace_back(aj[name].get<std::vector<Element>>());
    }
    for (const auto& [name, value] : aj.items()) {
      const auto& names = group->generator_names();
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw Error(ErrorKind::ParseError, "action: unknown generator '" + name + "'");
      }
    }
    Instance inst;
    inst.action = std::make_shared<const Action>(Action::build(semilattice, group, images));
    if (doc.contains("gensets")) {
      for (const auto& [name, list] : doc["gensets"].items()) {
        std::vector<SdpElem> x;
        for (const auto& item : list) x.push_back(inst.parse_elem(item));
        inst.gensets.emplace(name, std::move(x));
      }
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed instance: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::ParseError, path + ":" + std::to_string(line) + ":" +
                                           std::to_string(column) + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

nlohmann::json elem_to_json(const Action& act, const SdpElem& u) {
  return {{"e", act.semilattice().label(u.e)}, {"g", act.group().to_json(u.g)}};
}

nlohmann::json instance_to_json(const Action& act,
                                const std::map<std::string, std::vector<SdpElem>>& gensets) {
  const Semilattice& s = act.semilattice();
  const Group& g = act.group();
  nlohmann::json doc;
  doc["semilattice"] = {{"elements", s.labels()}, {"meet", s.meet_table()}};
  nlohmann::json gj;
  gj["kind"] = to_string(g.kind());
  if (g.kind() == GroupKind::FinitePerm) {
    gj["degree"] = g.degree();
    gj["generators"] = nlohmann::json::array();
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
      gj["generators"].push_back({{"name", g.generator_names()[i]}, {"perm", g.to_json(g.generator(i))}});
    }
  } else {
    gj["rank"] = g.rank();
    gj["generators"] = g.generator_names();
  }
  doc["group"] = gj;
  doc["action"] = nlohmann::json::object();
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    doc["action"][g.generator_names()[i]] = act.images()[i].images();
  }
  doc["gensets"] = nlohmann::json::object();
  for (const auto& [name, x] : gensets) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& u : x) list.push_back(elem_to_json(act, u));
    doc["gensets"][name] = list;
  }
  return doc;
}

}  // namespace howson
