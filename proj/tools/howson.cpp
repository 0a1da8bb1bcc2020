// howson: command line front end for the semidirect product toolkit.
//
// Every subcommand prints one JSON document on stdout. Exit status:
//   0 success, 1 domain or validation error, 2 cap or budget exceeded,
//   3 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "howson/computable.hpp"
#include "howson/error.hpp"
#include "howson/instance.hpp"
#include "howson/intersection.hpp"
#include "howson/oracle.hpp"
#include "howson/rational.hpp"
#include "howson/zchain.hpp"

using nlohmann::json;
using namespace howson;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded:
    case ErrorKind::BudgetExceeded:
      return 2;
    case ErrorKind::Usage:
      return 3;
    default:
      return 1;
  }
}

json big_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

std::vector<BigInt> parse_poly(const std::string& text) {
  std::vector<BigInt> coeffs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::Usage, "polynomial coefficients must be nonnegative integers");
    }
    coeffs.emplace_back(item);
  }
  if (coeffs.empty()) throw Error(ErrorKind::Usage, "empty polynomial");
  return coeffs;
}

std::vector<json> split_literals(const std::string& text) {
  std::vector<json> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(json::parse(item));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::ParseError, "bad literal '" + item + "': " + e.what());
    }
  }
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::size_t distinct_count(const std::vector<SdpElem>& x) {
  return std::set<SdpElem>(x.begin(), x.end()).size();
}

struct Options {
  std::string file;
  std::string gens;
  std::string x1;
  std::string x2;
  std::string e;
  std::string g;
  std::string dot;
  std::string poly;
  std::string builtin;
  std::string zx;
  std::string zx2;
  std::size_t n = 0;
  std::size_t size_e = 0;
  std::size_t size_x = 0;
  std::size_t budget = 10000;
  std::size_t depth = 8;
  std::size_t count = 200;
  std::uint64_t seed = 0;
  bool no_prune = false;
};

int cmd_validate(const Options& o) {
  Instance inst = load_instance(o.file);
  const Action& act = *inst.action;
  json out;
  out["valid"] = true;
  out["elements"] = act.semilattice().labels();
  out["size"] = act.semilattice().size();
  out["bottom"] = act.semilattice().label(act.semilattice().bottom());
  out["group"] = act.group().describe();
  out["images"] = json::array();
  for (const auto& img : act.images()) out["images"].push_back(img.images());
  out["gensets"] = json::object();
  for (const auto& [name, x] : inst.gensets) out["gensets"][name] = x.size();
  emit(out);
  return 0;
}

int cmd_aut(const Options& o) {
  Instance inst = load_instance(o.file);
  auto auts = automorphisms(inst.action->semilattice());
  json list = json::array();
  for (const auto& a : auts) list.push_back(a.images());
  emit({{"count", auts.size()}, {"automorphisms", list}});
  return 0;
}

int cmd_automaton(const Options& o) {
  Instance inst = load_instance(o.file);
  SdpAutomaton aut = build_automaton(inst.action, inst.genset(o.gens));
  std::optional<Element> accepting;
  if (!o.e.empty()) accepting = inst.action->semilattice().index_of(o.e);
  if (!o.dot.empty()) {
    std::ofstream dot(o.dot);
    if (!dot) throw Error(ErrorKind::Usage, "cannot write '" + o.dot + "'");
    dot << to_dot(aut, accepting);
  }
  emit(aut.to_json());
  return 0;
}

int cmd_sofe(const Options& o) {
  Instance inst = load_instance(o.file);
  const auto& x = inst.genset(o.gens);
  SdpAutomaton aut = build_automaton(inst.action, x);
  const Semilattice& s = inst.action->semilattice();
  const Group& grp = inst.action->group();
  SofE r = s_of_e_subgroup(aut, s.index_of(o.e));
  json out;
  out["e"] = o.e;
  out["empty"] = r.empty;
  out["accepting"] = json::array();
  for (int q : r.accepting) out["accepting"].push_back(aut.state_label(q));
  out["rank_bound"] = big_json(rank_bound(s.size(), distinct_count(x)));
  if (r.subgroup) {
    out["subgroup"] = r.subgroup->to_json();
    out["generators"] = json::array();
    for (const auto& g : r.subgroup->canonical_generators()) out["generators"].push_back(grp.to_json(g));
    out["raw_generator_count"] = r.generators.size();
  }
  emit(out);
  return 0;
}

int cmd_intersect(const Options& o) {
  Instance inst = load_instance(o.file);
  const auto& x1 = inst.genset(o.x1);
  const auto& x2 = inst.genset(o.x2);
  IntersectionResult r = intersect(inst.action, x1, x2, {!o.no_prune});
  json out = r.to_json();
  out["certificates_valid"] = certificates_valid(r);
  if (!o.poly.empty()) {
    const std::size_t n = o.n ? o.n : std::max(distinct_count(x1), distinct_count(x2));
    out["poly_bound"] = big_json(poly_bound(inst.action->semilattice().size(), n, parse_poly(o.poly)));
    out["poly_n"] = n;
  }
  emit(out);
  return 0;
}

int cmd_member(const Options& o) {
  Instance inst = load_instance(o.file);
  SdpAutomaton aut = build_automaton(inst.action, inst.genset(o.gens));
  SdpElem u{inst.action->semilattice().index_of(o.e), inst.action->group().parse_text(o.g)};
  Membership m = member(aut, u);
  json out{{"element", elem_to_json(*inst.action, u)}, {"member", m.member}};
  if (m.certificate) {
    out["certificate"] = *m.certificate;
    out["certificate_valid"] = !m.certificate->empty() && aut.evaluate(*m.certificate) == u;
  }
  emit(out);
  return 0;
}

int cmd_bound(const Options& o) {
  json out;
  if (o.size_e == 0) throw Error(ErrorKind::Usage, "--sizeE is required");
  if (o.size_x) out["rank_bound"] = big_json(rank_bound(o.size_e, o.size_x));
  if (!o.poly.empty()) {
    if (o.n == 0) throw Error(ErrorKind::Usage, "--poly needs --n");
    out["poly_bound"] = big_json(poly_bound(o.size_e, o.n, parse_poly(o.poly)));
  }
  if (out.empty()) throw Error(ErrorKind::Usage, "give --sizeX and/or --poly with --n");
  emit(out);
  return 0;
}

int cmd_reduce(const Options& o) {
  if (o.builtin.empty() == o.file.empty()) {
    throw Error(ErrorKind::Usage, "give exactly one of --builtin and --file");
  }
  std::optional<Instance> source;
  ComputableSemilattice cs;
  if (!o.builtin.empty()) {
    cs = builtin(o.builtin);
  } else {
    source = load_instance(o.file);
    cs = from_action(*source->action);
  }
  auto pairs = [&](const std::string& text) {
    std::vector<TokenPair> out;
    for (const auto& lit : split_literals(text)) out.push_back(cs.parse_pair(lit));
    return out;
  };
  std::vector<TokenPair> x1 = pairs(o.x1);
  std::vector<TokenPair> x2 = pairs(o.x2);
  if (x1.empty() && x2.empty()) throw Error(ErrorKind::Usage, "give --x1 and/or --x2 literals");
  FiniteInstance fi = restrict_locally_finite(cs, x1, x2, o.budget);
  json out;
  out["source"] = cs.name;
  out["instance"] = instance_to_json(*fi.action, {{"X1", fi.x1}, {"X2", fi.x2}});
  out["tokens"] = json::array();
  for (const auto& t : fi.tokens) out["tokens"].push_back(cs.label(t));
  out["embedding"] = json::array();
  for (const auto& g : fi.embedding) out["embedding"].push_back(cs.group->to_json(g));
  out["orbit_size"] = fi.orbit_size;
  out["height_checked"] = fi.height_checked;
  emit(out);
  return 0;
}

int cmd_zchain(const Options& o) {
  std::vector<ZElem> x = parse_zelems(o.zx);
  ZDecomposition d = decompose_zz1(x, o.depth);
  ZVerification v = verify_zz1(x, d, o.depth);
  json out;
  out["X"] = json::array();
  for (const auto& u : x) out["X"].push_back(to_json(u));
  out["decomposition"] = d.to_json();
  out["verification"] = v.to_json();
  if (!o.zx2.empty()) {
    out["windowed_intersection"] = windowed_intersection(x, parse_zelems(o.zx2), o.depth).to_json();
  }
  emit(out);
  return 0;
}

int cmd_oracle(const Options& o) {
  Instance inst = load_instance(o.file);
  const auto& x1 = inst.genset(o.x1);
  const auto& x2 = inst.genset(o.x2);
  IntersectionResult r = intersect(inst.action, x1, x2, {!o.no_prune});
  IntersectionReport rep = check_intersection(*inst.action, x1, x2, r.elements());
  json out = rep.to_json(*inst.action);
  out["gens"] = json::array();
  for (const auto& u : r.elements()) out["gens"].push_back(elem_to_json(*inst.action, u));
  out["certificates_valid"] = certificates_valid(r);
  emit(out);
  return rep.equal && certificates_valid(r) ? 0 : 1;
}

json selftest_one(std::uint64_t seed) {
  RandomInstance ri = random_instance(seed);
  const Action& act = *ri.action;
  json rec{{"seed", seed}};
  IntersectionResult r = intersect(ri.action, ri.x1, ri.x2);
  IntersectionReport rep = check_intersection(act, ri.x1, ri.x2, r.elements());
  rec["intersection"] = rep.equal;
  rec["certificates"] = certificates_valid(r);
  SdpAutomaton aut = build_automaton(ri.action, ri.x1);
  ClosureSet c = closure_serial(act, ri.x1);
  SofECache cache(aut);
  Profile prof = profile(aut);
  bool agree = true;
  for (Element e = 0; e < static_cast<Element>(act.semilattice().size()); ++e) {
    for (const auto& g : act.group_elements()) {
      SdpElem u{e, g};
      Membership m = member(aut, cache, prof, u);
      if (m.member != c.contains(u)) agree = false;
      if (m.member && aut.evaluate(*m.certificate) != u) agree = false;
    }
  }
  rec["membership"] = agree;
  rec["ok"] = rep.equal && rec["certificates"].get<bool>() && agree;
  return rec;
}

int cmd_selftest(const Options& o) {
  const auto n = static_cast<long long>(o.count);
  std::vector<json> records(o.count);
  std::vector<std::string> errors(o.count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      records[idx] = selftest_one(o.seed + idx);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  json failures = json::array();
  for (std::size_t i = 0; i < o.count; ++i) {
    if (!errors[i].empty()) {
      failures.push_back({{"seed", o.seed + i}, {"error", errors[i]}});
    } else if (!records[i]["ok"].get<bool>()) {
      failures.push_back(records[i]);
    }
  }
  emit({{"instances", o.count}, {"seed", o.seed}, {"failures", failures}, {"passed", failures.empty()}});
  return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in semidirect products of a finite semilattice by a group"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Parse and validate an instance file");
  validate->add_option("file", o.file, "Instance file")->required();

  auto* aut = app.add_subcommand("aut", "List the automorphisms of the semilattice");
  aut->add_option("file", o.file, "Instance file")->required();

  auto* automaton = app.add_subcommand("automaton", "Build the reachable automaton of a generating set");
  automaton->add_option("file", o.file, "Instance file")->required();
  automaton->add_option("--gens", o.gens, "Generating set name")->required();
  automaton->add_option("--dot", o.dot, "Write a Graphviz rendering to this path");
  automaton->add_option("--e", o.e, "Mark the accepting states for this element");

  auto* sofe = app.add_subcommand("sofe", "Generators of gamma(S(e))");
  sofe->add_option("file", o.file, "Instance file")->required();
  sofe->add_option("--gens", o.gens, "Generating set name")->required();
  sofe->add_option("--e", o.e, "Semilattice element label")->required();

  auto* inter = app.add_subcommand("intersect", "Generating set of an intersection, with certificates");
  inter->add_option("file", o.file, "Instance file")->required();
  inter->add_option("--x1", o.x1, "First generating set name")->required();
  inter->add_option("--x2", o.x2, "Second generating set name")->required();
  inter->add_option("--poly", o.poly, "Howson bound polynomial of the group, \"c0,c1,...\"");
  inter->add_option("--n", o.n, "Rank bound of the two inputs for --poly (default: max set size)");
  inter->add_flag("--no-prune", o.no_prune, "Keep redundant generators");

  auto* mem = app.add_subcommand("member", "Decide membership with a certificate");
  mem->add_option("file", o.file, "Instance file")->required();
  mem->add_option("--gens", o.gens, "Generating set name")->required();
  mem->add_option("--e", o.e, "Semilattice element label")->required();
  mem->add_option("--g", o.g, "Group element literal")->required();

  auto* bound = app.add_subcommand("bound", "Evaluate the rank and polynomial bounds");
  bound->add_option("--sizeE", o.size_e, "|E|")->required();
  bound->add_option("--sizeX", o.size_x, "|X|");
  bound->add_option("--poly", o.poly, "Polynomial coefficients \"c0,c1,...\"");
  bound->add_option("--n", o.n, "Rank bound n");

  auto* reduce = app.add_subcommand("reduce", "Restrict a locally finite action to a finite instance");
  reduce->add_option("--builtin", o.builtin, "example-s4, zchain or fs-<k>");
  reduce->add_option("--file", o.file, "Instance file used as a computable semilattice");
  reduce->add_option("--x1", o.x1, "Pair literals separated by ';'");
  reduce->add_option("--x2", o.x2, "Pair literals separated by ';'");
  reduce->add_option("--budget", o.budget, "Largest orbit or meet closure to materialize");

  auto* zchain = app.add_subcommand("zchain", "Class decomposition for Z acting on the chain Z");
  zchain->add_option("--x", o.zx, "Elements \"[m,n];[m,n]\"")->required();
  zchain->add_option("--x2", o.zx2, "Second set for a windowed intersection");
  zchain->add_option("--depth", o.depth, "Window depth")->check(CLI::Range(2, 64));

  auto* oracle = app.add_subcommand("oracle", "Check an intersection against brute-force closures");
  oracle->add_option("file", o.file, "Instance file")->required();
  oracle->add_option("--x1", o.x1, "First generating set name")->required();
  oracle->add_option("--x2", o.x2, "Second generating set name")->required();
  oracle->add_flag("--no-prune", o.no_prune, "Keep redundant generators");

  auto* selftest = app.add_subcommand("selftest", "Randomized invariant suite on small instances");
  selftest->add_option("--seed", o.seed, "First seed");
  selftest->add_option("--count", o.count, "Number of instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    Caps::current();
    if (validate->parsed()) return cmd_validate(o);
    if (aut->parsed()) return cmd_aut(o);
    if (automaton->parsed()) return cmd_automaton(o);
    if (sofe->parsed()) return cmd_sofe(o);
    if (inter->parsed()) return cmd_intersect(o);
    if (mem->parsed()) return cmd_member(o);
    if (bound->parsed()) return cmd_bound(o);
    if (reduce->parsed()) return cmd_reduce(o);
    if (zchain->parsed()) return cmd_zchain(o);
    if (oracle->parsed()) return cmd_oracle(o);
    if (selftest->parsed()) return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << "howson: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "howson: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "howson: " << e.what() << '\n';
    return 1;
  }
  return 3;
}
