#include "howson/computable.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "howson/error.hpp"
#include "howson/subgroup.hpp"

namespace howson {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

std::int64_t json_int(const nlohmann::json& j) {
  if (!j.is_number_integer()) throw Error(ErrorKind::ParseError, "expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t single_shift(const GroupElem& g) { return g.data().at(0); }

}  // namespace

ComputableSemilattice example_s4() {
  ComputableSemilattice cs;
  cs.name = "example-s4";
  cs.group = std::make_shared<const Group>(Group::free_abelian({"t"}));
  // Levels are ordered by k, larger k lower; even levels 2n hold n
  // incomparable elements whose pairwise meet is the single element of
  // level 2n + 1.
  cs.meet = [](Token x, Token y) {
    if (x.a != y.a) return x.a > y.a ? x : y;
    if (x.b == y.b) return x;
    return Token{x.a + 1, 0};
  };
  cs.act = [](const GroupElem& g, Token t) {
    if (t.a % 2 == 1) return t;
    return Token{t.a, mod(t.b + single_shift(g), t.a / 2)};
  };
  cs.label = [](Token t) { return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + ")"; };
  cs.height = [](Token t) { return t.a - 1; };
  cs.parse_pair = [group = cs.group](const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) {
      throw Error(ErrorKind::ParseError, "example-s4 literal must be [k, x, m]");
    }
    std::int64_t k = json_int(j[0]);
    std::int64_t x = json_int(j[1]);
    if (k < 1) throw Error(ErrorKind::ParseError, "example-s4 level must be >= 1");
    if (k % 2 == 1 && x != 0) throw Error(ErrorKind::ParseError, "odd levels hold only (k, 0)");
    if (k % 2 == 0) x = mod(x, k / 2);
    return TokenPair{Token{k, x}, GroupElem(GroupKind::FreeAbelian, {json_int(j[2])})};
  };
  return cs;
}

ComputableSemilattice zchain_semilattice() {
  ComputableSemilattice cs;
  cs.name = "zchain";
  cs.group = std::make_shared<const Group>(Group::free_abelian({"t"}));
  cs.meet = [](Token x, Token y) { return x.a <= y.a ? x : y; };
  cs.act = [](const GroupElem& g, Token t) { return Token{t.a + single_shift(g), 0}; };
  cs.label = [](Token t) { return std::to_string(t.a); };
  cs.parse_pair = [](const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "zchain literal must be [m, n]");
    return TokenPair{Token{json_int(j[0]), 0}, GroupElem(GroupKind::FreeAbelian, {json_int(j[1])})};
  };
  return cs;
}

ComputableSemilattice free_semilattice_action(int k) {
  if (k < 1 || k > 16) throw CapExceeded("free semilattice rank " + std::to_string(k), 16);
  ComputableSemilattice cs;
  cs.name = "fs-" + std::to_string(k);
  std::vector<int> swap(static_cast<std::size_t>(k));
  std::vector<int> cycle(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    swap[static_cast<std::size_t>(i)] = i;
    cycle[static_cast<std::size_t>(i)] = (i + 1) % k;
  }
  if (k >= 2) std::swap(swap[0], swap[1]);
  cs.group = std::make_shared<const Group>(Group::finite_perm(k, {"s", "c"}, {swap, cycle}));
  cs.meet = [](Token x, Token y) { return Token{x.a | y.a, 0}; };
  cs.act = [k](const GroupElem& g, Token t) {
    std::int64_t out = 0;
    for (int i = 0; i < k; ++i) {
      if (t.a & (std::int64_t{1} << i)) out |= std::int64_t{1} << g.data()[static_cast<std::size_t>(i)];
    }
    return Token{out, 0};
  };
  cs.label = [k](Token t) {
    std::string l = "{";
    bool first = true;
    for (int i = 0; i < k; ++i) {
      if (t.a & (std::int64_t{1} << i)) {
        if (!first) l += ",";
        l += std::to_string(i + 1);
        first = false;
      }
    }
    return l + "}";
  };
  cs.parse_pair = [k, group = cs.group](const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array()) {
      throw Error(ErrorKind::ParseError, "fs-k literal must be [[subset], [permutation]]");
    }
    std::int64_t mask = 0;
    for (const auto& v : j[0]) {
      std::int64_t p = json_int(v);
      if (p < 1 || p > k) throw Error(ErrorKind::ParseError, "subset point out of range");
      mask |= std::int64_t{1} << (p - 1);
    }
    if (mask == 0) throw Error(ErrorKind::ParseError, "free semilattice elements are nonempty");
    return TokenPair{Token{mask, 0}, group->parse(j[1])};
  };
  return cs;
}

ComputableSemilattice from_action(const Action& act) {
  auto shared = std::make_shared<const Action>(act);
  ComputableSemilattice cs;
  cs.name = "instance";
  cs.group = act.group_ptr();
  cs.meet = [shared](Token x, Token y) {
    return Token{shared->semilattice().meet(static_cast<Element>(x.a), static_cast<Element>(y.a)), 0};
  };
  cs.act = [shared](const GroupElem& g, Token t) {
    return Token{shared->apply(g, static_cast<Element>(t.a)), 0};
  };
  cs.label = [shared](Token t) { return shared->semilattice().label(static_cast<Element>(t.a)); };
  cs.parse_pair = [shared](const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("e") || !j.contains("g")) {
      throw Error(ErrorKind::ParseError, "instance literal must be {\"e\": label, \"g\": element}");
    }
    Element e = shared->semilattice().index_of(j["e"].get<std::string>());
    return TokenPair{Token{e, 0}, shared->group().parse(j["g"])};
  };
  return cs;
}

ComputableSemilattice builtin(const std::string& name) {
  if (name == "example-s4") return example_s4();
  if (name == "zchain") return zchain_semilattice();
  if (name.rfind("fs-", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(name.substr(3));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "bad builtin name '" + name + "'");
    }
    return free_semilattice_action(k);
  }
  throw Error(ErrorKind::Usage, "unknown builtin '" + name + "' (expected example-s4, zchain, fs-<k>)");
}

std::vector<Token> orbit(const ComputableSemilattice& cs, std::span<const GroupElem> gens,
                         std::span<const Token> seeds, std::size_t budget) {
  std::vector<GroupElem> moves;
  for (const auto& g : gens) {
    cs.group->check(g);
    moves.push_back(g);
    moves.push_back(cs.group->invert(g));
  }
  std::vector<Token> out;
  std::set<Token> seen;
  for (const auto& t : seeds) {
    if (seen.insert(t).second) out.push_back(t);
  }
  if (out.size() > budget) throw BudgetExceeded(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& m : moves) {
      Token next = cs.act(m, out[i]);
      if (cs.height && cs.height(next) != cs.height(out[i])) {
        throw Error(ErrorKind::ClosureViolation,
                    "height not preserved: " + cs.label(out[i]) + " -> " + cs.label(next));
      }
      if (!seen.insert(next).second) continue;
      out.push_back(next);
      if (out.size() > budget) throw BudgetExceeded(out.size());
    }
  }
  return out;
}

GroupElem FiniteInstance::to_ambient(const GroupElem& g) const {
  const Group& restricted = action->group();
  if (restricted.kind() == GroupKind::FinitePerm) {
    return restricted.degree() == ambient->degree() ? g : ambient->identity();
  }
  GenWord w;
  if (restricted.kind() == GroupKind::Free) {
    for (auto l : g.data()) w.push_back(static_cast<int>(l));
  } else {
    for (std::size_t i = 0; i < g.data().size(); ++i) {
      auto c = g.data()[i];
      for (std::int64_t k = 0; k < (c < 0 ? -c : c); ++k) {
        w.push_back(c < 0 ? -(static_cast<int>(i) + 1) : static_cast<int>(i) + 1);
      }
    }
  }
  return ambient->evaluate(w, embedding);
}

namespace {

std::vector<std::string> numbered_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back("y" + std::to_string(i + 1));
  return names;
}

// Restricted group on a basis of H = <ys>, with the basis images in the
// ambient group.
std::pair<std::shared_ptr<const Group>, std::vector<GroupElem>> present_subgroup(
    const std::shared_ptr<const Group>& ambient, const std::vector<GroupElem>& ys) {
  Subgroup h = Subgroup::generate(ambient, ys);
  if (h.is_trivial()) {
    auto trivial = std::make_shared<const Group>(Group::finite_perm(1, {"y1"}, {{0}}));
    return {trivial, {ambient->identity()}};
  }
  if (ambient->kind() == GroupKind::FinitePerm) {
    std::vector<std::vector<int>> perms;
    for (const auto& y : ys) perms.emplace_back(y.data().begin(), y.data().end());
    return {std::make_shared<const Group>(
                Group::finite_perm(ambient->degree(), numbered_names(ys.size()), perms)),
            ys};
  }
  std::vector<GroupElem> basis = h.canonical_generators();
  auto names = numbered_names(basis.size());
  auto group = ambient->kind() == GroupKind::Free
                   ? std::make_shared<const Group>(Group::free(names))
                   : std::make_shared<const Group>(Group::free_abelian(names));
  return {group, basis};
}

GroupElem translate(const Group& restricted, const Subgroup& basis_span, const GroupElem& g) {
  if (basis_span.is_trivial()) return restricted.identity();
  if (restricted.kind() == GroupKind::FinitePerm) return g;
  auto word = basis_span.express(g);
  if (!word) throw Error(ErrorKind::InternalInvariantViolation, "group part outside H");
  if (restricted.kind() == GroupKind::Free) {
    GenWord reduced = reduce_word(*word);
    return GroupElem(GroupKind::Free, std::vector<std::int64_t>(reduced.begin(), reduced.end()));
  }
  std::vector<std::int64_t> exps(restricted.rank(), 0);
  for (int l : *word) exps[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return GroupElem(GroupKind::FreeAbelian, std::move(exps));
}

}  // namespace

FiniteInstance restrict_locally_finite(const ComputableSemilattice& cs,
                                       std::span<const TokenPair> x1,
                                       std::span<const TokenPair> x2, std::size_t budget) {
  std::vector<GroupElem> ys;
  std::vector<Token> seeds;
  for (auto side : {x1, x2}) {
    for (const auto& [t, g] : side) {
      cs.group->check(g);
      if (std::find(ys.begin(), ys.end(), g) == ys.end()) ys.push_back(g);
      seeds.push_back(t);
    }
  }
  FiniteInstance inst;
  inst.ambient = cs.group;
  auto [restricted, embedding] = present_subgroup(cs.group, ys);
  inst.embedding = embedding;

  std::vector<Token> tokens = orbit(cs, ys, seeds, budget);
  inst.orbit_size = tokens.size();
  inst.height_checked = static_cast<bool>(cs.height);
  std::set<Token> in(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Token m = cs.meet(tokens[i], tokens[j]);
      if (!in.insert(m).second) continue;
      tokens.push_back(m);
      if (tokens.size() > budget) throw BudgetExceeded(tokens.size());
    }
  }
  std::sort(tokens.begin(), tokens.end());
  std::map<Token, Element> index;
  for (std::size_t i = 0; i < tokens.size(); ++i) index[tokens[i]] = static_cast<Element>(i);

  const std::size_t n = tokens.size();
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(cs.label(tokens[i]));
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(cs.meet(tokens[i], tokens[j]));
      if (it == index.end()) {
        throw Error(ErrorKind::ClosureViolation, "meet of " + labels.back() + " and " +
                                                     cs.label(tokens[j]) + " leaves E'");
      }
      table[i][j] = it->second;
    }
  }
  auto semilattice = std::make_shared<const Semilattice>(std::move(labels), std::move(table));

  std::vector<SAut> images;
  for (const auto& g : embedding) {
    std::vector<Element> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      Token moved = cs.act(g, tokens[i]);
      auto it = index.find(moved);
      if (it == index.end()) {
        throw Error(ErrorKind::ClosureViolation, "generator maps " + cs.label(tokens[i]) +
                                                     " to " + cs.label(moved) + " outside E'");
      }
      img[i] = it->second;
    }
    images.emplace_back(std::move(img));
  }
  inst.action = std::make_shared<const Action>(Action::build(semilattice, restricted, images));
  inst.tokens = std::move(tokens);

  Subgroup basis_span = Subgroup::generate(cs.group, embedding);
  auto convert = [&](std::span<const TokenPair> side) {
    std::vector<SdpElem> out;
    for (const auto& [t, g] : side) out.push_back({index.at(t), translate(*restricted, basis_span, g)});
    return out;
  };
  inst.x1 = convert(x1);
  inst.x2 = convert(x2);
  return inst;
}

}  // namespace howson
