// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every expected value is either a literal constant or recomputed
// here by brute force.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "howson/computable.hpp"
#include "howson/error.hpp"
#include "howson/instance.hpp"
#include "howson/intersection.hpp"
#include "howson/oracle.hpp"
#include "howson/rational.hpp"
#include "howson/subgroup.hpp"
#include "howson/zchain.hpp"

using namespace howson;

namespace {

std::string fixture(const std::string& name) {
  return std::string(HOWSON_FIXTURES) + "/" + name;
}

const std::vector<std::string> kFinite = {"d1-z2.json", "s3-antichain.json"};
const std::vector<std::string> kAll = {"d1-z2.json", "s3-antichain.json", "d1-free.json",
                                       "d1-free-abelian.json"};

// Collects failure notes; a criterion passes when none were recorded.
struct Tally {
  std::vector<std::string> notes;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && notes.size() < 5) notes.push_back(what);
    if (!ok && notes.size() == 5) notes.push_back("...");
  }
  bool ok() const { return notes.empty(); }
};

SdpElem fold(const Action& act, const std::vector<SdpElem>& alphabet, const LetterWord& w) {
  SdpElem acc = alphabet.at(static_cast<std::size_t>(w.at(0)));
  for (std::size_t i = 1; i < w.size(); ++i) {
    acc = act.mul(acc, alphabet.at(static_cast<std::size_t>(w[i])));
  }
  return acc;
}

bool folds_to(const SdpAutomaton& aut, const LetterWord& w, const SdpElem& u) {
  return !w.empty() && fold(aut.action(), aut.alphabet(), w) == u;
}

std::vector<std::pair<std::string, std::string>> genset_pairs(const Instance& inst) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, xa] : inst.gensets) {
    for (const auto& [b, xb] : inst.gensets) {
      if (!xa.empty() && !xb.empty()) out.emplace_back(a, b);
    }
  }
  return out;
}

std::string seed_label(std::uint64_t seed) {
  std::ostringstream os;
  os << "seed " << seed;
  return os.str();
}

// --- 1 -------------------------------------------------------------------
void oracle_equivalence(Tally& t) {
  for (const auto& name : kFinite) {
    Instance inst = load_instance(fixture(name));
    for (const auto& [a, b] : genset_pairs(inst)) {
      for (bool prune : {false, true}) {
        auto r = intersect(inst.action, inst.genset(a), inst.genset(b), {prune});
        auto rep = check_intersection(*inst.action, inst.genset(a), inst.genset(b), r.elements());
        t.expect(rep.equal, name + " " + a + "/" + b);
      }
    }
  }
  for (std::uint64_t seed = 1; seed <= 250; ++seed) {
    RandomInstance ri = random_instance(seed);
    auto r = intersect(ri.action, ri.x1, ri.x2);
    auto rep = check_intersection(*ri.action, ri.x1, ri.x2, r.elements());
    t.expect(rep.equal, seed_label(seed));
  }
}

// --- 2 -------------------------------------------------------------------
void run_semantics(Tally& t) {
  std::mt19937_64 rng(2024);
  for (const auto& name : kAll) {
    Instance inst = load_instance(fixture(name));
    for (const auto& [gname, x] : inst.gensets) {
      if (x.empty()) continue;
      SdpAutomaton aut = build_automaton(inst.action, x);
      const auto& alpha = aut.alphabet();
      std::uniform_int_distribution<int> len(1, 8);
      std::uniform_int_distribution<int> letter(0, static_cast<int>(alpha.size()) - 1);
      for (int i = 0; i < 1000; ++i) {
        LetterWord w(static_cast<std::size_t>(len(rng)));
        for (auto& l : w) l = letter(rng);
        SdpElem v = fold(*inst.action, alpha, w);
        int q = run(aut, w);
        bool ok = q > 0 && aut.state(q).e == v.e && aut.state(q).pi == inst.action->theta(v.g);
        t.expect(ok, name + " " + gname);
      }
    }
  }
}

// --- 3 -------------------------------------------------------------------
void sofe_against_filter(Tally& t, const std::shared_ptr<const Action>& act,
                         const std::vector<SdpElem>& x, const std::string& label) {
  SdpAutomaton aut = build_automaton(act, x);
  ClosureSet c = closure(*act, x);
  const Semilattice& s = act->semilattice();
  std::set<SdpElem> distinct(x.begin(), x.end());
  const BigInt bound = rank_bound(s.size(), distinct.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto e = static_cast<Element>(i);
    std::set<GroupElem> filtered;
    for (const auto& u : c.elements) {
      if (s.leq(e, u.e) && act->theta(u.g).is_identity()) filtered.insert(u.g);
    }
    SofE r = s_of_e_subgroup(aut, e);
    const std::string where = label + " e=" + s.label(e);
    if (filtered.empty()) {
      t.expect(r.empty, where + " expected empty");
      continue;
    }
    if (r.empty || !r.subgroup) {
      t.expect(false, where + " expected nonempty");
      continue;
    }
    const auto& els = r.subgroup->elements();
    t.expect(std::set<GroupElem>(els.begin(), els.end()) == filtered, where + " subgroup");
    t.expect(BigInt(r.subgroup->canonical_generators().size()) <= bound, where + " rank");
  }
}

void sofe_exact(Tally& t) {
  for (const auto& name : kFinite) {
    Instance inst = load_instance(fixture(name));
    for (const auto& [gname, x] : inst.gensets) {
      if (!x.empty()) sofe_against_filter(t, inst.action, x, name + " " + gname);
    }
  }
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomInstance ri = random_instance(seed);
    sofe_against_filter(t, ri.action, ri.x1, seed_label(seed));
  }
}

// --- 4 -------------------------------------------------------------------
GroupElem random_free_word(const Group& g, std::mt19937_64& rng, int max_len) {
  static const std::array<const char*, 4> letters{"x", "x-", "y", "y-"};
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  for (;;) {
    std::string text;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) text += std::string(i ? " " : "") + letters[static_cast<std::size_t>(pick(rng))];
    GroupElem w = g.parse_text(text);
    if (!g.is_identity(w)) return w;
  }
}

void free_backend(Tally& t) {
  auto g = std::make_shared<const Group>(Group::free({"x", "y"}));
  Subgroup lhs = subgroup(g, {g->parse_text("x")});
  Subgroup rhs = subgroup(g, {g->parse_text("x x"), g->parse_text("y")});
  Subgroup expected = subgroup(g, {g->parse_text("x x")});
  t.expect(intersect_subgroups(lhs, rhs).canonical() == expected.canonical(), "<x> n <x^2, y>");

  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> count(1, 3);
  for (int i = 0; i < 150; ++i) {
    std::vector<GroupElem> g1, g2;
    for (int k = count(rng); k > 0; --k) g1.push_back(random_free_word(*g, rng, 4));
    for (int k = count(rng); k > 0; --k) g2.push_back(random_free_word(*g, rng, 4));
    Subgroup h1 = subgroup(g, g1);
    Subgroup h2 = subgroup(g, g2);
    Subgroup m = intersect_subgroups(h1, h2);
    const long r1 = static_cast<long>(h1.rank());
    const long r2 = static_cast<long>(h2.rank());
    t.expect(static_cast<long>(m.rank()) <= 2 * (r1 - 1) * (r2 - 1) + 1,
             "pair " + std::to_string(i));
    for (const auto& b : m.canonical_generators()) {
      t.expect(h1.contains(b) && h2.contains(b), "pair " + std::to_string(i) + " basis");
    }
  }
}

// --- 5 -------------------------------------------------------------------
void certificates_fold(Tally& t, const IntersectionResult& r, const std::string& where) {
  for (const auto& c : r.gens) {
    t.expect(folds_to(*r.aut1, c.cert1, c.elem), where + " cert1");
    t.expect(folds_to(*r.aut2, c.cert2, c.elem), where + " cert2");
  }
  t.expect(certificates_valid(r), where + " certificates_valid");
}

void certificates(Tally& t) {
  for (const auto& name : kAll) {
    Instance inst = load_instance(fixture(name));
    for (const auto& [a, b] : genset_pairs(inst)) {
      for (bool prune : {false, true}) {
        auto r = intersect(inst.action, inst.genset(a), inst.genset(b), {prune});
        certificates_fold(t, r, name + " " + a + "/" + b);
      }
    }
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomInstance ri = random_instance(seed);
    certificates_fold(t, intersect(ri.action, ri.x1, ri.x2), seed_label(seed));
  }
}

// --- 6 -------------------------------------------------------------------
void membership(Tally& t) {
  for (const auto& name : kFinite) {
    Instance inst = load_instance(fixture(name));
    const Action& act = *inst.action;
    for (const auto& [gname, x] : inst.gensets) {
      if (x.empty()) continue;
      SdpAutomaton aut = build_automaton(inst.action, x);
      ClosureSet c = closure(act, x);
      for (std::size_t i = 0; i < act.semilattice().size(); ++i) {
        for (const auto& g : act.group_elements()) {
          SdpElem u{static_cast<Element>(i), g};
          Membership m = member(aut, u);
          const std::string where = name + " " + gname + " " + act.semilattice().label(u.e) +
                                    "," + act.group().format(g);
          t.expect(m.member == c.contains(u), where);
          if (m.member) t.expect(m.certificate && folds_to(aut, *m.certificate, u), where + " cert");
        }
      }
    }
  }
  Instance inst = load_instance(fixture("d1-free.json"));
  std::mt19937_64 rng(6);
  for (const auto& [gname, x] : inst.gensets) {
    if (x.empty()) continue;
    SdpAutomaton aut = build_automaton(inst.action, x);
    std::vector<SdpElem> letters = x;
    for (const auto& u : x) letters.push_back(inst.action->inv(u));
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    for (int i = 0; i < 100; ++i) {
      SdpElem u = letters[pick(rng)];
      for (int k = len(rng) - 1; k > 0; --k) u = inst.action->mul(u, letters[pick(rng)]);
      Membership m = member(aut, u);
      t.expect(m.member && m.certificate && folds_to(aut, *m.certificate, u),
               "d1-free " + gname + " product " + std::to_string(i));
    }
  }
}

// --- 7 -------------------------------------------------------------------
std::vector<TokenPair> pairs(const ComputableSemilattice& cs, const std::string& literal) {
  return {cs.parse_pair(nlohmann::json::parse(literal))};
}

void reduction(Tally& t) {
  ComputableSemilattice cs = example_s4();
  auto x1 = pairs(cs, "[4,0,1]");
  auto x2 = pairs(cs, "[3,0,1]");
  FiniteInstance fi = restrict_locally_finite(cs, x1, x2, 10000);
  t.expect(fi.height_checked, "height checked during the orbit");
  Instance back = parse_instance(instance_to_json(*fi.action, {{"X1", fi.x1}, {"X2", fi.x2}}));
  t.expect(back.action->semilattice().size() == fi.tokens.size(), "round trip size");
  build_automaton(back.action, back.genset("X1"));
  build_automaton(back.action, back.genset("X2"));
  auto r = intersect(back.action, back.genset("X1"), back.genset("X2"));
  t.expect(certificates_valid(r), "reduced intersection certificates");

  for (const auto& tok : fi.tokens) {
    for (const auto& g : fi.embedding) {
      t.expect(cs.height(cs.act(g, tok)) == cs.height(tok), "lambda at " + cs.label(tok));
      t.expect(cs.height(cs.act(cs.group->invert(g), tok)) == cs.height(tok),
               "lambda inverse at " + cs.label(tok));
    }
  }
  for (std::size_t i = 0; i < fi.tokens.size(); ++i) {
    for (std::size_t j = 0; j < fi.tokens.size(); ++j) {
      Token m = cs.meet(fi.tokens[i], fi.tokens[j]);
      Element k = back.action->semilattice().meet(static_cast<Element>(i), static_cast<Element>(j));
      t.expect(fi.tokens[static_cast<std::size_t>(k)] == m, "meet table agrees with the source");
    }
  }

  ComputableSemilattice z = zchain_semilattice();
  bool budget = false;
  try {
    restrict_locally_finite(z, pairs(z, "[0,1]"), {}, 10000);
  } catch (const Error& e) {
    budget = e.kind() == ErrorKind::BudgetExceeded;
  }
  t.expect(budget, "zchain reduction raises BudgetExceeded");
}

// --- 8 -------------------------------------------------------------------
void zchain(Tally& t) {
  const std::vector<ZElem> x{{0, 2}, {-1, 3}};
  ZDecomposition d = decompose_zz1(x, 8);
  t.expect(d.N == 1, "N = 1");
  t.expect(d.classes.size() == 1, "one class");
  if (d.classes.size() == 1) {
    t.expect(d.classes[0].M == std::optional<std::int64_t>(0), "M_0 = 0");
    t.expect(d.classes[0].gens == std::vector<ZElem>{{0, 1}}, "gens = {(0,1)}");
  }
  t.expect(d.certified, "certified");
  t.expect(verify_zz1(x, d, 8).agreement, "verification agrees");
  const std::int64_t bound = bound_M(x);
  t.expect(bound == 0, "bound M = 0");
  for (const auto& u : enumerate_window(x, 8).elements()) {
    t.expect(u.m <= bound, "m <= M at (" + std::to_string(u.m) + "," + std::to_string(u.n) + ")");
  }
}

// --- 9 -------------------------------------------------------------------
void bounds(Tally& t) {
  t.expect(rank_bound(3, 1) == BigInt(4095), "rank_bound(3,1)");
  t.expect(poly_bound(3, 2, {BigInt(0), BigInt(1)}) == BigInt(33554436), "poly_bound(3,2,x)");
}

// --- 10 ------------------------------------------------------------------
std::string capture(const std::string& args, int& code) {
  const std::string cmd = std::string(HOWSON_BIN) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void determinism(Tally& t) {
  std::vector<std::string> commands;
  for (const auto& name : kAll) {
    commands.push_back("intersect " + fixture(name) + " --x1 X1 --x2 X2");
    commands.push_back("automaton " + fixture(name) + " --gens X1");
  }
  commands.push_back("sofe " + fixture("d1-z2.json") + " --gens X2 --e 0");
  commands.push_back("reduce --builtin example-s4 --x1 '[4,0,1]' --x2 '[3,0,1]'");
  commands.push_back("zchain --x '[0,2];[-1,3]' --depth 8");
  commands.push_back("bound --sizeE 3 --sizeX 1 --poly 0,1 --n 2");
  commands.push_back("selftest --count 40 --seed 3");
  for (const auto& c : commands) {
    int code1 = 0;
    int code2 = 0;
    std::string a = capture(c, code1);
    std::string b = capture(c, code2);
    t.expect(code1 == 0 && code2 == 0 && !a.empty() && a == b, c);
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Tally&)> body;
    double limit_s;
  };
  const std::vector<Criterion> criteria = {
      {1, "intersect agrees with the brute-force oracle", oracle_equivalence, 60},
      {2, "run yields (sigma, theta) of the word's value", run_semantics, 0},
      {3, "gamma(S(e)) equals the filtered closure, within rank_bound", sofe_exact, 0},
      {4, "free backend intersections and Hanna Neumann bound", free_backend, 30},
      {5, "both certificates fold to every generator", certificates, 0},
      {6, "membership agrees with the oracle and certifies", membership, 0},
      {7, "example-s4 reduction and zchain budget failure", reduction, 0},
      {8, "zchain decomposition at depth 8", zchain, 10},
      {9, "closed-form bounds", bounds, 0},
      {10, "CLI output is byte-identical across runs", determinism, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) t.expect(secs < c.limit_s, "runtime over " + std::to_string(c.limit_s) + " s");
    std::printf("%s  [%2d] %s  (%zu checks, %.2f s)\n", t.ok() ? "PASS" : "FAIL", c.id, c.title,
                t.checks, secs);
    for (const auto& n : t.notes) std::printf("        %s\n", n.c_str());
    if (!t.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
