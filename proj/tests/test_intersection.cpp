#include <doctest.h>

#include <random>
#include <set>

#include "howson/error.hpp"
#include "howson/intersection.hpp"
#include "howson/oracle.hpp"
#include "support.hpp"

using namespace howson;

namespace {

BigInt poly_bound_by_loop(std::size_t size_e, std::size_t n, const std::vector<BigInt>& p) {
  BigInt fact = 1;
  for (std::size_t i = 2; i <= size_e; ++i) fact *= i;
  BigInt q = 0;
  BigInt term = 1;
  for (BigInt j = 0; j < 2 * fact; ++j) {
    q += term;
    term *= 2 * n;
  }
  BigInt value = 0;
  BigInt power = 1;
  for (const auto& c : p) {
    value += c * power;
    power *= q;
  }
  return fact * (1 + value);
}

}  // namespace

TEST_CASE("profiles of the D1 example") {
  testing::D1 d;
  SdpAutomaton aut = build_automaton(d.act, {d.u(d.a, true)});
  Profile p = profile(aut);
  CHECK(p.pairs.size() == 6);
  for (const auto& entry : p.pairs) {
    SdpElem u = aut.evaluate(entry.word);
    CHECK(u == SdpElem{entry.e, entry.witness});
    CHECK(d.act->theta(entry.witness) == entry.pi);
  }
  SdpAutomaton idem = build_automaton(d.act, {d.u(d.a, false)});
  Profile pi = profile(idem);
  REQUIRE(pi.pairs.size() == 1);
  CHECK(pi.pairs[0].e == d.a);
  CHECK(pi.pairs[0].pi.is_identity());
}

TEST_CASE("S_i subgroups at profile pairs") {
  testing::D1 d;
  SdpAutomaton aut = build_automaton(d.act, {d.u(d.a, true)});
  SAut tau({0, 2, 1});
  SofE s = s_i_subgroup(aut, d.a, tau);
  CHECK(s.target == d.b);
  REQUIRE(s.subgroup);
  CHECK(s.subgroup->is_trivial());
  SofE z = s_i_subgroup(aut, d.zero, SAut::identity(3));
  REQUIRE(z.subgroup);
  CHECK(z.subgroup->is_trivial());
}

TEST_CASE("D1 intersection matches the oracle with and without pruning") {
  testing::D1 d;
  std::vector<SdpElem> x1{d.u(d.a, true)};
  std::vector<SdpElem> x2{d.u(d.a, false), d.u(d.zero, true)};
  for (bool prune : {false, true}) {
    IntersectionResult r = intersect(d.act, x1, x2, {prune});
    CHECK(certificates_valid(r));
    IntersectionReport rep = check_intersection(*d.act, x1, x2, r.elements());
    CHECK(rep.equal);
    CHECK(rep.lhs_size == 3);
    CHECK(rep.rhs_size == 3);
    CHECK(r.gens.size() == (prune ? 2U : 3U));
  }
}

TEST_CASE("intersection with itself regenerates the set") {
  testing::D1 d;
  std::vector<SdpElem> x{d.u(d.a, true)};
  IntersectionResult r = intersect(d.act, x, x);
  IntersectionReport rep = check_intersection(*d.act, x, x, r.elements());
  CHECK(rep.equal);
  CHECK(rep.lhs_size == 6);
  // P = Q = P1 for identical inputs.
  CHECK(r.q.size() == r.p1.pairs.size());
  for (const auto& pd : r.q) CHECK(pd.in_p);
}

TEST_CASE("disjoint idempotent singletons intersect to nothing") {
  testing::D1 d;
  IntersectionResult r = intersect(d.act, {d.u(d.a, false)}, {d.u(d.b, false)});
  CHECK(r.gens.empty());
  CHECK(r.q.empty());
  CHECK(r.to_json()["empty"] == true);
}

TEST_CASE("membership examples") {
  testing::D1 d;
  SdpAutomaton aut1 = build_automaton(d.act, {d.u(d.a, true)});
  Membership m = member(aut1, d.u(d.b, false));
  CHECK(m.member);
  REQUIRE(m.certificate);
  CHECK(aut1.evaluate(*m.certificate) == d.u(d.b, false));

  SdpAutomaton aut2 = build_automaton(d.act, {d.u(d.a, false)});
  Membership single = member(aut2, d.u(d.a, false));
  CHECK(single.member);
  CHECK(single.certificate->size() == 1);
  CHECK_FALSE(member(aut2, d.u(d.b, false)).member);
}

TEST_CASE("P is contained in Q, and the coset identity holds on random instances") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    RandomInstance ri = random_instance(seed);
    const Action& act = *ri.action;
    const Group& grp = act.group();
    IntersectionResult r = intersect(ri.action, ri.x1, ri.x2);
    CAPTURE(seed);
    CHECK(certificates_valid(r));
    ClosureSet c1 = closure_serial(act, ri.x1);
    for (const auto& pd : r.q) {
      CHECK(r.p1.find(pd.e, pd.pi));
      CHECK(r.p2.find(pd.e, pd.pi));
      // gamma(S'_1(e, pi)) = {g : (e, g) in <X1>, theta_g = pi} is the left
      // coset g_1 gamma(S_1(e, pi)).
      const ProfileEntry* e1 = r.p1.find(pd.e, pd.pi);
      SofE s1 = s_i_subgroup(*r.aut1, pd.e, pd.pi);
      std::set<GroupElem> coset;
      for (const auto& h : s1.subgroup->elements()) coset.insert(grp.compose(e1->witness, h));
      std::set<GroupElem> s_prime;
      for (const auto& u : c1.elements) {
        if (u.e == pd.e && act.theta(u.g) == pd.pi) s_prime.insert(u.g);
      }
      CHECK(coset == s_prime);
    }
  }
}

TEST_CASE("membership agrees with the oracle exhaustively on random instances") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    RandomInstance ri = random_instance(seed);
    const Action& act = *ri.action;
    SdpAutomaton aut = build_automaton(ri.action, ri.x2);
    ClosureSet c = closure_serial(act, ri.x2);
    SofECache cache(aut);
    Profile prof = profile(aut);
    for (Element e = 0; e < static_cast<Element>(act.semilattice().size()); ++e) {
      for (const auto& g : act.group_elements()) {
        SdpElem u{e, g};
        Membership m = member(aut, cache, prof, u);
        CHECK(m.member == c.contains(u));
        if (m.member) CHECK(aut.evaluate(*m.certificate) == u);
      }
    }
  }
}

TEST_CASE("free fixture: random products are members and intersections are complete on samples") {
  Instance inst = load_instance(testing::fixture("d1-free.json"));
  const auto& x1 = inst.genset("X1");
  const auto& x2 = inst.genset("X2");
  IntersectionResult r = intersect(inst.action, x1, x2);
  CHECK(certificates_valid(r));
  SdpAutomaton aut1 = build_automaton(inst.action, x1);
  SdpAutomaton aut2 = build_automaton(inst.action, x2);
  SdpAutomaton autr = build_automaton(inst.action, r.elements());
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(aut1.alphabet().size()) - 1);
  int shared = 0;
  for (int i = 0; i < 300; ++i) {
    LetterWord w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = letter(rng);
    SdpElem u = aut1.evaluate(w);
    Membership m1 = member(aut1, u);
    REQUIRE(m1.member);
    CHECK(aut1.evaluate(*m1.certificate) == u);
    if (member(aut2, u).member) {
      ++shared;
      CHECK(member(autr, u).member);
    }
  }
  CHECK(shared > 0);
}

TEST_CASE("free-abelian fixture: certificates and sampled completeness") {
  Instance inst = load_instance(testing::fixture("d1-free-abelian.json"));
  const auto& x1 = inst.genset("X1");
  const auto& x2 = inst.genset("X2");
  IntersectionResult r = intersect(inst.action, x1, x2);
  CHECK(certificates_valid(r));
  SdpAutomaton aut1 = build_automaton(inst.action, x1);
  SdpAutomaton aut2 = build_automaton(inst.action, x2);
  SdpAutomaton autr = build_automaton(inst.action, r.elements());
  for (const auto& g : r.elements()) {
    CHECK(member(aut1, g).member);
    CHECK(member(aut2, g).member);
  }
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(aut1.alphabet().size()) - 1);
  for (int i = 0; i < 300; ++i) {
    LetterWord w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = letter(rng);
    SdpElem u = aut1.evaluate(w);
    if (member(aut2, u).member) CHECK(member(autr, u).member);
  }
}

TEST_CASE("generator count respects the counting bound") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    RandomInstance ri = random_instance(seed);
    IntersectionResult r = intersect(ri.action, ri.x1, ri.x2);
    const std::size_t n = ri.action->semilattice().size();
    BigInt bound = factorial(n) * (1 + rank_bound(n, std::max(ri.x1.size(), ri.x2.size())));
    CHECK(BigInt(r.gens.size()) <= bound);
    CHECK(r.q.size() <= factorial(n) * n);
  }
}

TEST_CASE("polynomial bound") {
  CHECK(poly_bound(1, 1, {0, 1}) == 4);
  CHECK(poly_bound(3, 2, {0, 1}) == 33554436);
  CHECK(poly_bound(3, 2, {0}) == 6);
  CHECK(poly_bound(2, 3, {1, 2, 1}) == poly_bound_by_loop(2, 3, {1, 2, 1}));
  CHECK(poly_bound(4, 1, {0, 1}) == poly_bound_by_loop(4, 1, {0, 1}));
  CHECK_THROWS_AS(poly_bound(2, 1, {-1}), Error);
}
