#include <doctest.h>

#include "howson/error.hpp"
#include "howson/intersection.hpp"
#include "howson/oracle.hpp"
#include "support.hpp"

using namespace howson;

TEST_CASE("closure examples") {
  testing::D1 d;
  ClosureSet c = closure_serial(*d.act, {d.u(d.a, true)});
  CHECK(c.elements.size() == 6);
  CHECK(c.elements.size() == d.act->semilattice().size() * d.act->group_elements().size());
  CHECK(closure_serial(*d.act, {d.u(d.a, false)}).elements.size() == 1);
  ClosureSet c2 = closure_serial(*d.act, {d.u(d.a, false), d.u(d.zero, true)});
  CHECK(c2.elements ==
        std::vector<SdpElem>{d.u(d.zero, false), d.u(d.zero, true), d.u(d.a, false)});
}

TEST_CASE("parallel and serial closures agree") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomInstance ri = random_instance(seed);
    ClosureSet a = closure_serial(*ri.action, ri.x1);
    ClosureSet b = closure_parallel(*ri.action, ri.x1);
    CHECK(a.elements == b.elements);
    CHECK(a.depth == b.depth);
  }
}

TEST_CASE("closure is closed, idempotent and monotone") {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    RandomInstance ri = random_instance(seed);
    const Action& act = *ri.action;
    ClosureSet c = closure(act, ri.x1);
    for (const auto& u : c.elements) {
      CHECK(c.contains(act.inv(u)));
      for (const auto& v : c.elements) CHECK(c.contains(act.mul(u, v)));
    }
    CHECK(closure(act, c.elements).elements == c.elements);
    std::vector<SdpElem> bigger = ri.x1;
    bigger.insert(bigger.end(), ri.x2.begin(), ri.x2.end());
    ClosureSet cb = closure(act, bigger);
    for (const auto& u : c.elements) CHECK(cb.contains(u));
  }
}

TEST_CASE("closure cap") {
  testing::D1 d;
  CHECK_THROWS_AS(closure_serial(*d.act, {d.u(d.a, true)}, 3), CapExceeded);
}

TEST_CASE("check_intersection detects a corrupted result") {
  testing::D1 d;
  std::vector<SdpElem> x1{d.u(d.a, true)};
  std::vector<SdpElem> x2{d.u(d.a, false), d.u(d.zero, true)};
  IntersectionResult r = intersect(d.act, x1, x2, {true});
  auto gens = r.elements();
  REQUIRE(gens.size() == 2);
  gens.pop_back();
  IntersectionReport rep = check_intersection(*d.act, x1, x2, gens);
  CHECK_FALSE(rep.equal);
  CHECK_FALSE(rep.missing.empty());
  auto j = rep.to_json(*d.act);
  CHECK(j["equal"] == false);
}

TEST_CASE("random instances are well formed and reproducible") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomInstance a = random_instance(seed);
    RandomInstance b = random_instance(seed);
    CHECK(a.x1 == b.x1);
    CHECK(a.x2 == b.x2);
    CHECK(a.action->semilattice().meet_table() == b.action->semilattice().meet_table());
    CHECK(a.action->semilattice().size() <= 4);
    CHECK(a.action->group_elements().size() <= 12);
    CHECK(a.x1.size() <= 3);
    CHECK_FALSE(a.x1.empty());
  }
  CHECK(small_groups(12).size() == 12);
}
