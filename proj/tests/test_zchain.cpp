#include <doctest.h>

#include <random>

#include "howson/error.hpp"
#include "howson/zchain.hpp"

using namespace howson;

TEST_CASE("product and inverse") {
  CHECK(z_mul({0, 1}, {0, 1}) == ZElem{0, 2});
  CHECK(z_inv({0, 1}) == ZElem{-1, -1});
  CHECK(z_mul({7, 0}, {7, 0}) == ZElem{7, 0});
  CHECK(z_pow({3, 2}, 4) == ZElem{3, 8});
  CHECK(z_mul(z_mul({0, 2}, {0, 2}), {-4, -3}) == ZElem{0, 1});
  CHECK_THROWS_AS(z_mul({0, INT64_MAX}, {0, 1}), Error);
}

TEST_CASE("inverse semigroup axioms on random triples") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-20, 20);
  for (int i = 0; i < 10000; ++i) {
    ZElem u{d(rng), d(rng)};
    ZElem v{d(rng), d(rng)};
    ZElem w{d(rng), d(rng)};
    CHECK(z_mul(z_mul(u, v), w) == z_mul(u, z_mul(v, w)));
    CHECK(z_mul(z_mul(u, z_inv(u)), u) == u);
    CHECK(z_inv(z_inv(u)) == u);
  }
}

TEST_CASE("bound and period") {
  CHECK(bound_M({{0, 2}, {-1, 3}}) == 0);
  CHECK(bound_M({{5, 0}}) == 5);
  CHECK(bound_M({{0, 1}}) == 0);
  CHECK(gamma_period({{0, 2}, {-1, 3}}) == 1);
  CHECK(gamma_period({{0, 4}, {0, 6}}) == 2);
  CHECK(gamma_period({{3, 0}}) == 0);
}

TEST_CASE("windows") {
  auto w1 = enumerate_window({{0, 1}}, 1).elements();
  CHECK(w1 == std::set<ZElem>{{0, 1}, {-1, -1}});
  auto w2 = enumerate_window({{0, 1}}, 2);
  CHECK(w2.contains({0, 2}));
  CHECK(w2.contains({-1, 0}));
  CHECK(enumerate_window({{3, 0}}, 5).elements() == std::set<ZElem>{{3, 0}});
  CHECK_THROWS_AS(enumerate_window({{0, 1}, {0, 3}}, 30, 100), CapExceeded);
  CHECK(enumerate_window({{0, 2}, {-1, 3}}, 3).found_at.at({0, 1}) == 3);
}

TEST_CASE("boundedness and period over windows") {
  std::vector<std::vector<ZElem>> sets{{{0, 2}, {-1, 3}}, {{2, 4}, {1, 6}}, {{0, 1}, {5, 0}}};
  for (const auto& x : sets) {
    const auto m = bound_M(x);
    const auto n = gamma_period(x);
    for (std::size_t depth = 1; depth <= 7; ++depth) {
      for (const auto& u : enumerate_window(x, depth).elements()) {
        CHECK(u.m <= m);
        CHECK(u.n % n == 0);
      }
    }
  }
}

TEST_CASE("decomposition of the worked instance") {
  std::vector<ZElem> x{{0, 2}, {-1, 3}};
  ZDecomposition d = decompose_zz1(x, 8);
  CHECK(d.N == 1);
  REQUIRE(d.classes.size() == 1);
  CHECK(d.classes[0].M == 0);
  CHECK(d.classes[0].s_prime.empty());
  CHECK(d.classes[0].gens == std::vector<ZElem>{{0, 1}});
  CHECK(d.certified);
  ZVerification v = verify_zz1(x, d, 8);
  CHECK(v.agreement);
  CHECK(v.forward_depth >= 2 * 8 + 4);

  ZDecomposition bad = d;
  bad.classes[0].M = -1;
  bad.classes[0].gens = {{-1, 1}};
  CHECK_FALSE(verify_zz1(x, bad, 8).agreement);
}

TEST_CASE("decomposition fixpoints and small cases") {
  ZDecomposition one = decompose_zz1({{0, 1}}, 6);
  CHECK(one.classes[0].gens == std::vector<ZElem>{{0, 1}});
  CHECK(verify_zz1({{0, 1}}, one, 6).agreement);
  ZDecomposition two = decompose_zz1({{0, 2}}, 6);
  CHECK(two.N == 2);
  REQUIRE(two.classes.size() == 1);
  CHECK(two.classes[0].residue == 0);
  CHECK(two.classes[0].gens == std::vector<ZElem>{{0, 2}});
  CHECK_THROWS_AS(decompose_zz1({{3, 0}}, 6), Error);
}

TEST_CASE("a class holding only idempotents is generated by them") {
  std::vector<ZElem> x{{0, 2}, {1, 0}};
  ZDecomposition d = decompose_zz1(x, 8);
  REQUIRE(d.classes.size() == 2);
  CHECK_FALSE(d.classes[1].M);
  CHECK(d.classes[1].gens == std::vector<ZElem>{{1, 0}});
  CHECK(verify_zz1(x, d, 8).agreement);
}

TEST_CASE("windowed intersection") {
  ZDecomposition w = windowed_intersection({{0, 2}}, {{0, 3}}, 6);
  CHECK(w.N == 6);
  CHECK_FALSE(w.certified);
  CHECK(w.classes[0].gens == std::vector<ZElem>{{0, 6}});
}

TEST_CASE("element parsing") {
  auto x = parse_zelems("[0,2];[-1,3]");
  CHECK(x == std::vector<ZElem>{{0, 2}, {-1, 3}});
  CHECK_THROWS_AS(parse_zelems("[0]"), Error);
  CHECK_THROWS_AS(parse_zelems(""), Error);
}
