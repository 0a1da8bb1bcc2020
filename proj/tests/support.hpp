#pragma once

#include <memory>
#include <string>
#include <vector>

#include "howson/action.hpp"
#include "howson/instance.hpp"

namespace testing {

inline std::string fixture(const std::string& name) {
  return std::string(HOWSON_FIXTURES) + "/" + name;
}

// D1 = {0, a, b} with a ^ b = 0, acted on by Z/2 = <s> through the swap of a
// and b.
struct D1 {
  std::shared_ptr<const howson::Semilattice> s =
      std::make_shared<const howson::Semilattice>(howson::antichain_with_bottom(2));
  std::shared_ptr<const howson::Group> g = std::make_shared<const howson::Group>(
      howson::Group::finite_perm(2, {"s"}, {{1, 0}}));
  std::shared_ptr<const howson::Action> act = std::make_shared<const howson::Action>(
      howson::Action::build(s, g, {howson::SAut({0, 2, 1})}));

  static constexpr howson::Element zero = 0;
  static constexpr howson::Element a = 1;
  static constexpr howson::Element b = 2;

  howson::GroupElem one() const { return g->identity(); }
  howson::GroupElem swap() const { return g->generator(0); }
  howson::SdpElem u(howson::Element e, bool odd) const { return {e, odd ? swap() : one()}; }
};

}  // namespace testing
