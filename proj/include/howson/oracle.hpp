#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "howson/action.hpp"

namespace howson {

/// Inverse subsemigroup generated by a finite set, as a sorted element list.
struct ClosureSet {
  std::vector<SdpElem> elements;
  std::vector<SdpElem> generators;
  /// Number of product rounds until no new element appeared.
  std::size_t depth = 0;

  bool contains(const SdpElem& u) const;
};

/// Round-based fixpoint: start from X u X^-1 and multiply the newest layer
/// with everything known on both sides. Throws CapExceeded past `cap`
/// elements (default from Caps). Single-threaded reference version.
ClosureSet closure_serial(const Action& act, const std::vector<SdpElem>& x,
                          std::optional<std::size_t> cap = std::nullopt);
/// Same rounds with the products of each layer computed by OpenMP threads.
ClosureSet closure_parallel(const Action& act, const std::vector<SdpElem>& x,
                            std::optional<std::size_t> cap = std::nullopt);
/// Dispatches to closure_parallel.
ClosureSet closure(const Action& act, const std::vector<SdpElem>& x,
                   std::optional<std::size_t> cap = std::nullopt);

struct IntersectionReport {
  std::size_t lhs_size = 0;
  std::size_t rhs_size = 0;
  bool equal = false;
  std::vector<SdpElem> missing;   // in both closures, not generated by gens
  std::vector<SdpElem> extra;     // generated by gens, outside the intersection

  nlohmann::json to_json(const Action& act) const;
};

/// Compares closure(gens) with closure(x1) n closure(x2); empty gens stand
/// for the empty set.
IntersectionReport check_intersection(const Action& act, const std::vector<SdpElem>& x1,
                                      const std::vector<SdpElem>& x2,
                                      const std::vector<SdpElem>& gens,
                                      std::optional<std::size_t> cap = std::nullopt);

struct RandomSpec {
  int max_elements = 4;        // |E|
  int max_group_order = 12;    // |G|
  int max_generators = 3;      // |X_i|
};

struct RandomInstance {
  std::uint64_t seed = 0;
  std::shared_ptr<const Action> action;
  std::vector<SdpElem> x1;
  std::vector<SdpElem> x2;
};

/// Reproducible random finite instance: E is the intersection closure of
/// random subsets of a small ground set, G one of a fixed list of small
/// permutation groups, and each generator image a random automorphism,
/// resampled until the images extend to a homomorphism.
RandomInstance random_instance(std::uint64_t seed, const RandomSpec& spec = {});

/// Small permutation groups of order at most 12 used by random_instance.
std::vector<std::shared_ptr<const Group>> small_groups(int max_order);

}  // namespace howson
