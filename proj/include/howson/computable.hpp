#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "howson/action.hpp"

namespace howson {

/// Opaque element of a possibly infinite semilattice.
struct Token {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const Token&, const Token&) = default;
  friend bool operator==(const Token&, const Token&) = default;
};

using TokenPair = std::pair<Token, GroupElem>;

/// A semilattice known only through callbacks, acted on by a group. The
/// callbacks must be pure. Axioms are checked lazily on the tokens that a
/// computation materializes.
struct ComputableSemilattice {
  std::string name;
  std::shared_ptr<const Group> group;
  std::function<Token(Token, Token)> meet;
  std::function<Token(const GroupElem&, Token)> act;
  std::function<std::string(Token)> label;
  /// Optional height; when present, orbit() asserts it is preserved.
  std::function<std::int64_t(Token)> height;
  /// Parses one (token, group element) literal for the CLI.
  std::function<TokenPair(const nlohmann::json&)> parse_pair;
};

/// E = {(2n+1, 0) : n >= 0} u {(2n, k mod n) : n >= 1} with Z acting by
/// m.(2n, k) = (2n, k + m mod n); the top is (1, 0) and the height of (k, x)
/// is k - 1. Pair literal: [k, x, m].
ComputableSemilattice example_s4();
/// E = Z with meet = min, Z acting by translation. Pair literal: [m, n].
ComputableSemilattice zchain_semilattice();
/// Free semilattice on {1..k} (union) with the symmetric group acting.
/// Pair literal: [[subset], [permutation]].
ComputableSemilattice free_semilattice_action(int k);
/// Finite action viewed through the callback interface; tokens are indices.
ComputableSemilattice from_action(const Action& act);

/// Looks up "example-s4", "zchain" or "fs-<k>".
ComputableSemilattice builtin(const std::string& name);

/// Orbit of `seeds` under <gens>, breadth-first, applying each generator and
/// its inverse. Throws BudgetExceeded (inconclusive) past `budget` tokens and
/// ClosureViolation when a height function is not preserved.
std::vector<Token> orbit(const ComputableSemilattice& cs, std::span<const GroupElem> gens,
                         std::span<const Token> seeds, std::size_t budget);

/// Finite instance obtained by restricting a locally finite action.
struct FiniteInstance {
  std::shared_ptr<const Action> action;
  std::shared_ptr<const Group> ambient;
  std::vector<Token> tokens;              // semilattice index -> token
  std::vector<GroupElem> embedding;       // restricted generator -> ambient element
  std::vector<SdpElem> x1;
  std::vector<SdpElem> x2;
  std::size_t orbit_size = 0;
  bool height_checked = false;

  /// Maps an element of the restricted group back into the ambient group.
  GroupElem to_ambient(const GroupElem& g) const;
};

/// Restricts to the subsemilattice generated by H.F where H is generated by
/// the group parts of X1 u X2 (and inverses) and F is the set of their
/// semilattice parts. The acting group is presented on a basis of H within
/// the ambient backend (the generators themselves for finite-perm).
FiniteInstance restrict_locally_finite(const ComputableSemilattice& cs,
                                       std::span<const TokenPair> x1,
                                       std::span<const TokenPair> x2, std::size_t budget);

}  // namespace howson
