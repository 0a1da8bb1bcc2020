#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "howson/group.hpp"
#include "howson/semilattice.hpp"

namespace howson {

/// Element (e, g) of the semidirect product.
struct SdpElem {
  Element e = 0;
  GroupElem g;

  friend auto operator<=>(const SdpElem&, const SdpElem&) = default;
  friend bool operator==(const SdpElem&, const SdpElem&) = default;
};

/// A homomorphism from a group into Aut(E), given by one image per group
/// generator and validated on construction. Holds the semilattice and the
/// group, so it also serves as the description of a semidirect product.
class Action {
 public:
  /// Throws NotAutomorphism when an image is not an automorphism and
  /// NotHomomorphism when the generator images do not extend to a
  /// homomorphism (non-commuting images for free-abelian groups; two
  /// factorizations of one permutation with different composites).
  static Action build(std::shared_ptr<const Semilattice> semilattice,
                      std::shared_ptr<const Group> group, std::vector<SAut> images);

  const Semilattice& semilattice() const { return *semilattice_; }
  const Group& group() const { return *group_; }
  const std::shared_ptr<const Semilattice>& semilattice_ptr() const { return semilattice_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const std::vector<SAut>& images() const { return images_; }

  SAut theta(const GroupElem& g) const;
  Element apply(const GroupElem& g, Element e) const { return theta(g)(e); }

  /// (e, g)(f, h) = (e ^ g.f, gh).
  SdpElem mul(const SdpElem& u, const SdpElem& v) const;
  /// (e, g)^-1 = (g^-1 . e, g^-1).
  SdpElem inv(const SdpElem& u) const;
  bool is_idempotent(const SdpElem& u) const { return mul(u, u) == u; }
  /// Left-to-right product of a nonempty sequence.
  SdpElem product(std::span<const SdpElem> factors) const;

  /// Throws KindMismatch/ParseError for an out of range element or bad group
  /// element.
  void check(const SdpElem& u) const;

  /// Finite-perm only: every group element, sorted.
  std::vector<GroupElem> group_elements() const;

 private:
  std::shared_ptr<const Semilattice> semilattice_;
  std::shared_ptr<const Group> group_;
  std::vector<SAut> images_;
  std::map<GroupElem, SAut> perm_table_;
};

/// Orbit of `seeds` under the subgroup generated by `gens`, breadth-first.
/// Throws BudgetExceeded once more than `budget` elements are found.
std::vector<Element> orbit(const Action& act, std::span<const GroupElem> gens,
                           std::span<const Element> seeds, std::size_t budget);

/// Checks (e, g)(e, h) = (e, gh) on the given group elements when e is fixed
/// by every generator image. Returns false if e is not fixed.
bool fixed_point_embeds(const Action& act, Element e, std::span<const GroupElem> elements);

}  // namespace howson
