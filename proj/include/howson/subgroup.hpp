#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "howson/core_graph.hpp"
#include "howson/group.hpp"
#include "howson/int_lattice.hpp"

namespace howson {

/// Finitely generated subgroup with a backend specific canonical form:
/// the element set (finite-perm), the folded core graph (free) or the
/// Hermite basis (free-abelian). Immutable.
class Subgroup {
 public:
  /// An empty generator list yields the trivial subgroup.
  static Subgroup generate(std::shared_ptr<const Group> group, std::vector<GroupElem> gens);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const std::vector<GroupElem>& generators() const { return generators_; }

  bool contains(const GroupElem& g) const;
  /// A word over generators() evaluating to g, or nullopt if g is not a
  /// member.
  std::optional<GenWord> express(const GroupElem& g) const;

  /// Free: basis from the core graph. Free-abelian: Hermite rows.
  /// Finite-perm: greedily reduced subset of generators().
  std::vector<GroupElem> canonical_generators() const;
  std::size_t rank() const;
  /// True for finite-perm, where rank() is the size of a greedy generating set.
  bool rank_is_upper_bound() const { return group_->kind() == GroupKind::FinitePerm; }
  bool is_trivial() const;

  /// Serialization of the canonical form; equal strings mean equal subgroups.
  std::string canonical() const;
  nlohmann::json to_json() const;

  /// Finite-perm only: all elements in sorted order.
  const std::vector<GroupElem>& elements() const;
  /// Free only.
  const CoreGraph& core_graph() const;

 private:
  struct PermData {
    std::vector<GroupElem> bfs;             // breadth-first order from identity
    std::vector<std::size_t> parent;        // index into bfs
    std::vector<int> letter;                // bfs[i] = bfs[parent[i]] * gen^letter
    std::vector<GroupElem> sorted;
    std::vector<GroupElem> greedy;
  };
  struct LatticeData {
    RowHermite hermite;
  };

  std::shared_ptr<const Group> group_;
  std::vector<GroupElem> generators_;
  std::variant<PermData, CoreGraph, LatticeData> data_;

  std::optional<std::size_t> perm_index(const GroupElem& g) const;
};

Subgroup subgroup(std::shared_ptr<const Group> group, std::vector<GroupElem> gens);
bool member(const Subgroup& h, const GroupElem& g);
Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b);
std::size_t rank(const Subgroup& h);
bool same_subgroup(const Subgroup& a, const Subgroup& b);

struct CosetMeet {
  bool found = false;
  std::optional<GroupElem> rep;
};

/// Decides whether g1 H1 and g2 H2 intersect; on success returns one common
/// element. The full intersection is rep (H1 n H2).
CosetMeet coset_intersect(const GroupElem& g1, const Subgroup& h1, const GroupElem& g2,
                          const Subgroup& h2);

}  // namespace howson
