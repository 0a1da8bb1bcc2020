#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "howson/group.hpp"

namespace howson {

/// Edge of a labelled graph over a free group. `letter` is the ambient
/// generator index; `label` is a word over the subgroup's own generating list
/// used to express closed paths at the base vertex.
struct CoreEdge {
  int src = 0;
  int dst = 0;
  int letter = 0;
  GenWord label;
};

/// Folded (Stallings) graph with base vertex 0. Vertices are numbered in
/// breadth-first order from the base, scanning letters as x1, x1-, x2, ...,
/// so two graphs for the same subgroup are identical.
class CoreGraph {
 public:
  /// Folds the bouquet of the given reduced words and trims hanging trees.
  /// Edge labels record, for each closed path, a word over `gens`.
  static CoreGraph from_generators(std::span<const GroupElem> gens, std::size_t rank);

  /// Pullback of two core graphs restricted to the component of the pair of
  /// base vertices, then trimmed. Labels are dropped.
  static CoreGraph intersect(const CoreGraph& a, const CoreGraph& b);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<CoreEdge>& edges() const { return edges_; }
  std::size_t ambient_rank() const { return rank_; }

  /// Target of the edge end at `v` reading the signed letter (+(g+1) along
  /// an edge, -(g+1) against it).
  std::optional<int> step(int v, int signed_letter) const;

  /// Reads `word` from the base. Returns the end vertex, if the path exists.
  std::optional<int> read(const GroupElem& word) const;
  bool accepts(const GroupElem& word) const;
  /// Label product along the closed path spelling `word`, if accepted.
  std::optional<GenWord> express(const GroupElem& word) const;

  /// Free basis read off a breadth-first spanning tree.
  std::vector<GroupElem> basis() const;
  std::size_t rank() const { return edges_.size() + 1 - vertex_count_; }

  bool is_folded() const;
  /// Every vertex other than the base has degree at least two.
  bool is_trim() const;

  std::string canonical() const;
  std::string to_dot(const std::vector<std::string>& names) const;

  /// Decides whether g1 H1 and g2 H2 meet, where the graphs represent H1 and
  /// H2. Returns the reduced spelling of a common element.
  static std::optional<GroupElem> coset_meet(const CoreGraph& h1, const GroupElem& g1,
                                             const CoreGraph& h2, const GroupElem& g2);

 private:
  std::size_t rank_ = 0;
  std::size_t vertex_count_ = 1;
  std::vector<CoreEdge> edges_;
  // adjacency_[v] maps signed letter -> edge index
  std::vector<std::vector<std::pair<int, int>>> adjacency_;

  void build_adjacency();
  int edge_at(int v, int signed_letter) const;

  friend struct CoreGraphBuilder;
};

}  // namespace howson
