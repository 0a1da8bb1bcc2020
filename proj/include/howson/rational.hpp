#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "howson/action.hpp"
#include "howson/subgroup.hpp"

namespace howson {

using BigInt = boost::multiprecision::cpp_int;

/// A word over an automaton alphabet, as 0-based letter indices.
using LetterWord = std::vector<int>;

/// Reverses a word and replaces each letter with its inverse letter.
LetterWord inverse_letters(const LetterWord& w, const std::vector<int>& inverse_of);

struct AutState {
  Element e = 0;
  SAut pi;
};

/// Reachable part of the deterministic automaton over {q0} u (E x Aut(E)).
/// State 0 is q0; the other states are pairs (f, pi). Immutable once built.
class SdpAutomaton {
 public:
  static constexpr int kInitial = 0;

  const Action& action() const { return *action_; }
  const std::shared_ptr<const Action>& action_ptr() const { return action_; }

  /// X followed by the inverses not already present.
  const std::vector<SdpElem>& alphabet() const { return alphabet_; }
  std::size_t generator_count() const { return generator_count_; }
  int inverse_letter(int letter) const { return inverse_of_[static_cast<std::size_t>(letter)]; }
  const std::vector<int>& inverse_table() const { return inverse_of_; }

  /// Number of states including q0.
  std::size_t state_count() const { return states_.size() + 1; }
  /// Pair of a non-initial state.
  const AutState& state(int q) const { return states_.at(static_cast<std::size_t>(q - 1)); }
  std::optional<int> find_state(Element e, const SAut& pi) const;
  int step(int q, int letter) const {
    return transitions_[static_cast<std::size_t>(q)][static_cast<std::size_t>(letter)];
  }

  /// First word (in breadth-first order) reaching q, and the group part of
  /// its product.
  const LetterWord& witness_word(int q) const { return witness_words_.at(static_cast<std::size_t>(q)); }
  const GroupElem& witness_group(int q) const { return witness_groups_.at(static_cast<std::size_t>(q)); }

  /// Index of pi among the distinct automorphisms met during the search, in
  /// discovery order; used for compact labels.
  std::size_t aut_index(const SAut& pi) const { return aut_ids_.at(pi); }
  std::string state_label(int q) const;

  /// Product of a nonempty word. Throws EmptyWord.
  SdpElem evaluate(const LetterWord& w) const;

  nlohmann::json to_json() const;

 private:
  friend SdpAutomaton build_automaton(std::shared_ptr<const Action>, const std::vector<SdpElem>&,
                                      std::optional<std::size_t>);

  std::shared_ptr<const Action> action_;
  std::vector<SdpElem> alphabet_;
  std::size_t generator_count_ = 0;
  std::vector<int> inverse_of_;
  std::vector<AutState> states_;
  std::map<std::pair<Element, SAut>, int> index_;
  std::vector<std::vector<int>> transitions_;
  std::vector<LetterWord> witness_words_;
  std::vector<GroupElem> witness_groups_;
  std::map<SAut, std::size_t> aut_ids_;
};

/// Builds the reachable automaton for <X>. X is symmetrized first and
/// duplicates are dropped. Throws CapExceeded past `state_cap` states
/// (default from Caps), ParseError for an empty X.
SdpAutomaton build_automaton(std::shared_ptr<const Action> act, const std::vector<SdpElem>& x,
                             std::optional<std::size_t> state_cap = std::nullopt);

/// End state of a nonempty word. Throws EmptyWord.
int run(const SdpAutomaton& aut, const LetterWord& w);

/// gamma(S(e)) where S(e) = {u in <X> : sigma(u) >= e, theta_gamma(u) = id}.
struct SofE {
  Element target = 0;
  bool empty = true;
  std::vector<int> accepting;             // accepting states, ascending
  std::vector<GroupElem> generators;      // distinct non-identity generators
  std::vector<LetterWord> words;          // words over the alphabet realizing them
  std::vector<LetterWord> inverse_words;
  std::optional<Subgroup> subgroup;

  /// Word over the alphabet whose product is (f, h) with f >= target and
  /// theta_h = id, for h in the subgroup. Empty word for h = 1.
  std::optional<LetterWord> realize(const GroupElem& h) const;
};

/// Exact generating set read off the automaton: the states with f >= e form
/// a subgraph containing every successful path, and its spanning-tree
/// transversal yields Schreier generators plus the accepting-state witnesses.
SofE s_of_e_subgroup(const SdpAutomaton& aut, Element e);

/// Independent route: collects the group parts of all successful paths of
/// length at most `max_length` (default 2m - 1, m the state count), pruning
/// repeated (state, group element) pairs per length. Throws CapExceeded past
/// the path cap.
std::optional<Subgroup> s_of_e_by_paths(const SdpAutomaton& aut, Element e,
                                        std::optional<std::size_t> max_length = std::nullopt,
                                        std::optional<std::size_t> path_cap = std::nullopt);

/// Graphviz rendering; accepting states for `accepting_for` are doubled.
std::string to_dot(const SdpAutomaton& aut, std::optional<Element> accepting_for = std::nullopt);

/// Sum over i = 0 .. 2|E|! - 1 of (2|X|)^i.
BigInt rank_bound(std::size_t size_e, std::size_t size_x);

BigInt factorial(std::size_t n);

}  // namespace howson
