#include "howson/rational.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "howson/error.hpp"

namespace howson {

LetterWord inverse_letters(const LetterWord& w, const std::vector<int>& inverse_of) {
  LetterWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(inverse_of[static_cast<std::size_t>(*it)]);
  }
  return out;
}

std::optional<int> SdpAutomaton::find_state(Element e, const SAut& pi) const {
  auto it = index_.find({e, pi});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string SdpAutomaton::state_label(int q) const {
  if (q == kInitial) return "q0";
  const AutState& s = state(q);
  return "(" + action_->semilattice().label(s.e) + ", " + std::to_string(aut_index(s.pi)) + ")";
}

SdpElem SdpAutomaton::evaluate(const LetterWord& w) const {
  if (w.empty()) throw Error(ErrorKind::EmptyWord, "empty words have no product");
  std::vector<SdpElem> factors;
  factors.reserve(w.size());
  for (int l : w) {
    if (l < 0 || static_cast<std::size_t>(l) >= alphabet_.size()) {
      throw Error(ErrorKind::ParseError, "letter " + std::to_string(l) + " out of range");
    }
    factors.push_back(alphabet_[static_cast<std::size_t>(l)]);
  }
  return action_->product(factors);
}

nlohmann::json SdpAutomaton::to_json() const {
  const Semilattice& s = action_->semilattice();
  const Group& g = action_->group();
  nlohmann::json j;
  j["alphabet"] = nlohmann::json::array();
  for (const auto& x : alphabet_) {
    j["alphabet"].push_back({{"e", s.label(x.e)}, {"g", g.to_json(x.g)}});
  }
  std::vector<nlohmann::json> auts(aut_ids_.size());
  for (const auto& [pi, id] : aut_ids_) auts[id] = pi.images();
  j["automorphisms"] = auts;
  j["states"] = nlohmann::json::array();
  for (std::size_t q = 0; q < state_count(); ++q) {
    nlohmann::json st;
    st["id"] = q;
    st["label"] = state_label(static_cast<int>(q));
    st["next"] = transitions_[q];
    if (q != kInitial) {
      st["witness"] = witness_words_[q];
      st["witness_group"] = g.to_json(witness_groups_[q]);
    }
    j["states"].push_back(st);
  }
  j["state_count"] = state_count();
  return j;
}

SdpAutomaton build_automaton(std::shared_ptr<const Action> act, const std::vector<SdpElem>& x,
                             std::optional<std::size_t> state_cap) {
  if (x.empty()) throw Error(ErrorKind::ParseError, "generating set must be nonempty");
  const std::size_t cap = state_cap.value_or(Caps::current().automaton_states);
  SdpAutomaton aut;
  aut.action_ = act;
  for (const auto& u : x) {
    act->check(u);
    if (std::find(aut.alphabet_.begin(), aut.alphabet_.end(), u) == aut.alphabet_.end()) {
      aut.alphabet_.push_back(u);
    }
  }
  aut.generator_count_ = aut.alphabet_.size();
  for (std::size_t i = 0; i < aut.generator_count_; ++i) {
    SdpElem v = act->inv(aut.alphabet_[i]);
    if (std::find(aut.alphabet_.begin(), aut.alphabet_.end(), v) == aut.alphabet_.end()) {
      aut.alphabet_.push_back(v);
    }
  }
  const std::size_t letters = aut.alphabet_.size();
  aut.inverse_of_.resize(letters);
  std::vector<SAut> letter_theta;
  for (std::size_t i = 0; i < letters; ++i) {
    SdpElem v = act->inv(aut.alphabet_[i]);
    auto it = std::find(aut.alphabet_.begin(), aut.alphabet_.end(), v);
    aut.inverse_of_[i] = static_cast<int>(it - aut.alphabet_.begin());
    letter_theta.push_back(act->theta(aut.alphabet_[i].g));
  }

  const Semilattice& s = act->semilattice();
  const Group& grp = act->group();
  aut.transitions_.emplace_back(letters, -1);
  aut.witness_words_.emplace_back();
  aut.witness_groups_.push_back(grp.identity());

  auto visit = [&](Element f, SAut pi, const LetterWord& word, const GroupElem& g) {
    auto key = std::make_pair(f, pi);
    auto found = aut.index_.find(key);
    if (found != aut.index_.end()) return found->second;
    if (aut.states_.size() + 1 >= cap) throw CapExceeded("automaton states", cap);
    int id = static_cast<int>(aut.states_.size() + 1);
    aut.aut_ids_.emplace(pi, aut.aut_ids_.size());
    aut.states_.push_back({f, pi});
    aut.index_.emplace(std::move(key), id);
    aut.transitions_.emplace_back(letters, -1);
    aut.witness_words_.push_back(word);
    aut.witness_groups_.push_back(g);
    return id;
  };

  for (std::size_t l = 0; l < letters; ++l) {
    const SdpElem& a = aut.alphabet_[l];
    aut.transitions_[0][l] = visit(a.e, letter_theta[l], LetterWord{static_cast<int>(l)}, a.g);
  }
  for (std::size_t q = 1; q < aut.transitions_.size(); ++q) {
    for (std::size_t l = 0; l < letters; ++l) {
      const AutState cur = aut.states_[q - 1];
      const SdpElem& a = aut.alphabet_[l];
      Element f = s.meet(cur.e, cur.pi(a.e));
      LetterWord word = aut.witness_words_[q];
      word.push_back(static_cast<int>(l));
      GroupElem g = grp.compose(aut.witness_groups_[q], a.g);
      aut.transitions_[q][l] = visit(f, cur.pi * letter_theta[l], word, g);
    }
  }
  return aut;
}

int run(const SdpAutomaton& aut, const LetterWord& w) {
  if (w.empty()) throw Error(ErrorKind::EmptyWord, "the automaton admits no empty paths");
  int q = SdpAutomaton::kInitial;
  for (int l : w) {
    if (l < 0 || static_cast<std::size_t>(l) >= aut.alphabet().size()) {
      throw Error(ErrorKind::ParseError, "letter " + std::to_string(l) + " out of range");
    }
    q = aut.step(q, l);
  }
  return q;
}

std::optional<LetterWord> SofE::realize(const GroupElem& h) const {
  if (!subgroup) return std::nullopt;
  auto over_gens = subgroup->express(h);
  if (!over_gens) return std::nullopt;
  LetterWord out;
  for (int letter : *over_gens) {
    const auto j = static_cast<std::size_t>(std::abs(letter) - 1);
    if (letter > 0) {
      out.insert(out.end(), words[j].begin(), words[j].end());
    } else {
      out.insert(out.end(), inverse_words[j].begin(), inverse_words[j].end());
    }
  }
  return out;
}

SofE s_of_e_subgroup(const SdpAutomaton& aut, Element e) {
  const Semilattice& s = aut.action().semilattice();
  const Group& grp = aut.action().group();
  if (e < 0 || static_cast<std::size_t>(e) >= s.size()) {
    throw Error(ErrorKind::ParseError, "element index out of range");
  }
  SofE out;
  out.target = e;
  const std::size_t n = aut.state_count();
  std::vector<bool> inside(n, false);
  bool any = false;
  for (std::size_t q = 1; q < n; ++q) {
    const AutState& st = aut.state(static_cast<int>(q));
    if (s.leq(e, st.e)) {
      inside[q] = true;
      any = true;
      if (st.pi.is_identity()) out.accepting.push_back(static_cast<int>(q));
    }
  }
  if (!any) return out;
  out.empty = false;

  std::set<GroupElem> seen;
  auto offer = [&](const GroupElem& g, LetterWord word) {
    if (grp.is_identity(g) || !seen.insert(g).second) return;
    out.generators.push_back(g);
    out.words.push_back(std::move(word));
  };
  const auto& inv = aut.inverse_table();
  for (int q : out.accepting) offer(aut.witness_group(q), aut.witness_word(q));
  for (std::size_t q = 0; q < n; ++q) {
    if (q != 0 && !inside[q]) continue;
    for (std::size_t l = 0; l < aut.alphabet().size(); ++l) {
      int next = aut.step(static_cast<int>(q), static_cast<int>(l));
      if (!inside[static_cast<std::size_t>(next)]) continue;
      const GroupElem& tq = aut.witness_group(static_cast<int>(q));
      GroupElem g = grp.compose(grp.compose(tq, aut.alphabet()[l].g),
                                grp.invert(aut.witness_group(next)));
      LetterWord word = aut.witness_word(static_cast<int>(q));
      word.push_back(static_cast<int>(l));
      LetterWord back = inverse_letters(aut.witness_word(next), inv);
      word.insert(word.end(), back.begin(), back.end());
      offer(g, std::move(word));
    }
  }
  for (const auto& w : out.words) out.inverse_words.push_back(inverse_letters(w, inv));
  out.subgroup = Subgroup::generate(aut.action().group_ptr(), out.generators);
  return out;
}

std::optional<Subgroup> s_of_e_by_paths(const SdpAutomaton& aut, Element e,
                                        std::optional<std::size_t> max_length,
                                        std::optional<std::size_t> path_cap) {
  const Semilattice& s = aut.action().semilattice();
  const Group& grp = aut.action().group();
  const std::size_t limit = max_length.value_or(2 * aut.state_count() - 1);
  const std::size_t cap = path_cap.value_or(Caps::current().path_enumeration);
  std::set<GroupElem> collected;
  bool accepted = false;
  std::set<std::pair<int, GroupElem>> layer{{SdpAutomaton::kInitial, grp.identity()}};
  std::size_t work = 0;
  for (std::size_t len = 1; len <= limit && !layer.empty(); ++len) {
    std::set<std::pair<int, GroupElem>> next;
    for (const auto& [q, g] : layer) {
      for (std::size_t l = 0; l < aut.alphabet().size(); ++l) {
        int r = aut.step(q, static_cast<int>(l));
        const AutState& st = aut.state(r);
        // sigma only decreases along a path, so leaving {f >= e} is final.
        if (!s.leq(e, st.e)) continue;
        if (++work > cap) throw CapExceeded("path enumeration", cap);
        GroupElem h = grp.compose(g, aut.alphabet()[l].g);
        if (st.pi.is_identity()) {
          accepted = true;
          collected.insert(h);
        }
        next.emplace(r, std::move(h));
      }
    }
    layer = std::move(next);
  }
  if (!accepted) return std::nullopt;
  return Subgroup::generate(aut.action().group_ptr(),
                            std::vector<GroupElem>(collected.begin(), collected.end()));
}

std::string to_dot(const SdpAutomaton& aut, std::optional<Element> accepting_for) {
  const Semilattice& s = aut.action().semilattice();
  const Group& grp = aut.action().group();
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  q0 [shape=box, style=bold, label=\"q0\"];\n";
  for (std::size_t q = 1; q < aut.state_count(); ++q) {
    const AutState& st = aut.state(static_cast<int>(q));
    bool accepting = accepting_for && st.pi.is_identity() && s.leq(*accepting_for, st.e);
    out << "  s" << q << " [shape=" << (accepting ? "doublecircle" : "circle") << ", label=\""
        << aut.state_label(static_cast<int>(q)) << "\"];\n";
  }
  for (std::size_t q = 0; q < aut.state_count(); ++q) {
    for (std::size_t l = 0; l < aut.alphabet().size(); ++l) {
      const SdpElem& a = aut.alphabet()[l];
      int r = aut.step(static_cast<int>(q), static_cast<int>(l));
      out << "  " << (q == 0 ? std::string("q0") : "s" + std::to_string(q)) << " -> s" << r
          << " [label=\"(" << s.label(a.e) << ", " << grp.format(a.g) << ")\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

BigInt factorial(std::size_t n) {
  BigInt out = 1;
  for (std::size_t i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt rank_bound(std::size_t size_e, std::size_t size_x) {
  if (size_e < 1 || size_x < 1) throw Error(ErrorKind::Usage, "rank_bound needs |E|, |X| >= 1");
  constexpr std::size_t kMaxE = 10;
  if (size_e > kMaxE) throw CapExceeded("rank_bound |E|", kMaxE);
  const auto terms = static_cast<unsigned>(2 * factorial(size_e));
  const BigInt base = 2 * BigInt(size_x);
  return (boost::multiprecision::pow(base, terms) - 1) / (base - 1);
}

}  // namespace howson
