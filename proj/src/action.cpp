#include "howson/action.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "howson/error.hpp"

namespace howson {

namespace {

std::string format_word(const Group& g, const GenWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += g.generator_names()[static_cast<std::size_t>(l < 0 ? -l : l) - 1];
    if (l < 0) out += '-';
  }
  return out;
}

}  // namespace

Action Action::build(std::shared_ptr<const Semilattice> semilattice,
                     std::shared_ptr<const Group> group, std::vector<SAut> images) {
  const Semilattice& s = *semilattice;
  const Group& g = *group;
  if (images.size() != g.generator_count()) {
    throw Error(ErrorKind::ParseError, "one image per group generator required");
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!s.is_automorphism(images[i])) {
      throw Error(ErrorKind::NotAutomorphism,
                  "image of generator '" + g.generator_names()[i] + "' is not an automorphism");
    }
  }
  Action act;
  act.semilattice_ = std::move(semilattice);
  act.group_ = std::move(group);
  act.images_ = std::move(images);

  switch (g.kind()) {
    case GroupKind::Free: break;
    case GroupKind::FreeAbelian:
      for (std::size_t i = 0; i < act.images_.size(); ++i) {
        for (std::size_t j = i + 1; j < act.images_.size(); ++j) {
          if (act.images_[i] * act.images_[j] != act.images_[j] * act.images_[i]) {
            throw Error(ErrorKind::NotHomomorphism,
                        "images of '" + g.generator_names()[i] + "' and '" +
                            g.generator_names()[j] + "' do not commute, but " +
                            g.generator_names()[i] + " " + g.generator_names()[j] + " = " +
                            g.generator_names()[j] + " " + g.generator_names()[i]);
          }
        }
      }
      break;
    case GroupKind::FinitePerm: {
      // Breadth-first over the Cayley graph; every edge x -> x s must satisfy
      // theta(x s) = theta(x) theta(s).
      std::map<GroupElem, GenWord> words;
      std::deque<GroupElem> queue{g.identity()};
      act.perm_table_.emplace(g.identity(), SAut::identity(s.size()));
      words.emplace(g.identity(), GenWord{});
      const std::size_t cap = Caps::current().perm_closure;
      while (!queue.empty()) {
        GroupElem x = queue.front();
        queue.pop_front();
        const SAut tx = act.perm_table_.at(x);
        for (std::size_t i = 0; i < g.generator_count(); ++i) {
          GroupElem y = g.compose(x, g.generator(i));
          SAut ty = tx * act.images_[i];
          GenWord wy = words.at(x);
          wy.push_back(static_cast<int>(i) + 1);
          auto it = act.perm_table_.find(y);
          if (it == act.perm_table_.end()) {
            if (act.perm_table_.size() >= cap) throw CapExceeded("finite group enumeration", cap);
            act.perm_table_.emplace(y, ty);
            words.emplace(y, wy);
            queue.push_back(y);
          } else if (it->second != ty) {
            throw Error(ErrorKind::NotHomomorphism,
                        "factorizations '" + format_word(g, words.at(y)) + "' and '" +
                            format_word(g, wy) + "' of " + g.format(y) +
                            " have different images");
          }
        }
      }
      break;
    }
  }
  return act;
}

SAut Action::theta(const GroupElem& g) const {
  group_->check(g);
  const std::size_t n = semilattice_->size();
  switch (group_->kind()) {
    case GroupKind::Free: {
      SAut result = SAut::identity(n);
      for (auto letter : g.data()) {
        const SAut& img = images_[static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1];
        result = result * (letter > 0 ? img : img.inverse());
      }
      return result;
    }
    case GroupKind::FreeAbelian: {
      SAut result = SAut::identity(n);
      for (std::size_t i = 0; i < images_.size(); ++i) {
        if (g.data()[i] != 0) result = result * images_[i].pow(g.data()[i]);
      }
      return result;
    }
    case GroupKind::FinitePerm: {
      auto it = perm_table_.find(g);
      if (it == perm_table_.end()) {
        throw Error(ErrorKind::KindMismatch,
                    "permutation " + group_->format(g) + " is not in the group generated by the generators");
      }
      return it->second;
    }
  }
  return SAut::identity(n);
}

SdpElem Action::mul(const SdpElem& u, const SdpElem& v) const {
  return {semilattice_->meet(u.e, apply(u.g, v.e)), group_->compose(u.g, v.g)};
}

SdpElem Action::inv(const SdpElem& u) const {
  GroupElem gi = group_->invert(u.g);
  return {apply(gi, u.e), std::move(gi)};
}

SdpElem Action::product(std::span<const SdpElem> factors) const {
  if (factors.empty()) throw Error(ErrorKind::EmptyWord, "empty product");
  SdpElem acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = mul(acc, factors[i]);
  return acc;
}

void Action::check(const SdpElem& u) const {
  if (u.e < 0 || static_cast<std::size_t>(u.e) >= semilattice_->size()) {
    throw Error(ErrorKind::ParseError, "semilattice index out of range");
  }
  group_->check(u.g);
  if (group_->kind() == GroupKind::FinitePerm && !perm_table_.contains(u.g)) {
    throw Error(ErrorKind::ParseError,
                "permutation " + group_->format(u.g) + " is not in the group generated by the generators");
  }
}

std::vector<GroupElem> Action::group_elements() const {
  if (group_->kind() != GroupKind::FinitePerm) {
    throw Error(ErrorKind::UnsupportedBackend, "group element listing needs a finite group");
  }
  std::vector<GroupElem> out;
  for (const auto& [g, t] : perm_table_) out.push_back(g);
  return out;
}

std::vector<Element> orbit(const Action& act, std::span<const GroupElem> gens,
                           std::span<const Element> seeds, std::size_t budget) {
  std::vector<SAut> moves;
  for (const auto& g : gens) {
    SAut t = act.theta(g);
    moves.push_back(t.inverse());
    moves.push_back(std::move(t));
  }
  std::vector<Element> out;
  std::set<Element> seen;
  for (Element e : seeds) {
    if (seen.insert(e).second) out.push_back(e);
  }
  if (out.size() > budget) throw BudgetExceeded(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& m : moves) {
      Element f = m(out[i]);
      if (!seen.insert(f).second) continue;
      out.push_back(f);
      if (out.size() > budget) throw BudgetExceeded(out.size());
    }
  }
  return out;
}

bool fixed_point_embeds(const Action& act, Element e, std::span<const GroupElem> elements) {
  for (const auto& img : act.images()) {
    if (img(e) != e) return false;
  }
  for (const auto& g : elements) {
    for (const auto& h : elements) {
      if (act.mul({e, g}, {e, h}) != SdpElem{e, act.group().compose(g, h)}) return false;
    }
  }
  return true;
}

}  // namespace howson
