#include "howson/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "howson/error.hpp"
#include "overflow.hpp"

namespace howson {

namespace {

void require_same_group(const Subgroup& a, const Subgroup& b) {
  if (a.group().kind() != b.group().kind()) {
    throw Error(ErrorKind::KindMismatch, "subgroups of different group kinds");
  }
}

// Breadth-first closure under right multiplication by the generators and
// their inverses.
struct PermClosure {
  std::vector<GroupElem> bfs;
  std::vector<std::size_t> parent;
  std::vector<int> letter;
};

PermClosure perm_closure(const Group& g, const std::vector<GroupElem>& gens) {
  const std::size_t cap = Caps::current().perm_closure;
  PermClosure c;
  std::unordered_map<GroupElem, std::size_t, GroupElemHash> index;
  c.bfs.push_back(g.identity());
  c.parent.push_back(0);
  c.letter.push_back(0);
  index.emplace(c.bfs[0], 0);
  std::vector<std::pair<int, GroupElem>> steps;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    steps.emplace_back(static_cast<int>(j) + 1, gens[j]);
    steps.emplace_back(-(static_cast<int>(j) + 1), g.invert(gens[j]));
  }
  for (std::size_t i = 0; i < c.bfs.size(); ++i) {
    for (const auto& [l, s] : steps) {
      GroupElem next = g.compose(c.bfs[i], s);
      if (index.contains(next)) continue;
      if (c.bfs.size() >= cap) throw CapExceeded("permutation subgroup closure", cap);
      index.emplace(next, c.bfs.size());
      c.bfs.push_back(std::move(next));
      c.parent.push_back(i);
      c.letter.push_back(l);
    }
  }
  return c;
}

}  // namespace

Subgroup Subgroup::generate(std::shared_ptr<const Group> group, std::vector<GroupElem> gens) {
  for (const auto& g : gens) group->check(g);
  Subgroup h;
  h.group_ = std::move(group);
  h.generators_ = std::move(gens);
  const Group& g = *h.group_;
  switch (g.kind()) {
    case GroupKind::FinitePerm: {
      PermClosure c = perm_closure(g, h.generators_);
      PermData data{std::move(c.bfs), std::move(c.parent), std::move(c.letter), {}, {}};
      data.sorted = data.bfs;
      std::sort(data.sorted.begin(), data.sorted.end());
      std::size_t covered = 1;
      for (const auto& gen : h.generators_) {
        std::vector<GroupElem> trial = data.greedy;
        trial.push_back(gen);
        std::size_t size = perm_closure(g, trial).bfs.size();
        if (size > covered) {
          data.greedy = std::move(trial);
          covered = size;
        }
      }
      h.data_ = std::move(data);
      break;
    }
    case GroupKind::Free:
      h.data_ = CoreGraph::from_generators(h.generators_, g.rank());
      break;
    case GroupKind::FreeAbelian: {
      IntMat rows;
      for (const auto& gen : h.generators_) rows.push_back(gen.data());
      h.data_ = LatticeData{hermite_rows(rows, g.rank())};
      break;
    }
  }
  return h;
}

std::optional<std::size_t> Subgroup::perm_index(const GroupElem& g) const {
  const auto& data = std::get<PermData>(data_);
  auto it = std::lower_bound(data.sorted.begin(), data.sorted.end(), g);
  if (it == data.sorted.end() || *it != g) return std::nullopt;
  auto pos = std::find(data.bfs.begin(), data.bfs.end(), g);
  return static_cast<std::size_t>(pos - data.bfs.begin());
}

bool Subgroup::contains(const GroupElem& g) const {
  group_->check(g);
  switch (group_->kind()) {
    case GroupKind::FinitePerm: {
      const auto& sorted = std::get<PermData>(data_).sorted;
      return std::binary_search(sorted.begin(), sorted.end(), g);
    }
    case GroupKind::Free: return std::get<CoreGraph>(data_).accepts(g);
    case GroupKind::FreeAbelian:
      return solve_in_lattice(std::get<LatticeData>(data_).hermite, g.data()).has_value();
  }
  return false;
}

std::optional<GenWord> Subgroup::express(const GroupElem& g) const {
  group_->check(g);
  switch (group_->kind()) {
    case GroupKind::FinitePerm: {
      auto idx = perm_index(g);
      if (!idx) return std::nullopt;
      const auto& data = std::get<PermData>(data_);
      GenWord w;
      for (std::size_t i = *idx; i != 0; i = data.parent[i]) w.push_back(data.letter[i]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    case GroupKind::Free: return std::get<CoreGraph>(data_).express(g);
    case GroupKind::FreeAbelian: {
      const auto& hermite = std::get<LatticeData>(data_).hermite;
      auto coeffs = solve_in_lattice(hermite, g.data());
      if (!coeffs) return std::nullopt;
      IntVec over_gens = row_times(*coeffs, hermite.transform, generators_.size());
      GenWord w;
      std::int64_t total = 0;
      for (std::size_t j = 0; j < over_gens.size(); ++j) {
        std::int64_t c = over_gens[j];
        total = checked_add(total, c < 0 ? -c : c);
        if (static_cast<std::size_t>(total) > Caps::current().path_enumeration) {
          throw CapExceeded("abelian factorization length", Caps::current().path_enumeration);
        }
        int letter = static_cast<int>(j) + 1;
        for (std::int64_t k = 0; k < (c < 0 ? -c : c); ++k) w.push_back(c < 0 ? -letter : letter);
      }
      return w;
    }
  }
  return std::nullopt;
}

std::vector<GroupElem> Subgroup::canonical_generators() const {
  switch (group_->kind()) {
    case GroupKind::FinitePerm: return std::get<PermData>(data_).greedy;
    case GroupKind::Free: return std::get<CoreGraph>(data_).basis();
    case GroupKind::FreeAbelian: {
      std::vector<GroupElem> out;
      for (const auto& row : std::get<LatticeData>(data_).hermite.basis) {
        out.emplace_back(GroupKind::FreeAbelian, row);
      }
      return out;
    }
  }
  return {};
}

std::size_t Subgroup::rank() const {
  switch (group_->kind()) {
    case GroupKind::FinitePerm: return std::get<PermData>(data_).greedy.size();
    case GroupKind::Free: return std::get<CoreGraph>(data_).rank();
    case GroupKind::FreeAbelian: return std::get<LatticeData>(data_).hermite.basis.size();
  }
  return 0;
}

bool Subgroup::is_trivial() const {
  switch (group_->kind()) {
    case GroupKind::FinitePerm: return std::get<PermData>(data_).sorted.size() == 1;
    case GroupKind::Free: return std::get<CoreGraph>(data_).edges().empty();
    case GroupKind::FreeAbelian: return std::get<LatticeData>(data_).hermite.basis.empty();
  }
  return true;
}

std::string Subgroup::canonical() const {
  switch (group_->kind()) {
    case GroupKind::FinitePerm: {
      std::string out = "P";
      for (const auto& e : std::get<PermData>(data_).sorted) out += group_->format(e);
      return out;
    }
    case GroupKind::Free: return std::get<CoreGraph>(data_).canonical();
    case GroupKind::FreeAbelian: {
      std::string out = "L";
      for (const auto& row : std::get<LatticeData>(data_).hermite.basis) {
        out += nlohmann::json(row).dump();
      }
      return out;
    }
  }
  return {};
}

nlohmann::json Subgroup::to_json() const {
  nlohmann::json j;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : canonical_generators()) gens.push_back(group_->to_json(g));
  j["generators"] = gens;
  if (rank_is_upper_bound()) {
    j["rank_upper_bound"] = rank();
    j["order"] = std::get<PermData>(data_).sorted.size();
  } else {
    j["rank"] = rank();
  }
  if (group_->kind() == GroupKind::Free) {
    const auto& core = std::get<CoreGraph>(data_);
    j["core_graph"] = {{"vertices", core.vertex_count()}, {"edges", core.edges().size()}};
  }
  return j;
}

const std::vector<GroupElem>& Subgroup::elements() const {
  if (group_->kind() != GroupKind::FinitePerm) {
    throw Error(ErrorKind::UnsupportedBackend, "element listing needs a finite group");
  }
  return std::get<PermData>(data_).sorted;
}

const CoreGraph& Subgroup::core_graph() const {
  if (group_->kind() != GroupKind::Free) {
    throw Error(ErrorKind::UnsupportedBackend, "core graphs exist only for free groups");
  }
  return std::get<CoreGraph>(data_);
}

Subgroup subgroup(std::shared_ptr<const Group> group, std::vector<GroupElem> gens) {
  return Subgroup::generate(std::move(group), std::move(gens));
}

bool member(const Subgroup& h, const GroupElem& g) { return h.contains(g); }

std::size_t rank(const Subgroup& h) { return h.rank(); }

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  return a.group().kind() == b.group().kind() && a.canonical() == b.canonical();
}

Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b) {
  require_same_group(a, b);
  const Group& g = a.group();
  switch (g.kind()) {
    case GroupKind::FinitePerm: {
      std::vector<GroupElem> common;
      std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                            b.elements().end(), std::back_inserter(common));
      // Greedy generating set, scanning the common elements in sorted order.
      std::vector<GroupElem> gens;
      Subgroup current = Subgroup::generate(a.group_ptr(), {});
      for (const auto& e : common) {
        if (current.contains(e)) continue;
        gens.push_back(e);
        current = Subgroup::generate(a.group_ptr(), gens);
      }
      return current;
    }
    case GroupKind::Free: {
      CoreGraph product = CoreGraph::intersect(a.core_graph(), b.core_graph());
      return Subgroup::generate(a.group_ptr(), product.basis());
    }
    case GroupKind::FreeAbelian: {
      auto ga = a.canonical_generators();
      auto gb = b.canonical_generators();
      IntMat stacked;
      for (const auto& v : ga) stacked.push_back(v.data());
      for (const auto& v : gb) stacked.push_back(v.data());
      RowHermite h = hermite_rows(stacked, g.rank());
      std::vector<GroupElem> gens;
      IntMat basis_a;
      for (const auto& v : ga) basis_a.push_back(v.data());
      for (const auto& k : h.kernel) {
        IntVec coeff_a(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(ga.size()));
        gens.emplace_back(GroupKind::FreeAbelian, row_times(coeff_a, basis_a, g.rank()));
      }
      return Subgroup::generate(a.group_ptr(), std::move(gens));
    }
  }
  throw Error(ErrorKind::UnsupportedBackend, "unknown backend");
}

CosetMeet coset_intersect(const GroupElem& g1, const Subgroup& h1, const GroupElem& g2,
                          const Subgroup& h2) {
  require_same_group(h1, h2);
  const Group& g = h1.group();
  g.check(g1);
  g.check(g2);
  switch (g.kind()) {
    case GroupKind::FinitePerm: {
      bool first_smaller = h1.elements().size() <= h2.elements().size();
      const GroupElem& ga = first_smaller ? g1 : g2;
      const Subgroup& ha = first_smaller ? h1 : h2;
      const GroupElem& gb_inv = g.invert(first_smaller ? g2 : g1);
      const Subgroup& hb = first_smaller ? h2 : h1;
      for (const auto& e : ha.elements()) {
        GroupElem x = g.compose(ga, e);
        if (hb.contains(g.compose(gb_inv, x))) return {true, x};
      }
      return {false, std::nullopt};
    }
    case GroupKind::Free: {
      auto rep = CoreGraph::coset_meet(h1.core_graph(), g1, h2.core_graph(), g2);
      if (!rep) return {false, std::nullopt};
      return {true, *rep};
    }
    case GroupKind::FreeAbelian: {
      auto ba = h1.canonical_generators();
      auto bb = h2.canonical_generators();
      IntMat stacked;
      for (const auto& v : ba) stacked.push_back(v.data());
      for (const auto& v : bb) stacked.push_back(v.data());
      IntVec d(g.rank());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = checked_add(g2.data()[i], -g1.data()[i]);
      if (stacked.empty()) {
        if (g.is_identity(GroupElem(GroupKind::FreeAbelian, d))) return {true, g1};
        return {false, std::nullopt};
      }
      RowHermite h = hermite_rows(stacked, g.rank());
      auto c = solve_in_lattice(h, d);
      if (!c) return {false, std::nullopt};
      IntVec over_rows = row_times(*c, h.transform, stacked.size());
      IntMat basis_a;
      for (const auto& v : ba) basis_a.push_back(v.data());
      IntVec coeff_a(over_rows.begin(), over_rows.begin() + static_cast<std::ptrdiff_t>(ba.size()));
      GroupElem h1_part(GroupKind::FreeAbelian, row_times(coeff_a, basis_a, g.rank()));
      return {true, g.compose(g1, h1_part)};
    }
  }
  throw Error(ErrorKind::UnsupportedBackend, "unknown backend");
}

}  // namespace howson
