#include "howson/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>


#include "howson/error.hpp"
#include "howson/semilattice.hpp"

namespace howson {

bool ClosureSet::contains(const SdpElem& u) const {
  return std::binary_search(elements.begin(), elements.end(), u);
}

namespace {

std::vector<SdpElem> symmetric_seed(const Action& act, const std::vector<SdpElem>& x) {
  std::set<SdpElem> seed;
  for (const auto& u : x) {
    act.check(u);
    seed.insert(u);
    seed.insert(act.inv(u));
  }
  return {seed.begin(), seed.end()};
}

// Appends u*v for u in `layer` and v in the symmetric seed.
void layer_products(const Action& act, const std::vector<SdpElem>& layer,
                    const std::vector<SdpElem>& known, std::size_t begin, std::size_t end,
                    std::vector<SdpElem>& out) {
  for (std::size_t i = begin; i < end; ++i) {
    for (const auto& v : known) {
      out.push_back(act.mul(layer[i], v));
    }
  }
}

template <typename Products>
ClosureSet run_rounds(const Action& act, const std::vector<SdpElem>& x, std::size_t cap,
                      Products products) {
  ClosureSet out;
  out.generators = x;
  std::vector<SdpElem> seed = symmetric_seed(act, x);
  std::set<SdpElem> known(seed.begin(), seed.end());
  if (known.size() > cap) throw CapExceeded("oracle closure", cap);
  std::vector<SdpElem> layer = seed;
  while (!layer.empty()) {
    ++out.depth;
    std::vector<SdpElem> found = products(layer, seed);
    std::vector<SdpElem> next;
    for (auto& u : found) {
      if (known.insert(u).second) {
        next.push_back(std::move(u));
        if (known.size() > cap) throw CapExceeded("oracle closure", cap);
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  out.elements.assign(known.begin(), known.end());
  return out;
}

}  // namespace

ClosureSet closure_serial(const Action& act, const std::vector<SdpElem>& x,
                          std::optional<std::size_t> cap) {
  return run_rounds(act, x, cap.value_or(Caps::current().oracle_closure),
                    [&](const std::vector<SdpElem>& layer, const std::vector<SdpElem>& seed) {
                      std::vector<SdpElem> out;
                      layer_products(act, layer, seed, 0, layer.size(), out);
                      return out;
                    });
}

ClosureSet closure_parallel(const Action& act, const std::vector<SdpElem>& x,
                            std::optional<std::size_t> cap) {
  return run_rounds(
      act, x, cap.value_or(Caps::current().oracle_closure),
      [&](const std::vector<SdpElem>& layer, const std::vector<SdpElem>& seed) {
        const auto n = static_cast<long long>(layer.size());
        std::vector<std::vector<SdpElem>> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < n; ++i) {
          auto idx = static_cast<std::size_t>(i);
          std::set<SdpElem> local;
          std::vector<SdpElem> buf;
          layer_products(act, layer, seed, idx, idx + 1, buf);
          local.insert(buf.begin(), buf.end());
          parts[idx].assign(local.begin(), local.end());
        }
        std::vector<SdpElem> out;
        for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        return out;
      });
}

ClosureSet closure(const Action& act, const std::vector<SdpElem>& x,
                   std::optional<std::size_t> cap) {
  return closure_parallel(act, x, cap);
}

nlohmann::json IntersectionReport::to_json(const Action& act) const {
  auto list = [&](const std::vector<SdpElem>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& u : v) {
      a.push_back({{"e", act.semilattice().label(u.e)}, {"g", act.group().to_json(u.g)}});
    }
    return a;
  };
  return {{"lhs_size", lhs_size},
          {"rhs_size", rhs_size},
          {"equal", equal},
          {"missing", list(missing)},
          {"extra", list(extra)}};
}

IntersectionReport check_intersection(const Action& act, const std::vector<SdpElem>& x1,
                                      const std::vector<SdpElem>& x2,
                                      const std::vector<SdpElem>& gens,
                                      std::optional<std::size_t> cap) {
  ClosureSet c1 = closure(act, x1, cap);
  ClosureSet c2 = closure(act, x2, cap);
  std::vector<SdpElem> rhs;
  std::set_intersection(c1.elements.begin(), c1.elements.end(), c2.elements.begin(),
                        c2.elements.end(), std::back_inserter(rhs));
  std::vector<SdpElem> lhs;
  if (!gens.empty()) lhs = closure(act, gens, cap).elements;
  IntersectionReport r;
  r.lhs_size = lhs.size();
  r.rhs_size = rhs.size();
  std::set_difference(rhs.begin(), rhs.end(), lhs.begin(), lhs.end(),
                      std::back_inserter(r.missing));
  std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                      std::back_inserter(r.extra));
  r.equal = r.missing.empty() && r.extra.empty();
  return r;
}

namespace {

std::vector<int> cycle_perm(int degree, std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<int> p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  for (const auto& c : cycles) {
    std::vector<int> pts(c);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      p[static_cast<std::size_t>(pts[i])] = pts[(i + 1) % pts.size()];
    }
  }
  return p;
}

struct SmallGroup {
  int order;
  int degree;
  std::vector<std::vector<int>> gens;
};

const std::vector<SmallGroup>& small_group_table() {
  static const std::vector<SmallGroup> table = {
      {1, 1, {{0}}},
      {2, 2, {cycle_perm(2, {{0, 1}})}},
      {3, 3, {cycle_perm(3, {{0, 1, 2}})}},
      {4, 4, {cycle_perm(4, {{0, 1, 2, 3}})}},
      {4, 4, {cycle_perm(4, {{0, 1}}), cycle_perm(4, {{2, 3}})}},
      {5, 5, {cycle_perm(5, {{0, 1, 2, 3, 4}})}},
      {6, 3, {cycle_perm(3, {{0, 1}}), cycle_perm(3, {{0, 1, 2}})}},
      {6, 5, {cycle_perm(5, {{0, 1}, {2, 3, 4}})}},
      {8, 4, {cycle_perm(4, {{0, 1, 2, 3}}), cycle_perm(4, {{0, 2}})}},
      {8, 6, {cycle_perm(6, {{0, 1, 2, 3}}), cycle_perm(6, {{4, 5}})}},
      {12, 4, {cycle_perm(4, {{0, 1, 2}}), cycle_perm(4, {{0, 1}, {2, 3}})}},
      {12, 6, {cycle_perm(6, {{0, 1, 2, 3, 4, 5}}), cycle_perm(6, {{0, 5}, {1, 4}, {2, 3}})}},
  };
  return table;
}

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("g" + std::to_string(i + 1));
  return out;
}

unsigned swap_bits(unsigned m, unsigned i, unsigned j) {
  const unsigned bi = (m >> i) & 1U;
  const unsigned bj = (m >> j) & 1U;
  if (bi == bj) return m;
  return m ^ ((1U << i) | (1U << j));
}

// Closes a family of 4-bit masks under intersection and, when `sym` holds,
// under exchanging bits i and j, which makes that exchange an automorphism.
std::set<unsigned> close_family(std::set<unsigned> family, bool sym, unsigned i, unsigned j) {
  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<unsigned> items(family.begin(), family.end());
    for (unsigned a : items) {
      if (sym) changed |= family.insert(swap_bits(a, i, j)).second;
      for (unsigned b : items) changed |= family.insert(a & b).second;
    }
  }
  return family;
}

Semilattice random_semilattice(std::mt19937_64& rng, int max_elements) {
  std::uniform_int_distribution<int> size_dist(std::min(2, max_elements), max_elements);
  std::uniform_int_distribution<unsigned> mask_dist(0, 15);
  std::uniform_int_distribution<unsigned> bit_dist(0, 3);
  const int target = size_dist(rng);
  const bool sym = std::bernoulli_distribution(0.6)(rng);
  const unsigned bi = bit_dist(rng);
  const unsigned bj = (bi + 1 + bit_dist(rng) % 3) % 4;
  std::set<unsigned> family;
  for (int tries = 0; tries < 6 * target && static_cast<int>(family.size()) < target; ++tries) {
    std::set<unsigned> grown = family;
    grown.insert(mask_dist(rng));
    grown = close_family(std::move(grown), sym, bi, bj);
    if (static_cast<int>(grown.size()) <= target) family = std::move(grown);
  }
  if (family.empty()) family.insert(0);
  std::vector<unsigned> masks(family.begin(), family.end());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < masks.size(); ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::vector<Element>> meet(masks.size(), std::vector<Element>(masks.size()));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = 0; j < masks.size(); ++j) {
      auto it = std::find(masks.begin(), masks.end(), masks[i] & masks[j]);
      meet[i][j] = static_cast<Element>(it - masks.begin());
    }
  }
  return Semilattice(std::move(labels), std::move(meet));
}

}  // namespace

std::vector<std::shared_ptr<const Group>> small_groups(int max_order) {
  std::vector<std::shared_ptr<const Group>> out;
  for (const auto& sg : small_group_table()) {
    if (sg.order > max_order) continue;
    out.push_back(std::make_shared<const Group>(
        Group::finite_perm(sg.degree, names(sg.gens.size()), sg.gens)));
  }
  return out;
}

RandomInstance random_instance(std::uint64_t seed, const RandomSpec& spec) {
  std::mt19937_64 rng(seed);
  RandomInstance inst;
  inst.seed = seed;
  auto semilattice = std::make_shared<const Semilattice>(random_semilattice(rng, spec.max_elements));
  auto groups = small_groups(spec.max_group_order);
  auto group = groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)];
  std::vector<SAut> auts = automorphisms(*semilattice);

  // Prefer a nontrivial homomorphism; fall back to any valid one.
  std::optional<Action> act;
  std::optional<Action> trivial;
  std::uniform_int_distribution<std::size_t> aut_dist(0, auts.size() - 1);
  for (int attempt = 0; attempt < 32 && !act; ++attempt) {
    std::vector<SAut> images;
    bool moves = false;
    for (std::size_t i = 0; i < group->generator_count(); ++i) {
      images.push_back(auts[aut_dist(rng)]);
      moves = moves || !images.back().is_identity();
    }
    try {
      Action candidate = Action::build(semilattice, group, images);
      if (moves) act = std::move(candidate);
      else if (!trivial) trivial = std::move(candidate);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotHomomorphism) throw;
    }
  }
  if (!act) act = std::move(trivial);
  if (!act) {
    act = Action::build(semilattice, group,
                        std::vector<SAut>(group->generator_count(), SAut::identity(semilattice->size())));
  }
  inst.action = std::make_shared<const Action>(std::move(*act));

  std::vector<GroupElem> elements = inst.action->group_elements();
  std::uniform_int_distribution<std::size_t> g_dist(0, elements.size() - 1);
  std::uniform_int_distribution<int> e_dist(0, static_cast<int>(semilattice->size()) - 1);
  std::uniform_int_distribution<int> count_dist(1, spec.max_generators);
  auto draw = [&] {
    std::vector<SdpElem> x;
    const int count = count_dist(rng);
    for (int i = 0; i < count; ++i) x.push_back({e_dist(rng), elements[g_dist(rng)]});
    return x;
  };
  inst.x1 = draw();
  inst.x2 = draw();
  return inst;
}

}  // namespace howson
