#include "howson/intersection.hpp"

#include <algorithm>

#include "howson/error.hpp"

namespace howson {

const ProfileEntry* Profile::find(Element e, const SAut& pi) const {
  for (const auto& p : pairs) {
    if (p.e == e && p.pi == pi) return &p;
  }
  return nullptr;
}

Profile profile(const SdpAutomaton& aut) {
  Profile out;
  for (std::size_t q = 1; q < aut.state_count(); ++q) {
    const int id = static_cast<int>(q);
    const AutState& st = aut.state(id);
    out.pairs.push_back({st.e, st.pi, id, aut.witness_group(id), aut.witness_word(id)});
  }
  return out;
}

SofE s_i_subgroup(const SdpAutomaton& aut, Element e, const SAut& pi) {
  SofE s = s_of_e_subgroup(aut, pi.inverse()(e));
  if (s.empty && aut.find_state(e, pi)) {
    throw Error(ErrorKind::InternalInvariantViolation, "S_i empty for a profile pair");
  }
  return s;
}

const SofE& SofECache::get(Element target) {
  auto it = cache_.find(target);
  if (it == cache_.end()) it = cache_.emplace(target, s_of_e_subgroup(*aut_, target)).first;
  return it->second;
}

Membership member(const SdpAutomaton& aut, SofECache& cache, const Profile& prof,
                  const SdpElem& u) {
  const Action& act = aut.action();
  act.check(u);
  const SAut pi = act.theta(u.g);
  const ProfileEntry* entry = prof.find(u.e, pi);
  if (!entry) return {};
  const SofE& s = cache.get(pi.inverse()(u.e));
  const Group& grp = act.group();
  auto y_word = s.realize(grp.compose(grp.invert(entry->witness), u.g));
  if (!y_word) return {};
  LetterWord cert = entry->word;
  cert.insert(cert.end(), y_word->begin(), y_word->end());
  return {true, std::move(cert)};
}

Membership member(const SdpAutomaton& aut, const SdpElem& u) {
  SofECache cache(aut);
  return member(aut, cache, profile(aut), u);
}

namespace {

LetterWord idempotent_prefix(const SdpAutomaton& aut, const ProfileEntry& entry) {
  LetterWord out = inverse_letters(entry.word, aut.inverse_table());
  out.insert(out.end(), entry.word.begin(), entry.word.end());
  return out;
}

LetterWord concat(LetterWord a, const LetterWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<GroupElem> symmetrize(const Group& grp, const Subgroup& h) {
  std::vector<GroupElem> out;
  for (const auto& g : h.canonical_generators()) {
    for (const auto& v : {g, grp.invert(g)}) {
      if (!grp.is_identity(v) && std::find(out.begin(), out.end(), v) == out.end()) {
        out.push_back(v);
      }
    }
  }
  if (out.empty()) out.push_back(grp.identity());
  return out;
}

}  // namespace

IntersectionResult intersect(std::shared_ptr<const Action> act, const std::vector<SdpElem>& x1,
                             const std::vector<SdpElem>& x2, IntersectOptions options) {
  IntersectionResult r;
  r.aut1 = std::make_shared<const SdpAutomaton>(build_automaton(act, x1));
  r.aut2 = std::make_shared<const SdpAutomaton>(build_automaton(act, x2));
  r.p1 = profile(*r.aut1);
  r.p2 = profile(*r.aut2);
  const Group& grp = act->group();

  std::vector<CertifiedGen> raw;
  for (const auto& e1 : r.p1.pairs) {
    const ProfileEntry* e2 = r.p2.find(e1.e, e1.pi);
    if (!e2) continue;
    PairData pd;
    pd.e = e1.e;
    pd.pi = e1.pi;
    pd.target = e1.pi.inverse()(e1.e);
    SofE s1 = s_i_subgroup(*r.aut1, e1.e, e1.pi);
    SofE s2 = s_i_subgroup(*r.aut2, e1.e, e1.pi);
    pd.h = intersect_subgroups(*s1.subgroup, *s2.subgroup);
    pd.y = symmetrize(grp, *pd.h);

    const LetterWord pre1 = idempotent_prefix(*r.aut1, e1);
    const LetterWord pre2 = idempotent_prefix(*r.aut2, *e2);
    for (const auto& y : pd.y) {
      auto w1 = s1.realize(y);
      auto w2 = s2.realize(y);
      if (!w1 || !w2) throw Error(ErrorKind::InternalInvariantViolation, "H generator not realized");
      raw.push_back({{pd.target, y}, concat(pre1, *w1), concat(pre2, *w2)});
    }

    CosetMeet meet = coset_intersect(e1.witness, *s1.subgroup, e2->witness, *s2.subgroup);
    if (meet.found) {
      pd.in_p = true;
      pd.w = SdpElem{e1.e, *meet.rep};
      auto w1 = s1.realize(grp.compose(grp.invert(e1.witness), *meet.rep));
      auto w2 = s2.realize(grp.compose(grp.invert(e2->witness), *meet.rep));
      if (!w1 || !w2) throw Error(ErrorKind::InternalInvariantViolation, "coset rep not realized");
      raw.push_back({*pd.w, concat(e1.word, *w1), concat(e2->word, *w2)});
    }
    r.q.push_back(std::move(pd));
  }

  std::stable_sort(raw.begin(), raw.end(),
                   [](const CertifiedGen& a, const CertifiedGen& b) { return a.elem < b.elem; });
  for (auto& c : raw) {
    if (r.gens.empty() || r.gens.back().elem != c.elem) r.gens.push_back(std::move(c));
  }
  r.raw_count = r.gens.size();

  if (options.prune && r.gens.size() > 1) {
    r.pruned = true;
    for (std::size_t i = 0; i < r.gens.size() && r.gens.size() > 1;) {
      std::vector<SdpElem> rest;
      for (std::size_t j = 0; j < r.gens.size(); ++j) {
        if (j != i) rest.push_back(r.gens[j].elem);
      }
      if (member(build_automaton(act, rest), r.gens[i].elem).member) {
        r.gens.erase(r.gens.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
  }
  return r;
}

std::vector<SdpElem> IntersectionResult::elements() const {
  std::vector<SdpElem> out;
  for (const auto& g : gens) out.push_back(g.elem);
  return out;
}

bool certificates_valid(const IntersectionResult& r) {
  for (const auto& g : r.gens) {
    if (r.aut1->evaluate(g.cert1) != g.elem) return false;
    if (r.aut2->evaluate(g.cert2) != g.elem) return false;
  }
  return true;
}

namespace {

nlohmann::json pair_json(const Semilattice& s, Element e, const SAut& pi) {
  return {{"e", s.label(e)}, {"pi", pi.images()}};
}

nlohmann::json profile_json(const Action& act, const Profile& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& entry : p.pairs) {
    auto j = pair_json(act.semilattice(), entry.e, entry.pi);
    j["witness"] = act.group().to_json(entry.witness);
    out.push_back(j);
  }
  return out;
}

}  // namespace

nlohmann::json IntersectionResult::to_json() const {
  const Action& act = aut1->action();
  const Semilattice& s = act.semilattice();
  const Group& grp = act.group();
  nlohmann::json j;
  j["P1"] = profile_json(act, p1);
  j["P2"] = profile_json(act, p2);
  j["Q"] = nlohmann::json::array();
  j["P"] = nlohmann::json::array();
  for (const auto& pd : q) {
    auto entry = pair_json(s, pd.e, pd.pi);
    entry["target"] = s.label(pd.target);
    entry["H"] = pd.h->to_json();
    entry["Y"] = nlohmann::json::array();
    for (const auto& y : pd.y) entry["Y"].push_back(grp.to_json(y));
    j["Q"].push_back(entry);
    if (pd.in_p) {
      auto pe = pair_json(s, pd.e, pd.pi);
      pe["w"] = {{"e", s.label(pd.w->e)}, {"g", grp.to_json(pd.w->g)}};
      j["P"].push_back(pe);
    }
  }
  j["gens"] = nlohmann::json::array();
  for (const auto& g : gens) {
    j["gens"].push_back({{"e", s.label(g.elem.e)},
                         {"g", grp.to_json(g.elem.g)},
                         {"cert1", g.cert1},
                         {"cert2", g.cert2}});
  }
  j["raw_generator_count"] = raw_count;
  j["pruned"] = pruned;
  j["empty"] = gens.empty();
  return j;
}

BigInt poly_bound(std::size_t size_e, std::size_t n, const std::vector<BigInt>& p_coeffs) {
  for (const auto& c : p_coeffs) {
    if (c < 0) throw Error(ErrorKind::Usage, "polynomial coefficients must be nonnegative");
  }
  if (size_e < 1) throw Error(ErrorKind::Usage, "poly_bound needs |E| >= 1");
  constexpr std::size_t kMaxE = 10;
  if (size_e > kMaxE) throw CapExceeded("poly_bound |E|", kMaxE);
  const BigInt fact = factorial(size_e);
  const auto terms = static_cast<unsigned>(2 * fact);
  const BigInt x = 2 * BigInt(n);
  const BigInt q = x == 0 ? BigInt(1) : (boost::multiprecision::pow(x, terms) - 1) / (x - 1);
  BigInt p = 0;
  for (auto it = p_coeffs.rbegin(); it != p_coeffs.rend(); ++it) p = p * q + *it;
  return fact * (1 + p);
}

}  // namespace howson
