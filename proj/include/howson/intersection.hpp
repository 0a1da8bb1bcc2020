#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "howson/rational.hpp"

namespace howson {

struct ProfileEntry {
  Element e = 0;
  SAut pi;
  int state = 0;
  GroupElem witness;          // (e, witness) lies in <X> and theta_witness = pi
  LetterWord word;            // word whose product is (e, witness)
};

/// The pairs (sigma(u), theta_gamma(u)) over u in <X>, i.e. the non-initial
/// reachable automaton states, in discovery order.
struct Profile {
  std::vector<ProfileEntry> pairs;

  const ProfileEntry* find(Element e, const SAut& pi) const;
};

Profile profile(const SdpAutomaton& aut);

/// gamma(S(pi^-1(e))) for a profile pair. Throws InternalInvariantViolation
/// when empty although (e, pi) is in the profile.
SofE s_i_subgroup(const SdpAutomaton& aut, Element e, const SAut& pi);

/// Caches gamma(S(f)) per target element for repeated queries.
class SofECache {
 public:
  explicit SofECache(const SdpAutomaton& aut) : aut_(&aut) {}
  const SofE& get(Element target);

 private:
  const SdpAutomaton* aut_;
  std::map<Element, SofE> cache_;
};

struct Membership {
  bool member = false;
  /// Word over the automaton alphabet whose product is the queried element.
  std::optional<LetterWord> certificate;
};

/// Decides u in <X>: (e, theta_g) must be a profile pair with witness g_i,
/// and g_i^-1 g must lie in gamma(S(theta_g^-1(e))).
Membership member(const SdpAutomaton& aut, const SdpElem& u);
Membership member(const SdpAutomaton& aut, SofECache& cache, const Profile& prof,
                  const SdpElem& u);

struct CertifiedGen {
  SdpElem elem;
  LetterWord cert1;           // over the first automaton's alphabet
  LetterWord cert2;           // over the second automaton's alphabet
};

struct PairData {
  Element e = 0;
  SAut pi;
  Element target = 0;         // pi^-1(e)
  std::optional<Subgroup> h;  // gamma(S1) n gamma(S2)
  std::vector<GroupElem> y;   // symmetrized generators of h
  bool in_p = false;
  std::optional<SdpElem> w;
};

struct IntersectOptions {
  /// Drop generators lying in the inverse subsemigroup generated by the
  /// others, scanning in sorted order.
  bool prune = false;
};

struct IntersectionResult {
  std::shared_ptr<const SdpAutomaton> aut1;
  std::shared_ptr<const SdpAutomaton> aut2;
  Profile p1;
  Profile p2;
  std::vector<PairData> q;    // P1 n P2 in discovery order of P1
  std::vector<CertifiedGen> gens;
  std::size_t raw_count = 0;
  bool pruned = false;

  std::vector<SdpElem> elements() const;
  nlohmann::json to_json() const;
};

/// Finite generating set of <X1> n <X2> with certificates over both sides.
/// An empty generator list encodes the empty intersection.
IntersectionResult intersect(std::shared_ptr<const Action> act, const std::vector<SdpElem>& x1,
                             const std::vector<SdpElem>& x2, IntersectOptions options = {});

/// True when both certificates of every generator multiply out to it.
bool certificates_valid(const IntersectionResult& r);

/// |E|! * (1 + p(q(2n))) with q(x) = sum_{j=0}^{2|E|!-1} x^j; coefficients
/// in increasing degree.
BigInt poly_bound(std::size_t size_e, std::size_t n, const std::vector<BigInt>& p_coeffs);

}  // namespace howson
