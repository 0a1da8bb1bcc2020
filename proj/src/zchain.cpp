#include "howson/zchain.hpp"

#include <algorithm>
#include <numeric>

#include "howson/error.hpp"
#include "overflow.hpp"

namespace howson {

ZElem z_mul(const ZElem& u, const ZElem& v) {
  return {std::min(u.m, checked_add(u.n, v.m)), checked_add(u.n, v.n)};
}

ZElem z_inv(const ZElem& u) {
  return {checked_add(u.m, checked_mul(-1, u.n)), checked_mul(-1, u.n)};
}

ZElem z_pow(const ZElem& u, std::int64_t k) {
  if (k == 0) throw Error(ErrorKind::EmptyWord, "zero power of a semigroup element");
  ZElem base = k < 0 ? z_inv(u) : u;
  ZElem out = base;
  for (std::int64_t i = 1; i < (k < 0 ? -k : k); ++i) out = z_mul(out, base);
  return out;
}

std::vector<ZElem> z_symmetrize(const std::vector<ZElem>& x) {
  std::vector<ZElem> out;
  for (const auto& u : x) {
    for (const auto& v : {u, z_inv(u)}) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

std::int64_t bound_M(const std::vector<ZElem>& x) {
  if (x.empty()) throw Error(ErrorKind::Usage, "generating set must be nonempty");
  std::int64_t best = z_inv(x.front()).m;
  for (const auto& u : z_symmetrize(x)) best = std::max(best, u.m);
  return best;
}

std::int64_t gamma_period(const std::vector<ZElem>& x) {
  std::int64_t g = 0;
  for (const auto& u : x) g = std::gcd(g, u.n < 0 ? -u.n : u.n);
  return g;
}

std::set<ZElem> ZWindow::elements() const {
  std::set<ZElem> out;
  for (const auto& [u, d] : found_at) out.insert(u);
  return out;
}

ZWindow enumerate_window(const std::vector<ZElem>& x, std::size_t depth,
                         std::optional<std::size_t> cap) {
  if (x.empty()) throw Error(ErrorKind::Usage, "generating set must be nonempty");
  if (depth < 1) throw Error(ErrorKind::Usage, "window depth must be >= 1");
  const std::size_t limit = cap.value_or(Caps::current().zchain_window);
  const std::vector<ZElem> letters = z_symmetrize(x);
  ZWindow w;
  std::set<ZElem> layer(letters.begin(), letters.end());
  for (const auto& u : layer) w.found_at.emplace(u, 1);
  for (std::size_t d = 2; d <= depth; ++d) {
    std::set<ZElem> next;
    for (const auto& u : layer) {
      for (const auto& a : letters) {
        next.insert(z_mul(u, a));
        if (next.size() > limit) throw CapExceeded("zchain window", limit);
      }
    }
    for (const auto& u : next) {
      w.found_at.emplace(u, d);
      if (w.found_at.size() > limit) throw CapExceeded("zchain window", limit);
    }
    layer = std::move(next);
  }
  return w;
}

namespace {

std::int64_t residue(std::int64_t m, std::int64_t N) { return ((m % N) + N) % N; }

}  // namespace

ZDecomposition decompose_set(const std::set<ZElem>& elements, std::int64_t N) {
  if (N <= 0) throw Error(ErrorKind::NotApplicable, "only idempotents: no period N > 0");
  ZDecomposition out;
  out.N = N;
  out.bound = elements.empty() ? 0 : std::prev(elements.end())->m;
  std::map<std::int64_t, ZClassRecord> by_class;
  for (const auto& u : elements) {
    auto& rec = by_class[residue(u.m, N)];
    rec.residue = residue(u.m, N);
    if (u.n > 0) rec.M = rec.M ? std::max(*rec.M, u.m) : u.m;
  }
  for (auto& [i, rec] : by_class) {
    for (const auto& u : elements) {
      if (u.n != 0 || residue(u.m, N) != i) continue;
      if (!rec.M || u.m > *rec.M) rec.s_prime.push_back(u);
    }
    if (rec.M) rec.gens.push_back({*rec.M, N});
    rec.gens.insert(rec.gens.end(), rec.s_prime.begin(), rec.s_prime.end());
    out.classes.push_back(std::move(rec));
  }
  return out;
}

ZDecomposition decompose_zz1(const std::vector<ZElem>& x, std::size_t depth) {
  const std::int64_t N = gamma_period(x);
  if (N == 0) throw Error(ErrorKind::NotApplicable, "only idempotents: no period N > 0");
  if (depth < 2) throw Error(ErrorKind::Usage, "decomposition depth must be >= 2");
  ZWindow w = enumerate_window(x, depth);
  ZDecomposition out = decompose_set(w.elements(), N);
  out.depth = depth;
  out.bound = bound_M(x);
  std::set<ZElem> shallow;
  for (const auto& [u, d] : w.found_at) {
    if (d < depth) shallow.insert(u);
  }
  ZDecomposition prev = decompose_set(shallow, N);
  out.certified = true;
  for (auto& rec : out.classes) {
    auto it = std::find_if(prev.classes.begin(), prev.classes.end(),
                           [&](const ZClassRecord& r) { return r.residue == rec.residue; });
    bool stable = it != prev.classes.end() && it->M == rec.M && it->s_prime == rec.s_prime;
    bool witnessed = !rec.M || w.contains({*rec.M, N});
    rec.certified = stable && witnessed;
    out.certified = out.certified && rec.certified;
  }
  return out;
}

namespace {

// Letters of the factorization (M - pN, qN) = g^-p g^(p+q+1) g^-1 with
// g = (M, N), for q >= 0; inverses for q < 0.
std::size_t factorization_length(const ZElem& u, std::int64_t M, std::int64_t N) {
  ZElem v = u.n >= 0 ? u : z_inv(u);
  if (v.m > M) return 1;
  auto p = static_cast<std::size_t>((M - v.m) / N);
  auto q = static_cast<std::size_t>(v.n / N);
  return 2 * p + q + 2;
}

}  // namespace

ZVerification verify_zz1(const std::vector<ZElem>& x, const ZDecomposition& records,
                         std::size_t depth) {
  ZVerification out;
  out.depth = depth;
  const std::int64_t N = records.N;
  ZWindow wx = enumerate_window(x, depth);

  std::size_t forward = 2 * depth + 4;
  for (const auto& rec : records.classes) {
    if (!rec.M) continue;
    for (const auto& [u, d] : wx.found_at) {
      if (residue(u.m, N) == rec.residue) {
        forward = std::max(forward, factorization_length(u, *rec.M, N));
      }
    }
  }
  out.forward_depth = forward;

  std::size_t longest = 1;
  std::vector<ZElem> all_gens;
  for (const auto& rec : records.classes) {
    all_gens.insert(all_gens.end(), rec.gens.begin(), rec.gens.end());
  }
  ZWindow probe = enumerate_window(x, std::max<std::size_t>(depth, 2));
  for (const auto& g : all_gens) {
    auto it = probe.found_at.find(g);
    if (it != probe.found_at.end()) longest = std::max(longest, it->second);
  }
  out.backward_depth = depth * longest;
  ZWindow wide = enumerate_window(x, out.backward_depth);

  out.agreement = true;
  for (const auto& rec : records.classes) {
    ZClassCheck check;
    check.residue = rec.residue;
    if (rec.gens.empty()) {
      out.agreement = false;
      out.classes.push_back(check);
      continue;
    }
    ZWindow wg = enumerate_window(rec.gens, forward);
    check.forward = true;
    for (const auto& [u, d] : wx.found_at) {
      if (residue(u.m, N) != rec.residue) continue;
      if (!wg.contains(u)) {
        check.forward = false;
        check.missing.push_back(u);
      }
    }
    ZWindow back = enumerate_window(rec.gens, depth);
    check.backward = true;
    for (const auto& [u, d] : back.found_at) {
      if (!wide.contains(u)) check.backward = false;
    }
    out.agreement = out.agreement && check.forward && check.backward;
    out.classes.push_back(std::move(check));
  }
  return out;
}

ZDecomposition windowed_intersection(const std::vector<ZElem>& x1, const std::vector<ZElem>& x2,
                                     std::size_t depth) {
  std::set<ZElem> a = enumerate_window(x1, depth).elements();
  std::set<ZElem> b = enumerate_window(x2, depth).elements();
  std::set<ZElem> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(common, common.end()));
  std::int64_t N = 0;
  for (const auto& u : common) N = std::gcd(N, u.n < 0 ? -u.n : u.n);
  if (N == 0) {
    ZDecomposition out;
    out.depth = depth;
    ZClassRecord rec;
    rec.s_prime.assign(common.begin(), common.end());
    rec.gens = rec.s_prime;
    out.classes.push_back(std::move(rec));
    return out;
  }
  ZDecomposition out = decompose_set(common, N);
  out.depth = depth;
  return out;
}

nlohmann::json to_json(const ZElem& u) { return nlohmann::json::array({u.m, u.n}); }

ZElem zelem_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(ErrorKind::ParseError, "zchain element must be [m, n]");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

std::vector<ZElem> parse_zelems(const std::string& text) {
  std::vector<ZElem> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(start, end - start);
    if (part.find_first_not_of(" \t") != std::string::npos) {
      try {
        out.push_back(zelem_from_json(nlohmann::json::parse(part)));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, "bad zchain element '" + part + "': " + e.what());
      }
    }
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "no zchain elements given");
  return out;
}

namespace {

nlohmann::json list_json(const std::vector<ZElem>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& u : v) a.push_back(to_json(u));
  return a;
}

}  // namespace

nlohmann::json ZDecomposition::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["M"] = bound;
  j["depth"] = depth;
  j["certified"] = certified;
  j["classes"] = nlohmann::json::array();
  for (const auto& rec : classes) {
    j["classes"].push_back({{"i", rec.residue},
                            {"M_i", rec.M ? nlohmann::json(*rec.M) : nlohmann::json(nullptr)},
                            {"SPrime_i", list_json(rec.s_prime)},
                            {"gens_i", list_json(rec.gens)},
                            {"certified", rec.certified}});
  }
  return j;
}

nlohmann::json ZVerification::to_json() const {
  nlohmann::json j;
  j["depth"] = depth;
  j["forward_depth"] = forward_depth;
  j["backward_depth"] = backward_depth;
  j["agreement"] = agreement;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : classes) {
    j["classes"].push_back({{"i", c.residue},
                            {"forward", c.forward},
                            {"backward", c.backward},
                            {"missing", list_json(c.missing)}});
  }
  return j;
}

}  // namespace howson
