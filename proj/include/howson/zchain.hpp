#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <json.hpp>

namespace howson {

/// Element (m, n) of Z x| Z with Z acting on the chain Z by translation.
struct ZElem {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend auto operator<=>(const ZElem&, const ZElem&) = default;
  friend bool operator==(const ZElem&, const ZElem&) = default;
};

/// (m, n)(m', n') = (min(m, n + m'), n + n'). Throws CapExceeded on overflow.
ZElem z_mul(const ZElem& u, const ZElem& v);
/// (m, n)^-1 = (m - n, -n).
ZElem z_inv(const ZElem& u);
ZElem z_pow(const ZElem& u, std::int64_t k);

std::vector<ZElem> z_symmetrize(const std::vector<ZElem>& x);

/// Largest semilattice part over X u X^-1.
std::int64_t bound_M(const std::vector<ZElem>& x);
/// gcd of the nonzero group parts; 0 when X holds only idempotents.
std::int64_t gamma_period(const std::vector<ZElem>& x);

struct ZWindow {
  /// Element -> fewest letters of X u X^-1 needed to reach it.
  std::map<ZElem, std::size_t> found_at;

  std::set<ZElem> elements() const;
  bool contains(const ZElem& u) const { return found_at.count(u) != 0; }
};

/// All products of at most `depth` letters. Throws CapExceeded past `cap`
/// elements (default from Caps).
ZWindow enumerate_window(const std::vector<ZElem>& x, std::size_t depth,
                         std::optional<std::size_t> cap = std::nullopt);

struct ZClassRecord {
  std::int64_t residue = 0;
  /// Absent when the class shows no element with n > 0: such a class
  /// consists of idempotents only and is generated by them.
  std::optional<std::int64_t> M;
  std::vector<ZElem> s_prime;
  std::vector<ZElem> gens;
  bool certified = false;
};

struct ZDecomposition {
  std::int64_t N = 0;
  std::int64_t bound = 0;
  std::size_t depth = 0;
  std::vector<ZClassRecord> classes;
  bool certified = false;

  nlohmann::json to_json() const;
};

/// Window estimate of the per-class generators {(M_i, N)} u S'_i. A class is
/// certified when its estimate agrees at `depth` and `depth - 1` and
/// (M_i, N) itself lies in the window. Throws NotApplicable when N = 0.
ZDecomposition decompose_zz1(const std::vector<ZElem>& x, std::size_t depth);

/// Class split of an explicit element set with a given period, without
/// certification.
ZDecomposition decompose_set(const std::set<ZElem>& elements, std::int64_t N);

struct ZClassCheck {
  std::int64_t residue = 0;
  bool forward = false;      // window(X) class elements generated by gens_i
  bool backward = false;     // window(gens_i) lies in a window of X
  std::vector<ZElem> missing;
};

struct ZVerification {
  std::size_t depth = 0;
  std::size_t forward_depth = 0;
  std::size_t backward_depth = 0;
  std::vector<ZClassCheck> classes;
  bool agreement = false;

  nlohmann::json to_json() const;
};

/// Forward: every class-i element of window(X, depth) appears in
/// window(gens_i, d1) where d1 covers the explicit factorization through
/// (M_i, N). Backward: window(gens_i, depth) lies in window(X, depth * L)
/// with L the largest depth at which a generator occurs in window(X).
ZVerification verify_zz1(const std::vector<ZElem>& x, const ZDecomposition& records,
                         std::size_t depth);

/// Intersects the two windows and splits the common part into classes.
/// Uncertified by construction.
ZDecomposition windowed_intersection(const std::vector<ZElem>& x1, const std::vector<ZElem>& x2,
                                     std::size_t depth);

nlohmann::json to_json(const ZElem& u);
ZElem zelem_from_json(const nlohmann::json& j);
/// Parses "[m,n];[m,n];...".
std::vector<ZElem> parse_zelems(const std::string& text);

}  // namespace howson
