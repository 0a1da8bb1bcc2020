#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace howson {

using Element = int;

/// Automorphism of a finite semilattice, stored as the image of each index.
class SAut {
 public:
  SAut() = default;
  explicit SAut(std::vector<Element> images) : images_(std::move(images)) {}

  static SAut identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  Element operator()(Element e) const { return images_[static_cast<std::size_t>(e)]; }
  const std::vector<Element>& images() const { return images_; }
  bool is_identity() const;

  /// (a * b)(e) = a(b(e)).
  friend SAut operator*(const SAut& a, const SAut& b);
  SAut inverse() const;
  /// Integer power; negative exponents use the inverse.
  SAut pow(long long exponent) const;

  friend auto operator<=>(const SAut&, const SAut&) = default;
  friend bool operator==(const SAut&, const SAut&) = default;

 private:
  std::vector<Element> images_;
};

/// A finite meet-semilattice given by an explicit meet table. Immutable after
/// construction; the partial order is cached.
class Semilattice {
 public:
  /// Validates the table and throws InvalidSemilattice naming the first
  /// failing index, pair or triple.
  Semilattice(std::vector<std::string> labels,
              std::vector<std::vector<Element>> meet);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Element e) const { return labels_[static_cast<std::size_t>(e)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Element> find(const std::string& label) const;
  Element index_of(const std::string& label) const;

  Element meet(Element a, Element b) const {
    return meet_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  const std::vector<std::vector<Element>>& meet_table() const { return meet_; }

  /// a <= b iff a ^ b = a.
  bool leq(Element a, Element b) const {
    return leq_[static_cast<std::size_t>(a) * size() + static_cast<std::size_t>(b)];
  }
  Element bottom() const { return bottom_; }

  bool is_automorphism(const SAut& candidate) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Element>> meet_;
  std::vector<bool> leq_;
  Element bottom_ = 0;
};

Semilattice validate_meet_table(std::vector<std::string> labels,
                                std::vector<std::vector<Element>> meet);

/// The full automorphism group, identity first, remaining entries in
/// lexicographic order of their image arrays. Throws CapExceeded above
/// `cap` elements (default: Caps::current().automorphism_degree).
std::vector<SAut> automorphisms(const Semilattice& s,
                                std::optional<std::size_t> cap = std::nullopt);

/// Smallest meet-closed superset of `subset`, sorted ascending.
std::vector<Element> subsemilattice_generated(const Semilattice& s,
                                              std::span<const Element> subset);

/// Nonempty subsets of {1..k} under union. Index i corresponds to the bitmask
/// i + 1, so X <= Y iff X contains Y.
Semilattice free_semilattice(int k);

/// Chain 0 < 1 < ... < n-1 with meet = min. Labels are the decimal indices.
Semilattice chain_semilattice(int n);

/// Bottom plus k pairwise incomparable atoms; all distinct meets are the
/// bottom. diamond(2) is the three element semilattice {0, a, b}.
Semilattice antichain_with_bottom(int k);

}  // namespace howson
