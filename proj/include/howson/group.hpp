#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace howson {

enum class GroupKind { FinitePerm, Free, FreeAbelian };

const char* to_string(GroupKind kind);
GroupKind parse_group_kind(const std::string& text);

/// A word over a list of generators: letter +(j+1) is generator j, -(j+1) its
/// inverse.
using GenWord = std::vector<int>;

GenWord inverse_word(const GenWord& w);
/// Free reduction (cancels adjacent x x^-1).
GenWord reduce_word(GenWord w);

/// Group element tagged by backend. Permutations store images, free group
/// elements store a freely reduced GenWord over the group's generators, free
/// abelian elements store an exponent vector.
class GroupElem {
 public:
  GroupElem() = default;
  GroupElem(GroupKind kind, std::vector<std::int64_t> data)
      : kind_(kind), data_(std::move(data)) {}

  GroupKind kind() const { return kind_; }
  const std::vector<std::int64_t>& data() const { return data_; }

  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
  friend bool operator==(const GroupElem&, const GroupElem&) = default;

 private:
  GroupKind kind_ = GroupKind::Free;
  std::vector<std::int64_t> data_;
};

struct GroupElemHash {
  std::size_t operator()(const GroupElem& g) const;
};

/// Description of the ambient group together with its element arithmetic.
class Group {
 public:
  static Group finite_perm(int degree, std::vector<std::string> names,
                           std::vector<std::vector<int>> perms);
  static Group free(std::vector<std::string> names);
  static Group free_abelian(std::vector<std::string> names);

  GroupKind kind() const { return kind_; }
  std::size_t generator_count() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  /// Points permuted (finite-perm only).
  int degree() const { return degree_; }
  /// Number of free generators (free, free-abelian).
  std::size_t rank() const { return names_.size(); }

  GroupElem identity() const;
  GroupElem generator(std::size_t i) const;
  bool is_identity(const GroupElem& g) const;

  /// Throws KindMismatch for elements of the wrong kind or shape.
  void check(const GroupElem& g) const;

  /// compose(a, b) is the product ab. For permutations, (ab)(p) = a(b(p)).
  GroupElem compose(const GroupElem& a, const GroupElem& b) const;
  GroupElem invert(const GroupElem& a) const;
  GroupElem power(const GroupElem& a, long long k) const;
  /// Evaluates a word over an arbitrary list of elements.
  GroupElem evaluate(const GenWord& w, std::span<const GroupElem> gens) const;

  /// Element literals: permutations as image arrays, free words as
  /// whitespace separated tokens ("x y- x"), abelian elements as integer
  /// arrays.
  GroupElem parse(const nlohmann::json& literal) const;
  GroupElem parse_text(const std::string& text) const;
  nlohmann::json to_json(const GroupElem& g) const;
  std::string format(const GroupElem& g) const;

  nlohmann::json describe() const;

 private:
  Group(GroupKind kind, int degree, std::vector<std::string> names,
        std::vector<std::vector<int>> perms);

  GroupKind kind_;
  int degree_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> perms_;
};

}  // namespace howson
