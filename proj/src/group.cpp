#include "howson/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "howson/error.hpp"
#include "overflow.hpp"

namespace howson {

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::FinitePerm: return "finite-perm";
    case GroupKind::Free: return "free";
    case GroupKind::FreeAbelian: return "free-abelian";
  }
  return "unknown";
}

GroupKind parse_group_kind(const std::string& text) {
  if (text == "finite-perm") return GroupKind::FinitePerm;
  if (text == "free") return GroupKind::Free;
  if (text == "free-abelian") return GroupKind::FreeAbelian;
  throw Error(ErrorKind::ParseError, "unknown group kind '" + text + "'");
}

GenWord inverse_word(const GenWord& w) {
  GenWord out(w.rbegin(), w.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

GenWord reduce_word(GenWord w) {
  GenWord out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

std::size_t GroupElemHash::operator()(const GroupElem& g) const {
  std::size_t h = static_cast<std::size_t>(g.kind()) * 0x9e3779b97f4a7c15ULL;
  for (auto v : g.data()) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  }
  return h;
}

Group::Group(GroupKind kind, int degree, std::vector<std::string> names,
             std::vector<std::vector<int>> perms)
    : kind_(kind), degree_(degree), names_(std::move(names)), perms_(std::move(perms)) {
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::ParseError, "duplicate generator name");
  }
  for (const auto& n : names_) {
    if (n.empty() || n.find_first_of(" \t\n") != std::string::npos || n.back() == '-') {
      throw Error(ErrorKind::ParseError, "invalid generator name '" + n + "'");
    }
  }
}

Group Group::finite_perm(int degree, std::vector<std::string> names,
                         std::vector<std::vector<int>> perms) {
  if (degree < 1) throw Error(ErrorKind::ParseError, "permutation degree must be >= 1");
  if (names.size() != perms.size()) {
    throw Error(ErrorKind::ParseError, "one permutation per generator name required");
  }
  for (const auto& p : perms) {
    if (p.size() != static_cast<std::size_t>(degree)) {
      throw Error(ErrorKind::ParseError, "generator permutation has wrong degree");
    }
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::ParseError, "generator is not a permutation");
      }
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
  return Group(GroupKind::FinitePerm, degree, std::move(names), std::move(perms));
}

Group Group::free(std::vector<std::string> names) {
  if (names.empty()) throw Error(ErrorKind::ParseError, "free group rank must be >= 1");
  return Group(GroupKind::Free, 0, std::move(names), {});
}

Group Group::free_abelian(std::vector<std::string> names) {
  if (names.empty()) throw Error(ErrorKind::ParseError, "free abelian rank must be >= 1");
  return Group(GroupKind::FreeAbelian, 0, std::move(names), {});
}

GroupElem Group::identity() const {
  switch (kind_) {
    case GroupKind::FinitePerm: {
      std::vector<std::int64_t> id(static_cast<std::size_t>(degree_));
      std::iota(id.begin(), id.end(), 0);
      return {kind_, std::move(id)};
    }
    case GroupKind::Free: return {kind_, {}};
    case GroupKind::FreeAbelian: return {kind_, std::vector<std::int64_t>(rank(), 0)};
  }
  return {};
}

GroupElem Group::generator(std::size_t i) const {
  switch (kind_) {
    case GroupKind::FinitePerm:
      return {kind_, std::vector<std::int64_t>(perms_[i].begin(), perms_[i].end())};
    case GroupKind::Free: return {kind_, {static_cast<std::int64_t>(i) + 1}};
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> v(rank(), 0);
      v[i] = 1;
      return {kind_, std::move(v)};
    }
  }
  return {};
}

bool Group::is_identity(const GroupElem& g) const { return g == identity(); }

void Group::check(const GroupElem& g) const {
  if (g.kind() != kind_) {
    throw Error(ErrorKind::KindMismatch, std::string("expected ") + to_string(kind_) +
                                             " element, got " + to_string(g.kind()));
  }
  const auto& d = g.data();
  switch (kind_) {
    case GroupKind::FinitePerm: {
      if (d.size() != static_cast<std::size_t>(degree_)) {
        throw Error(ErrorKind::KindMismatch, "permutation has wrong degree");
      }
      std::vector<bool> hit(d.size(), false);
      for (auto v : d) {
        if (v < 0 || v >= degree_ || hit[static_cast<std::size_t>(v)]) {
          throw Error(ErrorKind::KindMismatch, "not a permutation");
        }
        hit[static_cast<std::size_t>(v)] = true;
      }
      break;
    }
    case GroupKind::Free:
      for (std::size_t i = 0; i < d.size(); ++i) {
        auto a = d[i] < 0 ? -d[i] : d[i];
        if (a < 1 || static_cast<std::size_t>(a) > rank()) {
          throw Error(ErrorKind::KindMismatch, "free word letter out of range");
        }
        if (i > 0 && d[i] == -d[i - 1]) {
          throw Error(ErrorKind::KindMismatch, "free word is not reduced");
        }
      }
      break;
    case GroupKind::FreeAbelian:
      if (d.size() != rank()) throw Error(ErrorKind::KindMismatch, "vector has wrong length");
      break;
  }
}

GroupElem Group::compose(const GroupElem& a, const GroupElem& b) const {
  if (a.kind() != kind_ || b.kind() != kind_) {
    throw Error(ErrorKind::KindMismatch, "compose: element kind does not match group");
  }
  switch (kind_) {
    case GroupKind::FinitePerm: {
      std::vector<std::int64_t> out(a.data().size());
      for (std::size_t p = 0; p < out.size(); ++p) {
        out[p] = a.data()[static_cast<std::size_t>(b.data()[p])];
      }
      return {kind_, std::move(out)};
    }
    case GroupKind::Free: {
      std::vector<std::int64_t> out = a.data();
      for (auto letter : b.data()) {
        if (!out.empty() && out.back() == -letter) {
          out.pop_back();
        } else {
          out.push_back(letter);
        }
      }
      return {kind_, std::move(out)};
    }
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> out(a.data().size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(a.data()[i], b.data()[i]);
      return {kind_, std::move(out)};
    }
  }
  return {};
}

GroupElem Group::invert(const GroupElem& a) const {
  if (a.kind() != kind_) throw Error(ErrorKind::KindMismatch, "invert: wrong kind");
  switch (kind_) {
    case GroupKind::FinitePerm: {
      std::vector<std::int64_t> out(a.data().size());
      for (std::size_t p = 0; p < out.size(); ++p) {
        out[static_cast<std::size_t>(a.data()[p])] = static_cast<std::int64_t>(p);
      }
      return {kind_, std::move(out)};
    }
    case GroupKind::Free: {
      std::vector<std::int64_t> out(a.data().rbegin(), a.data().rend());
      for (auto& letter : out) letter = -letter;
      return {kind_, std::move(out)};
    }
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> out(a.data().size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_mul(a.data()[i], -1);
      return {kind_, std::move(out)};
    }
  }
  return {};
}

GroupElem Group::power(const GroupElem& a, long long k) const {
  GroupElem base = k < 0 ? invert(a) : a;
  unsigned long long n = k < 0 ? 0ULL - static_cast<unsigned long long>(k)
                               : static_cast<unsigned long long>(k);
  GroupElem result = identity();
  while (n > 0) {
    if (n & 1ULL) result = compose(result, base);
    n >>= 1U;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

GroupElem Group::evaluate(const GenWord& w, std::span<const GroupElem> gens) const {
  GroupElem result = identity();
  for (int letter : w) {
    auto j = static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1;
    if (j >= gens.size()) throw Error(ErrorKind::InternalInvariantViolation, "word letter out of range");
    result = compose(result, letter > 0 ? gens[j] : invert(gens[j]));
  }
  return result;
}

GroupElem Group::parse(const nlohmann::json& literal) const {
  switch (kind_) {
    case GroupKind::Free: {
      if (!literal.is_string()) throw Error(ErrorKind::ParseError, "free word literal must be a string");
      return parse_text(literal.get<std::string>());
    }
    case GroupKind::FinitePerm:
    case GroupKind::FreeAbelian: {
      if (!literal.is_array()) throw Error(ErrorKind::ParseError, "element literal must be an integer array");
      std::vector<std::int64_t> data;
      for (const auto& v : literal) {
        if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "element literal must be an integer array");
        data.push_back(v.get<std::int64_t>());
      }
      GroupElem g(kind_, std::move(data));
      try {
        check(g);
      } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, std::string("bad element literal: ") + e.what());
      }
      return g;
    }
  }
  return {};
}

GroupElem Group::parse_text(const std::string& text) const {
  if (kind_ != GroupKind::Free) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("bad element literal: ") + e.what());
    }
    return parse(j);
  }
  std::stringstream in(text);
  std::string token;
  std::vector<std::int64_t> letters;
  while (in >> token) {
    bool inverse = token.size() > 1 && token.back() == '-';
    std::string name = inverse ? token.substr(0, token.size() - 1) : token;
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error(ErrorKind::ParseError, "unknown generator '" + name + "'");
    auto letter = static_cast<std::int64_t>(it - names_.begin()) + 1;
    letters.push_back(inverse ? -letter : letter);
  }
  GroupElem out = identity();
  for (auto letter : letters) out = compose(out, GroupElem(kind_, {letter}));
  return out;
}

nlohmann::json Group::to_json(const GroupElem& g) const {
  if (kind_ == GroupKind::Free) return format(g);
  return g.data();
}

std::string Group::format(const GroupElem& g) const {
  if (kind_ == GroupKind::Free) {
    std::string out;
    for (auto letter : g.data()) {
      if (!out.empty()) out += ' ';
      out += names_[static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1];
      if (letter < 0) out += '-';
    }
    return out;
  }
  return nlohmann::json(g.data()).dump();
}

nlohmann::json Group::describe() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  if (kind_ == GroupKind::FinitePerm) {
    j["degree"] = degree_;
    nlohmann::json gens = nlohmann::json::object();
    for (std::size_t i = 0; i < names_.size(); ++i) gens[names_[i]] = perms_[i];
    j["generators"] = gens;
  } else {
    j["rank"] = rank();
    j["generators"] = names_;
  }
  return j;
}

}  // namespace howson
