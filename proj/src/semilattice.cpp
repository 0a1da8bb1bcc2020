#include "howson/semilattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "howson/error.hpp"

namespace howson {

SAut SAut::identity(std::size_t n) {
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), 0);
  return SAut(std::move(images));
}

bool SAut::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<Element>(i)) return false;
  }
  return true;
}

SAut operator*(const SAut& a, const SAut& b) {
  std::vector<Element> images(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) images[i] = a(b(static_cast<Element>(i)));
  return SAut(std::move(images));
}

SAut SAut::inverse() const {
  std::vector<Element> images(size());
  for (std::size_t i = 0; i < size(); ++i) {
    images[static_cast<std::size_t>(images_[i])] = static_cast<Element>(i);
  }
  return SAut(std::move(images));
}

SAut SAut::pow(long long exponent) const {
  SAut base = exponent < 0 ? inverse() : *this;
  unsigned long long k = exponent < 0 ? 0ULL - static_cast<unsigned long long>(exponent)
                                      : static_cast<unsigned long long>(exponent);
  SAut result = identity(size());
  while (k > 0) {
    if (k & 1ULL) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

Semilattice::Semilattice(std::vector<std::string> labels,
                         std::vector<std::vector<Element>> meet)
    : labels_(std::move(labels)), meet_(std::move(meet)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidSemilattice(MeetDefect::BadIndex, "empty element set");
  if (meet_.size() != n) {
    throw InvalidSemilattice(MeetDefect::BadIndex, "meet table has " +
                                                       std::to_string(meet_.size()) +
                                                       " rows, expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (meet_[i].size() != n) {
      throw InvalidSemilattice(MeetDefect::BadIndex,
                               "row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (meet_[i][j] < 0 || static_cast<std::size_t>(meet_[i][j]) >= n) {
        throw InvalidSemilattice(MeetDefect::BadIndex, "meet[" + std::to_string(i) + "][" +
                                                           std::to_string(j) + "] = " +
                                                           std::to_string(meet_[i][j]));
      }
    }
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw InvalidSemilattice(MeetDefect::DuplicateLabel, "label '" + l + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (meet_[i][i] != static_cast<Element>(i)) {
      throw InvalidSemilattice(MeetDefect::NotIdempotent, "at " + labels_[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (meet_[i][j] != meet_[j][i]) {
        throw InvalidSemilattice(MeetDefect::NotCommutative,
                                 "pair (" + labels_[i] + ", " + labels_[j] + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        auto ij = static_cast<std::size_t>(meet_[i][j]);
        auto jk = static_cast<std::size_t>(meet_[j][k]);
        if (meet_[ij][k] != meet_[i][jk]) {
          throw InvalidSemilattice(MeetDefect::NotAssociative,
                                   "triple (" + labels_[i] + ", " + labels_[j] + ", " +
                                       labels_[k] + ")");
        }
      }
    }
  }
  leq_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq_[i * n + j] = meet_[i][j] == static_cast<Element>(i);
  }
  Element acc = 0;
  for (std::size_t i = 1; i < n; ++i) acc = this->meet(acc, static_cast<Element>(i));
  bottom_ = acc;
}

std::optional<Element> Semilattice::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Element>(it - labels_.begin());
}

Element Semilattice::index_of(const std::string& label) const {
  auto found = find(label);
  if (!found) throw Error(ErrorKind::ParseError, "unknown semilattice element '" + label + "'");
  return *found;
}

bool Semilattice::is_automorphism(const SAut& candidate) const {
  const std::size_t n = size();
  if (candidate.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto img = candidate(static_cast<Element>(i));
    if (img < 0 || static_cast<std::size_t>(img) >= n || hit[static_cast<std::size_t>(img)]) {
      return false;
    }
    hit[static_cast<std::size_t>(img)] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto a = static_cast<Element>(i);
      auto b = static_cast<Element>(j);
      if (candidate(meet(a, b)) != meet(candidate(a), candidate(b))) return false;
    }
  }
  return true;
}

Semilattice validate_meet_table(std::vector<std::string> labels,
                                std::vector<std::vector<Element>> meet) {
  return Semilattice(std::move(labels), std::move(meet));
}

namespace {

// Depth-first assignment of images with pruning: whenever both i, j and
// meet(i, j) are assigned, the meet must be preserved.
void extend(const Semilattice& s, std::vector<Element>& image, std::vector<bool>& used,
            std::size_t next, std::vector<SAut>& out) {
  const std::size_t n = s.size();
  if (next == n) {
    out.emplace_back(image);
    return;
  }
  for (std::size_t cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    image[next] = static_cast<Element>(cand);
    bool ok = true;
    // Every pair (i, j) whose meet becomes fully assigned at this step.
    for (std::size_t i = 0; i <= next && ok; ++i) {
      for (std::size_t j = 0; j <= i && ok; ++j) {
        auto m = static_cast<std::size_t>(s.meet(static_cast<Element>(i), static_cast<Element>(j)));
        if (m > next || (i != next && j != next && m != next)) continue;
        ok = image[m] == s.meet(image[i], image[j]);
      }
    }
    if (!ok) continue;
    used[cand] = true;
    extend(s, image, used, next + 1, out);
    used[cand] = false;
  }
  image[next] = -1;
}

}  // namespace

std::vector<SAut> automorphisms(const Semilattice& s, std::optional<std::size_t> cap) {
  const std::size_t limit = cap.value_or(Caps::current().automorphism_degree);
  if (s.size() > limit) throw CapExceeded("automorphism enumeration degree", limit);
  std::vector<Element> image(s.size(), -1);
  std::vector<bool> used(s.size(), false);
  std::vector<SAut> out;
  extend(s, image, used, 0, out);
  // Lexicographic enumeration already lists the identity first.
  return out;
}

std::vector<Element> subsemilattice_generated(const Semilattice& s,
                                              std::span<const Element> subset) {
  std::vector<bool> in(s.size(), false);
  std::vector<Element> members;
  for (Element e : subset) {
    if (!in[static_cast<std::size_t>(e)]) {
      in[static_cast<std::size_t>(e)] = true;
      members.push_back(e);
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Element m = s.meet(members[i], members[j]);
      if (!in[static_cast<std::size_t>(m)]) {
        in[static_cast<std::size_t>(m)] = true;
        members.push_back(m);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

Semilattice free_semilattice(int k) {
  const std::size_t cap = Caps::current().free_semilattice_rank;
  if (k < 1 || static_cast<std::size_t>(k) > cap) {
    throw CapExceeded("free semilattice rank " + std::to_string(k), cap);
  }
  const int n = (1 << k) - 1;
  std::vector<std::string> labels;
  for (int mask = 1; mask <= n; ++mask) {
    std::string l = "{";
    bool first = true;
    for (int bit = 0; bit < k; ++bit) {
      if (mask & (1 << bit)) {
        if (!first) l += ",";
        l += std::to_string(bit + 1);
        first = false;
      }
    }
    labels.push_back(l + "}");
  }
  std::vector<std::vector<Element>> meet(static_cast<std::size_t>(n),
                                         std::vector<Element>(static_cast<std::size_t>(n)));
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      meet[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = (a | b) - 1;
    }
  }
  return Semilattice(std::move(labels), std::move(meet));
}

Semilattice chain_semilattice(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> meet(static_cast<std::size_t>(n),
                                         std::vector<Element>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) {
      meet[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(i, j);
    }
  }
  return Semilattice(std::move(labels), std::move(meet));
}

Semilattice antichain_with_bottom(int k) {
  const auto n = static_cast<std::size_t>(k + 1);
  std::vector<std::string> labels{"0"};
  for (int i = 0; i < k; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::vector<Element>> meet(n, std::vector<Element>(n, 0));
  for (std::size_t i = 0; i < n; ++i) meet[i][i] = static_cast<Element>(i);
  return Semilattice(std::move(labels), std::move(meet));
}

}  // namespace howson
