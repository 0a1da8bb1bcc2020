#include "howson/core_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "howson/error.hpp"

namespace howson {

namespace {

int letter_rank(int signed_letter) {
  int a = signed_letter < 0 ? -signed_letter : signed_letter;
  return 2 * a + (signed_letter < 0 ? 1 : 0);
}

GenWord concat(const GenWord& a, const GenWord& b) {
  GenWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce_word(std::move(out));
}

// Mutable multigraph used while folding. Vertices merged away are marked dead
// and forwarded through `alias`.
struct WorkGraph {
  int vertex_count = 1;
  std::vector<CoreEdge> edges;

  int add_vertex() { return vertex_count++; }
  void add_edge(int src, int dst, int letter, GenWord label) {
    edges.push_back({src, dst, letter, std::move(label)});
  }
  // Path spelling `word` from `from` to `to`; the first edge carries `label`.
  void add_path(int from, int to, const std::vector<std::int64_t>& word, GenWord label) {
    int cur = from;
    for (std::size_t i = 0; i < word.size(); ++i) {
      int next = i + 1 == word.size() ? to : add_vertex();
      auto letter = static_cast<int>(word[i]);
      GenWord l = i == 0 ? label : GenWord{};
      if (letter > 0) {
        add_edge(cur, next, letter - 1, std::move(l));
      } else {
        add_edge(next, cur, -letter - 1, inverse_word(l));
      }
      cur = next;
    }
  }
};

struct Folded {
  int vertex_count = 0;
  std::vector<CoreEdge> edges;
  std::vector<int> vertex_map;  // original vertex -> folded vertex
};

// Stallings folding. Labels are re-gauged at the vertex being merged away so
// that label products along closed paths at `base` keep evaluating to the
// element read.
Folded fold(WorkGraph g, int base) {
  const auto n = static_cast<std::size_t>(g.vertex_count);
  std::vector<int> alias(n);
  std::iota(alias.begin(), alias.end(), 0);
  std::vector<bool> dead(n, false);
  std::vector<bool> edge_dead(g.edges.size(), false);
  std::vector<std::vector<int>> inc(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[static_cast<std::size_t>(g.edges[e].src)].push_back(static_cast<int>(e));
    if (g.edges[e].dst != g.edges[e].src) {
      inc[static_cast<std::size_t>(g.edges[e].dst)].push_back(static_cast<int>(e));
    }
  }
  std::deque<int> queue(n);
  std::iota(queue.begin(), queue.end(), 0);

  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dead[static_cast<std::size_t>(v)]) continue;
    auto& list = inc[static_cast<std::size_t>(v)];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](int e) { return edge_dead[static_cast<std::size_t>(e)]; });

    std::map<int, std::pair<int, bool>> seen;
    bool merged = false;
    for (int e : list) {
      const CoreEdge& edge = g.edges[static_cast<std::size_t>(e)];
      for (int pass = 0; pass < 2 && !merged; ++pass) {
        bool forward = pass == 0;
        if (forward && edge.src != v) continue;
        if (!forward && edge.dst != v) continue;
        int signed_letter = forward ? edge.letter + 1 : -(edge.letter + 1);
        auto [it, inserted] = seen.emplace(signed_letter, std::make_pair(e, forward));
        if (inserted) continue;

        auto [e1, f1] = it->second;
        int e2 = e;
        bool f2 = forward;
        const CoreEdge& c1 = g.edges[static_cast<std::size_t>(e1)];
        const CoreEdge& c2 = g.edges[static_cast<std::size_t>(e2)];
        int v1 = f1 ? c1.dst : c1.src;
        int v2 = f2 ? c2.dst : c2.src;
        if (v1 == v2) {
          edge_dead[static_cast<std::size_t>(e2)] = true;
        } else {
          GenWord t1 = f1 ? c1.label : inverse_word(c1.label);
          GenWord t2 = f2 ? c2.label : inverse_word(c2.label);
          int keep = v1;
          int drop = v2;
          if (drop == base) {
            std::swap(keep, drop);
            std::swap(t1, t2);
          }
          GenWord c = concat(inverse_word(t1), t2);
          GenWord c_inv = inverse_word(c);
          auto& dropped = inc[static_cast<std::size_t>(drop)];
          std::sort(dropped.begin(), dropped.end());
          dropped.erase(std::unique(dropped.begin(), dropped.end()), dropped.end());
          for (int de : dropped) {
            if (edge_dead[static_cast<std::size_t>(de)]) continue;
            CoreEdge& edge_d = g.edges[static_cast<std::size_t>(de)];
            if (edge_d.src == drop) edge_d.label = concat(c, edge_d.label);
            if (edge_d.dst == drop) edge_d.label = concat(edge_d.label, c_inv);
            if (edge_d.src == drop) edge_d.src = keep;
            if (edge_d.dst == drop) edge_d.dst = keep;
            inc[static_cast<std::size_t>(keep)].push_back(de);
          }
          dropped.clear();
          dead[static_cast<std::size_t>(drop)] = true;
          alias[static_cast<std::size_t>(drop)] = keep;
          queue.push_back(keep);
        }
        queue.push_back(v);
        merged = true;
      }
      if (merged) break;
    }
  }

  auto resolve = [&](int v) {
    while (alias[static_cast<std::size_t>(v)] != v) v = alias[static_cast<std::size_t>(v)];
    return v;
  };
  std::vector<int> renumber(n, -1);
  int count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!dead[v]) renumber[v] = count++;
  }
  Folded out;
  out.vertex_count = count;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_dead[e]) continue;
    CoreEdge edge = g.edges[e];
    edge.src = renumber[static_cast<std::size_t>(edge.src)];
    edge.dst = renumber[static_cast<std::size_t>(edge.dst)];
    out.edges.push_back(std::move(edge));
  }
  out.vertex_map.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.vertex_map[v] = renumber[static_cast<std::size_t>(resolve(static_cast<int>(v)))];
  }
  return out;
}

// Removes hanging trees: repeatedly drops non-protected vertices of degree <= 1.
void trim(int& vertex_count, std::vector<CoreEdge>& edges, const std::set<int>& keep) {
  bool changed = true;
  std::vector<bool> removed(static_cast<std::size_t>(vertex_count), false);
  while (changed) {
    changed = false;
    std::vector<int> degree(static_cast<std::size_t>(vertex_count), 0);
    for (const auto& e : edges) {
      ++degree[static_cast<std::size_t>(e.src)];
      ++degree[static_cast<std::size_t>(e.dst)];
    }
    for (int v = 0; v < vertex_count; ++v) {
      if (removed[static_cast<std::size_t>(v)] || keep.contains(v)) continue;
      if (degree[static_cast<std::size_t>(v)] <= 1) {
        removed[static_cast<std::size_t>(v)] = true;
        changed = true;
      }
    }
    std::erase_if(edges, [&](const CoreEdge& e) {
      return removed[static_cast<std::size_t>(e.src)] || removed[static_cast<std::size_t>(e.dst)];
    });
  }
}

}  // namespace

struct CoreGraphBuilder {
  // Renumbers vertices breadth-first from `base` and drops unreachable parts.
  static CoreGraph canonical(std::size_t rank, int vertex_count, std::vector<CoreEdge> edges,
                             int base) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(vertex_count));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj[static_cast<std::size_t>(edges[e].src)].push_back({edges[e].letter + 1, static_cast<int>(e)});
      adj[static_cast<std::size_t>(edges[e].dst)].push_back({-(edges[e].letter + 1), static_cast<int>(e)});
    }
    for (auto& list : adj) {
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        return letter_rank(a.first) < letter_rank(b.first);
      });
    }
    std::vector<int> order(static_cast<std::size_t>(vertex_count), -1);
    std::deque<int> queue{base};
    order[static_cast<std::size_t>(base)] = 0;
    int next = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [signed_letter, e] : adj[static_cast<std::size_t>(v)]) {
        const auto& edge = edges[static_cast<std::size_t>(e)];
        int w = signed_letter > 0 ? edge.dst : edge.src;
        if (order[static_cast<std::size_t>(w)] < 0) {
          order[static_cast<std::size_t>(w)] = next++;
          queue.push_back(w);
        }
      }
    }
    CoreGraph g;
    g.rank_ = rank;
    g.vertex_count_ = static_cast<std::size_t>(next);
    for (auto& e : edges) {
      if (order[static_cast<std::size_t>(e.src)] < 0) continue;
      e.src = order[static_cast<std::size_t>(e.src)];
      e.dst = order[static_cast<std::size_t>(e.dst)];
      g.edges_.push_back(std::move(e));
    }
    std::sort(g.edges_.begin(), g.edges_.end(), [](const CoreEdge& a, const CoreEdge& b) {
      return std::tie(a.src, a.letter, a.dst) < std::tie(b.src, b.letter, b.dst);
    });
    g.build_adjacency();
    return g;
  }
};

void CoreGraph::build_adjacency() {
  adjacency_.assign(vertex_count_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[static_cast<std::size_t>(edges_[e].src)].push_back({edges_[e].letter + 1, static_cast<int>(e)});
    adjacency_[static_cast<std::size_t>(edges_[e].dst)].push_back({-(edges_[e].letter + 1), static_cast<int>(e)});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return letter_rank(a.first) < letter_rank(b.first);
    });
  }
}

int CoreGraph::edge_at(int v, int signed_letter) const {
  for (auto [l, e] : adjacency_[static_cast<std::size_t>(v)]) {
    if (l == signed_letter) return e;
  }
  return -1;
}

std::optional<int> CoreGraph::step(int v, int signed_letter) const {
  int e = edge_at(v, signed_letter);
  if (e < 0) return std::nullopt;
  const auto& edge = edges_[static_cast<std::size_t>(e)];
  return signed_letter > 0 ? edge.dst : edge.src;
}

CoreGraph CoreGraph::from_generators(std::span<const GroupElem> gens, std::size_t rank) {
  WorkGraph w;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].data().empty()) continue;
    w.add_path(0, 0, gens[j].data(), GenWord{static_cast<int>(j) + 1});
  }
  Folded f = fold(std::move(w), 0);
  int base = f.vertex_map[0];
  trim(f.vertex_count, f.edges, {base});
  return CoreGraphBuilder::canonical(rank, f.vertex_count, std::move(f.edges), base);
}

CoreGraph CoreGraph::intersect(const CoreGraph& a, const CoreGraph& b) {
  std::map<std::pair<int, int>, int> index{{{0, 0}, 0}};
  std::deque<std::pair<int, int>> queue{{0, 0}};
  std::vector<CoreEdge> edges;
  int count = 1;
  auto id_of = [&](std::pair<int, int> p) {
    auto [it, inserted] = index.emplace(p, count);
    if (inserted) {
      ++count;
      queue.push_back(p);
    }
    return it->second;
  };
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    int pid = index.at(p);
    for (auto [signed_letter, ea] : a.adjacency_[static_cast<std::size_t>(p.first)]) {
      auto tb = b.step(p.second, signed_letter);
      if (!tb) continue;
      auto ta = a.step(p.first, signed_letter);
      int qid = id_of({*ta, *tb});
      if (signed_letter > 0) edges.push_back({pid, qid, signed_letter - 1, {}});
      (void)ea;
    }
  }
  trim(count, edges, {0});
  return CoreGraphBuilder::canonical(a.rank_, count, std::move(edges), 0);
}

std::optional<int> CoreGraph::read(const GroupElem& word) const {
  int v = 0;
  for (auto letter : word.data()) {
    auto next = step(v, static_cast<int>(letter));
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

bool CoreGraph::accepts(const GroupElem& word) const {
  auto end = read(word);
  return end && *end == 0;
}

std::optional<GenWord> CoreGraph::express(const GroupElem& word) const {
  int v = 0;
  GenWord label;
  for (auto letter : word.data()) {
    int e = edge_at(v, static_cast<int>(letter));
    if (e < 0) return std::nullopt;
    const auto& edge = edges_[static_cast<std::size_t>(e)];
    if (letter > 0) {
      label.insert(label.end(), edge.label.begin(), edge.label.end());
      v = edge.dst;
    } else {
      auto inv = inverse_word(edge.label);
      label.insert(label.end(), inv.begin(), inv.end());
      v = edge.src;
    }
  }
  if (v != 0) return std::nullopt;
  return reduce_word(std::move(label));
}

std::vector<GroupElem> CoreGraph::basis() const {
  std::vector<std::vector<std::int64_t>> path(vertex_count_);
  std::vector<bool> seen(vertex_count_, false);
  std::vector<bool> tree(edges_.size(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto [signed_letter, e] : adjacency_[static_cast<std::size_t>(v)]) {
      const auto& edge = edges_[static_cast<std::size_t>(e)];
      int w = signed_letter > 0 ? edge.dst : edge.src;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      tree[static_cast<std::size_t>(e)] = true;
      path[static_cast<std::size_t>(w)] = path[static_cast<std::size_t>(v)];
      path[static_cast<std::size_t>(w)].push_back(signed_letter);
      queue.push_back(w);
    }
  }
  std::vector<GroupElem> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (tree[e]) continue;
    const auto& edge = edges_[e];
    GenWord w(path[static_cast<std::size_t>(edge.src)].begin(), path[static_cast<std::size_t>(edge.src)].end());
    w.push_back(edge.letter + 1);
    const auto& back = path[static_cast<std::size_t>(edge.dst)];
    for (auto it = back.rbegin(); it != back.rend(); ++it) w.push_back(static_cast<int>(-*it));
    w = reduce_word(std::move(w));
    out.emplace_back(GroupKind::Free, std::vector<std::int64_t>(w.begin(), w.end()));
  }
  return out;
}

bool CoreGraph::is_folded() const {
  for (const auto& list : adjacency_) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].first == list[i - 1].first) return false;
    }
  }
  return true;
}

bool CoreGraph::is_trim() const {
  for (std::size_t v = 1; v < vertex_count_; ++v) {
    if (adjacency_[v].size() < 2) return false;
  }
  return true;
}

std::string CoreGraph::canonical() const {
  std::ostringstream out;
  out << "V" << vertex_count_;
  for (const auto& e : edges_) out << ";" << e.src << ":" << e.letter << ":" << e.dst;
  return out.str();
}

std::string CoreGraph::to_dot(const std::vector<std::string>& names) const {
  std::ostringstream out;
  out << "digraph core {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    out << "  v" << v << " [shape=" << (v == 0 ? "doublecircle" : "circle") << ",label=\"" << v
        << "\"];\n";
  }
  for (const auto& e : edges_) {
    out << "  v" << e.src << " -> v" << e.dst << " [label=\"" << names[static_cast<std::size_t>(e.letter)]
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::optional<GroupElem> CoreGraph::coset_meet(const CoreGraph& h1, const GroupElem& g1,
                                               const CoreGraph& h2, const GroupElem& g2) {
  // Graph whose paths from the tail vertex to the base spell exactly g H.
  auto coset_graph = [](const CoreGraph& h, const GroupElem& g) {
    WorkGraph w;
    w.vertex_count = static_cast<int>(h.vertex_count_);
    for (const auto& e : h.edges_) w.add_edge(e.src, e.dst, e.letter, {});
    int tail = 0;
    if (!g.data().empty()) {
      tail = w.add_vertex();
      w.add_path(tail, 0, g.data(), {});
    }
    Folded f = fold(std::move(w), 0);
    int base = f.vertex_map[0];
    CoreGraph graph = CoreGraphBuilder::canonical(h.rank_, f.vertex_count, std::move(f.edges), base);
    // Renumbering loses the tail's index; reading g^-1 from the base finds it.
    std::vector<std::int64_t> back(g.data().rbegin(), g.data().rend());
    for (auto& l : back) l = -l;
    auto tail_new = graph.read(GroupElem(GroupKind::Free, back));
    if (!tail_new) throw Error(ErrorKind::InternalInvariantViolation, "coset graph lost its tail");
    return std::make_pair(std::move(graph), *tail_new);
  };
  auto [d1, t1] = coset_graph(h1, g1);
  auto [d2, t2] = coset_graph(h2, g2);

  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, int>> parent;
  std::deque<std::pair<int, int>> queue{{t1, t2}};
  parent[{t1, t2}] = {{-1, -1}, 0};
  std::pair<int, int> goal{0, 0};
  while (!queue.empty() && !parent.contains(goal)) {
    auto p = queue.front();
    queue.pop_front();
    for (auto [signed_letter, e] : d1.adjacency_[static_cast<std::size_t>(p.first)]) {
      (void)e;
      auto b = d2.step(p.second, signed_letter);
      if (!b) continue;
      std::pair<int, int> q{*d1.step(p.first, signed_letter), *b};
      if (parent.contains(q)) continue;
      parent[q] = {p, signed_letter};
      queue.push_back(q);
    }
  }
  if (!parent.contains(goal)) return std::nullopt;
  std::vector<int> word;
  for (auto cur = goal; cur != std::make_pair(t1, t2);) {
    auto [prev, letter] = parent.at(cur);
    word.push_back(letter);
    cur = prev;
  }
  std::reverse(word.begin(), word.end());
  word = reduce_word(std::move(word));
  return GroupElem(GroupKind::Free, std::vector<std::int64_t>(word.begin(), word.end()));
}

}  // namespace howson
