#ifndef CFGTEST_PATH_GRAPH_HPP
#define CFGTEST_PATH_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "cfgtest/grammar.hpp"

/// \file
/// The rule graph of a linear grammar.  Vertices are the nonterminals plus a
/// sink; every rule A -> u B v is an edge A -> B and every rule A -> u is an
/// edge A -> sink.  Accepting paths (start to sink) spell the words of the
/// grammar as west(P) . east(P).
namespace cfgtest {

using Vertex = std::size_t;

struct Edge {
  Vertex source = 0;
  RuleIndex rule = 0;
  Vertex target = 0;

  bool operator==(const Edge&) const = default;
};

/// Terminal context of a linear rule around its nonterminal.
struct WestEast {
  Word west;
  Word east;

  bool operator==(const WestEast&) const = default;
};

/// (u, v) for A -> u B v, and (u, eps) for A -> u.  Throws NotLinearError.
inline WestEast west_east(const Rule& r) {
  WestEast out;
  bool seen_nonterminal = false;
  for (Symbol s : r.rhs) {
    if (s.is_nonterminal()) {
      if (seen_nonterminal)
        throw NotLinearError("rule " + std::to_string(r.index) + " has several nonterminals");
      seen_nonterminal = true;
    } else {
      (seen_nonterminal ? out.east : out.west).push_back(s.terminal());
    }
  }
  return out;
}

/// A sequence of edges (identified by their rules) from `from` to `to`.  The
/// empty path at v has from == to == v.
struct Path {
  Vertex from = 0;
  Vertex to = 0;
  std::vector<RuleIndex> rules;

  std::size_t size() const noexcept { return rules.size(); }
  bool operator==(const Path&) const = default;
};

/// Shorter first; equal lengths lexicographically by rule index.
inline std::strong_ordering path_compare(const std::vector<RuleIndex>& a,
                                         const std::vector<RuleIndex>& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

inline std::strong_ordering path_compare(const Path& a, const Path& b) {
  return path_compare(a.rules, b.rules);
}

class NotAcceptingError : public GrammarError {
 public:
  using GrammarError::GrammarError;
};

class PathGraph {
 public:
  /// Throws NotLinearError if some rule has two or more nonterminals.
  explicit PathGraph(const Grammar& g)
      : sink_(g.nonterminal_count()), start_(index_of(g.start())), out_(g.nonterminal_count() + 1) {
    edges_.reserve(g.rule_count());
    context_.reserve(g.rule_count());
    for (const Rule& r : g.rules()) {
      context_.push_back(west_east(r));
      Vertex target = sink_;
      for (Symbol s : r.rhs)
        if (s.is_nonterminal()) target = s.id();
      edges_.push_back({index_of(r.lhs), r.index, target});
      out_[index_of(r.lhs)].push_back(r.index);
    }
  }

  std::size_t vertex_count() const noexcept { return sink_ + 1; }
  Vertex sink() const noexcept { return sink_; }
  Vertex start() const noexcept { return start_; }

  /// Indexed by rule.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(RuleIndex r) const { return edges_.at(r); }
  /// Outgoing edges of v, ascending by rule index.
  const std::vector<RuleIndex>& out_edges(Vertex v) const { return out_.at(v); }

  const Word& west(RuleIndex r) const { return context_.at(r).west; }
  const Word& east(RuleIndex r) const { return context_.at(r).east; }

  /// Whether the rules chain from p.from to p.to.
  bool is_path(const Path& p) const {
    Vertex at = p.from;
    for (RuleIndex r : p.rules) {
      if (r >= edges_.size() || edges_[r].source != at) return false;
      at = edges_[r].target;
    }
    return at == p.to;
  }

  bool is_accepting(const Path& p) const {
    return p.from == start_ && p.to == sink_ && is_path(p);
  }

  Word west(const Path& p) const {
    Word w;
    for (RuleIndex r : p.rules) w.insert(w.end(), west(r).begin(), west(r).end());
    return w;
  }

  /// east(r_n) ... east(r_1).
  Word east(const Path& p) const {
    Word w;
    for (auto it = p.rules.rbegin(); it != p.rules.rend(); ++it)
      w.insert(w.end(), east(*it).begin(), east(*it).end());
    return w;
  }

  /// west(P) . east(P).  Throws NotAcceptingError unless p runs from the start
  /// symbol to the sink.
  Word word_of_path(const Path& p) const {
    if (!is_accepting(p)) throw NotAcceptingError("path is not an accepting path");
    Word w = west(p);
    Word e = east(p);
    w.insert(w.end(), e.begin(), e.end());
    return w;
  }

 private:
  Vertex sink_;
  Vertex start_;
  std::vector<Edge> edges_;
  std::vector<WestEast> context_;
  std::vector<std::vector<RuleIndex>> out_;
};

inline PathGraph build_graph(const Grammar& g) { return PathGraph(g); }

/// The optimal (shortest, then lexicographically least) path for every
/// ordered vertex pair, or nothing when the pair is disconnected.
class OptimalPathTable {
 public:
  /// One breadth-first search per source.  Vertices are dequeued in the
  /// order of their optimal paths and their out-edges are scanned by rule
  /// index, so the first edge that discovers a vertex ends its optimal path.
  /// Work is O(|V| * (|V| + |R|)) plus the size of the stored paths.
  explicit OptimalPathTable(const PathGraph& graph) : vertices_(graph.vertex_count()) {
    paths_.resize(vertices_ * vertices_);
    std::vector<std::optional<RuleIndex>> via(vertices_);
    std::vector<bool> reached(vertices_);
    for (Vertex source = 0; source < vertices_; ++source) {
      std::fill(via.begin(), via.end(), std::nullopt);
      std::fill(reached.begin(), reached.end(), false);
      std::deque<Vertex> queue{source};
      reached[source] = true;
      slot(source, source) = std::vector<RuleIndex>{};
      while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        for (RuleIndex r : graph.out_edges(u)) {
          const Vertex v = graph.edge(r).target;
          if (reached[v]) continue;
          reached[v] = true;
          std::vector<RuleIndex> p = *slot(source, u);
          p.push_back(r);
          slot(source, v) = std::move(p);
          queue.push_back(v);
        }
      }
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_; }

  /// nullptr when no path exists.
  const std::vector<RuleIndex>* find(Vertex from, Vertex to) const {
    const auto& p = paths_.at(from * vertices_ + to);
    return p ? &*p : nullptr;
  }

  std::optional<Path> path(Vertex from, Vertex to) const {
    const auto* rules = find(from, to);
    if (!rules) return std::nullopt;
    return Path{from, to, *rules};
  }

  bool is_optimal(const Path& p) const {
    const auto* best = find(p.from, p.to);
    return best != nullptr && *best == p.rules;
  }

 private:
  std::optional<std::vector<RuleIndex>>& slot(Vertex from, Vertex to) {
    return paths_[from * vertices_ + to];
  }

  std::size_t vertices_;
  std::vector<std::optional<std::vector<RuleIndex>>> paths_;
};

inline OptimalPathTable all_pairs_optimal(const PathGraph& graph) { return OptimalPathTable(graph); }

/// Whether p equals the table entry for its endpoints.
inline bool is_optimal(const Path& p, const OptimalPathTable& table) { return table.is_optimal(p); }

}  // namespace cfgtest

#endif  // CFGTEST_PATH_GRAPH_HPP
