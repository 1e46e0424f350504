#ifndef CFGTEST_TESTSET_HPP
#define CFGTEST_TESTSET_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cfgtest/grammar.hpp"
#include "cfgtest/linearizer.hpp"
#include "cfgtest/path_graph.hpp"

namespace cfgtest {

/// The edge choice and stitched accepting path that first produced a word.
struct Provenance {
  std::vector<RuleIndex> edges;
  std::vector<RuleIndex> path;

  bool operator==(const Provenance&) const = default;
};

struct TestSet {
  std::vector<Word> words;               // first-production order
  std::vector<Provenance> provenance;    // parallel to words
  std::size_t k = 0;
  std::size_t rule_count = 0;            // rules of the linear grammar used

  std::size_t max_word_length() const {
    std::size_t m = 0;
    for (const Word& w : words) m = std::max(m, w.size());
    return m;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Terminal t : w) h = (h ^ index_of(t)) * 1099511628211ull;
    return h;
  }
};

/// 1 + r + r^2 + ... + r^k, saturating at the uint64 maximum.
inline std::uint64_t count_bound(std::uint64_t rule_count, std::size_t k) {
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t sum = 0;
  std::uint64_t term = 1;
  for (std::size_t i = 0; i <= k; ++i) {
    if (sum > max - term) return max;
    sum += term;
    if (i == k) break;
    if (rule_count != 0 && term > max / rule_count) return max;
    term *= rule_count;
  }
  return sum;
}

/// 2 r^k for r >= 2; the exact geometric sum below that, where 2 r^k is not
/// an upper bound.
inline std::uint64_t reported_bound(std::uint64_t rule_count, std::size_t k) {
  if (rule_count < 2) return count_bound(rule_count, k);
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t p = 2;
  for (std::size_t i = 0; i < k; ++i) {
    if (p > max / rule_count) return max;
    p *= rule_count;
  }
  return p;
}

namespace detail {

class PhiEnumerator {
 public:
  PhiEnumerator(const PathGraph& graph, const OptimalPathTable& table, bool filter_optimal,
                TestSet& out)
      : graph_(graph), table_(table), filter_(filter_optimal), out_(out) {}

  void run(std::size_t choices) {
    edges_.clear();
    path_.clear();
    extend(graph_.start(), choices);
  }

 private:
  // Stitches P_i e_i for every remaining choice; `at` is the target of the
  // previous chosen edge.
  void extend(Vertex at, std::size_t remaining) {
    if (remaining == 0) {
      const auto* tail = table_.find(at, graph_.sink());
      if (!tail) return;
      const std::size_t mark = path_.size();
      path_.insert(path_.end(), tail->begin(), tail->end());
      emit();
      path_.resize(mark);
      return;
    }
    for (const Edge& e : graph_.edges()) {
      const auto* segment = table_.find(at, e.source);
      if (!segment) continue;
      if (filter_ && segment_then_edge_is_optimal(at, *segment, e)) continue;
      const std::size_t mark = path_.size();
      path_.insert(path_.end(), segment->begin(), segment->end());
      path_.push_back(e.rule);
      edges_.push_back(e.rule);
      extend(e.target, remaining - 1);
      edges_.pop_back();
      path_.resize(mark);
    }
  }

  bool segment_then_edge_is_optimal(Vertex at, const std::vector<RuleIndex>& segment,
                                    const Edge& e) const {
    const auto* best = table_.find(at, e.target);
    return best != nullptr && best->size() == segment.size() + 1 && best->back() == e.rule &&
           std::equal(segment.begin(), segment.end(), best->begin());
  }

  void emit() {
    Word w;
    for (RuleIndex r : path_) w.insert(w.end(), graph_.west(r).begin(), graph_.west(r).end());
    for (auto it = path_.rbegin(); it != path_.rend(); ++it)
      w.insert(w.end(), graph_.east(*it).begin(), graph_.east(*it).end());
    auto [pos, inserted] = index_.try_emplace(std::move(w), out_.words.size());
    if (!inserted) return;
    out_.words.push_back(pos->first);
    out_.provenance.push_back({edges_, path_});
  }

  const PathGraph& graph_;
  const OptimalPathTable& table_;
  bool filter_;
  TestSet& out_;
  std::vector<RuleIndex> edges_;
  std::vector<RuleIndex> path_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
};

}  // namespace detail

/// Phi_k of a linear grammar: for every choice of at most k edges
/// e_1..e_n (n ascending, then lexicographic by rule index) the accepting
/// path P_1 e_1 ... P_n e_n P_{n+1}, where each P_i is the optimal path from
/// the target of e_{i-1} (the start symbol for P_1) to the source of e_i (the
/// sink for P_{n+1}).  Choices with a missing connection are skipped and
/// duplicate words keep their first provenance.
///
/// With `filter_optimal`, choices where P_i e_i is itself optimal are
/// skipped; the resulting word set is the same.
///
/// Throws NotLinearError.
inline TestSet phi_k(const Grammar& linear, std::size_t k, bool filter_optimal = false) {
  const PathGraph graph(linear);
  const OptimalPathTable table(graph);
  TestSet out;
  out.k = k;
  out.rule_count = linear.rule_count();
  detail::PhiEnumerator enumerator(graph, table, filter_optimal, out);
  for (std::size_t n = 0; n <= k; ++n) enumerator.run(n);
  return out;
}

/// Phi_k(Lin(G)).  Empty when L(G) is empty.
inline TestSet test_set(const Grammar& g, std::size_t k = 3, bool filter_optimal = false) {
  std::optional<Linearization> lin;
  try {
    lin.emplace(linearize(g));
  } catch (const EmptyLanguageError&) {
    TestSet empty;
    empty.k = k;
    return empty;
  }
  return phi_k(lin->linear.grammar, k, filter_optimal);
}

}  // namespace cfgtest

#endif  // CFGTEST_TESTSET_HPP
