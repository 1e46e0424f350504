#ifndef CFGTEST_LANGUAGE_HPP
#define CFGTEST_LANGUAGE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_set>
#include <vector>

#include "cfgtest/grammar.hpp"

// Two independent views of L(G): a bounded bottom-up enumeration by word
// length, and an Earley recognizer.  They are used to cross-check each other
// and everything built on top of the grammar.
namespace cfgtest {

constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

struct Enumeration {
  std::vector<Word> words;  // shortlex order
  bool truncated = false;
};

namespace detail {

inline std::vector<bool> nullable_mask(const Grammar& g) {
  std::vector<bool> nullable(g.nonterminal_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (nullable[index_of(r.lhs)]) continue;
      bool all = std::all_of(r.rhs.begin(), r.rhs.end(),
                             [&](Symbol s) { return s.is_nonterminal() && nullable[s.id()]; });
      if (all) {
        nullable[index_of(r.lhs)] = true;
        changed = true;
      }
    }
  }
  return nullable;
}

using WordSet = std::set<Word>;

}  // namespace detail

/// Words of L(G) of length at most `max_len`, in shortlex order.
///
/// Sets W(A, m) of words of length exactly m derived from A are computed for
/// m = 0, 1, ... ; within one length the only cyclic dependencies go through
/// empty or unit derivations, so a per-length fixpoint terminates.  Lengths
/// that cannot be reached given the minimum yields of the remaining symbols
/// are pruned.  When more than `max_count` words exist the first `max_count`
/// are returned and `truncated` is set.  The enumeration also stops early
/// (with `truncated` set) once intermediate sets grow far beyond `max_count`.
inline Enumeration enumerate_words(const Grammar& g, std::size_t max_len,
                                   std::size_t max_count = unlimited) {
  using detail::WordSet;
  Enumeration result;
  const std::size_t nts = g.nonterminal_count();
  const auto reachable = reachable_mask(g);
  const auto shortest = shortest_words(g);
  constexpr std::size_t infinite = std::numeric_limits<std::size_t>::max();

  auto min_yield = [&](Symbol s) -> std::size_t {
    if (s.is_terminal()) return 1;
    const auto& w = shortest[s.id()];
    return w ? w->size() : infinite;
  };

  // Only reachable rules whose every symbol is productive can contribute.
  std::vector<const Rule*> rules;
  std::vector<std::vector<std::size_t>> suffix_min;  // per rule, min yield of rhs[j..]
  for (const Rule& r : g.rules()) {
    if (!reachable[index_of(r.lhs)]) continue;
    std::vector<std::size_t> mins(r.rhs.size() + 1, 0);
    bool ok = true;
    for (std::size_t j = r.rhs.size(); j-- > 0;) {
      std::size_t y = min_yield(r.rhs[j]);
      if (y == infinite) {
        ok = false;
        break;
      }
      mins[j] = mins[j + 1] + y;
    }
    if (!ok) continue;
    rules.push_back(&r);
    suffix_min.push_back(std::move(mins));
  }

  // words[A][m]; suffix[i][j][b] = words of length b derived from rhs[j..] of rules[i]
  std::vector<std::vector<WordSet>> words(nts, std::vector<WordSet>(max_len + 1));
  std::vector<std::vector<std::vector<WordSet>>> suffix(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i)
    suffix[i].assign(rules[i]->rhs.size() + 1, std::vector<WordSet>(max_len + 1));
  for (auto& suf : suffix) suf.back()[0].insert(Word{});

  const std::size_t work_limit =
      max_count == unlimited ? unlimited : std::max<std::size_t>(65536, max_count) * 32;
  std::size_t stored = 0;
  std::size_t accepted = 0;
  const std::size_t start = index_of(g.start());

  for (std::size_t m = 0; m <= max_len; ++m) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        const Rule& r = *rules[i];
        const auto& mins = suffix_min[i];
        const std::size_t k = r.rhs.size();
        auto& suf = suffix[i];
        for (std::size_t j = k; j-- > 0;) {
          WordSet next;
          if (mins[j] <= m) {
            const Symbol s = r.rhs[j];
            for (std::size_t a = min_yield(s); a + mins[j + 1] <= m; ++a) {
              const std::size_t b = m - a;
              if (suf[j + 1][b].empty()) continue;
              if (s.is_terminal()) {
                if (a != 1) break;
                for (const Word& tail : suf[j + 1][b]) {
                  Word w;
                  w.reserve(m);
                  w.push_back(s.terminal());
                  w.insert(w.end(), tail.begin(), tail.end());
                  next.insert(std::move(w));
                }
              } else {
                for (const Word& head : words[s.id()][a]) {
                  for (const Word& tail : suf[j + 1][b]) {
                    Word w;
                    w.reserve(m);
                    w.insert(w.end(), head.begin(), head.end());
                    w.insert(w.end(), tail.begin(), tail.end());
                    next.insert(std::move(w));
                  }
                }
              }
            }
          }
          suf[j][m] = std::move(next);
        }
        if (mins[0] > m) continue;
        auto& target = words[index_of(r.lhs)][m];
        const std::size_t before = target.size();
        target.insert(suf[0][m].begin(), suf[0][m].end());
        if (target.size() != before) changed = true;
      }
    }

    for (std::size_t a = 0; a < nts; ++a) stored += words[a][m].size();
    accepted += words[start][m].size();
    if (accepted > max_count) break;
    if (stored > work_limit && m < max_len) {
      result.truncated = true;
      break;
    }
  }

  for (std::size_t m = 0; m <= max_len && result.words.size() < max_count; ++m) {
    for (const Word& w : words[start][m]) {
      if (result.words.size() == max_count) {
        result.truncated = true;
        break;
      }
      result.words.push_back(w);
    }
  }
  return result;
}

/// Earley recognition with the nullable-prediction fix, so empty rules and
/// unit cycles are handled without special cases.
inline bool contains(const Grammar& g, const Word& w) {
  for (Terminal t : w)
    if (index_of(t) >= g.terminal_count()) return false;

  const auto nullable = detail::nullable_mask(g);
  std::vector<std::vector<RuleIndex>> by_lhs(g.nonterminal_count());
  std::size_t max_rhs = 0;
  for (const Rule& r : g.rules()) {
    by_lhs[index_of(r.lhs)].push_back(r.index);
    max_rhs = std::max(max_rhs, r.rhs.size());
  }

  struct Item {
    RuleIndex rule;
    std::size_t dot;
    std::size_t origin;
  };
  const std::size_t n = w.size();
  auto key = [&](const Item& it) -> std::uint64_t {
    return (static_cast<std::uint64_t>(it.rule) * (max_rhs + 1) + it.dot) * (n + 1) + it.origin;
  };

  std::vector<std::vector<Item>> chart(n + 1);
  std::vector<std::unordered_set<std::uint64_t>> seen(n + 1);
  auto add = [&](std::size_t pos, Item it) {
    if (seen[pos].insert(key(it)).second) chart[pos].push_back(it);
  };

  for (RuleIndex r : by_lhs[index_of(g.start())]) add(0, {r, 0, 0});

  for (std::size_t pos = 0; pos <= n; ++pos) {
    for (std::size_t idx = 0; idx < chart[pos].size(); ++idx) {
      const Item it = chart[pos][idx];
      const Rule& rule = g.rule(it.rule);
      if (it.dot == rule.rhs.size()) {
        for (std::size_t p = 0; p < chart[it.origin].size(); ++p) {
          const Item parent = chart[it.origin][p];
          const Rule& pr = g.rule(parent.rule);
          if (parent.dot < pr.rhs.size() && pr.rhs[parent.dot] == Symbol::of(rule.lhs))
            add(pos, {parent.rule, parent.dot + 1, parent.origin});
        }
        continue;
      }
      const Symbol next = rule.rhs[it.dot];
      if (next.is_terminal()) {
        if (pos < n && w[pos] == next.terminal()) add(pos + 1, {it.rule, it.dot + 1, it.origin});
      } else {
        for (RuleIndex r : by_lhs[next.id()]) add(pos, {r, 0, pos});
        if (nullable[next.id()]) add(pos, {it.rule, it.dot + 1, it.origin});
      }
    }
  }

  return std::any_of(chart[n].begin(), chart[n].end(), [&](const Item& it) {
    const Rule& r = g.rule(it.rule);
    return it.origin == 0 && r.lhs == g.start() && it.dot == r.rhs.size();
  });
}

}  // namespace cfgtest

#endif  // CFGTEST_LANGUAGE_HPP
