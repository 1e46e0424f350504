#ifndef CFGTEST_GRAMMAR_HPP
#define CFGTEST_GRAMMAR_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/// \file
/// Context-free grammar model G = (N, Sigma, R, S).
///
/// Symbols are interned: a grammar owns a nonterminal name table and a
/// terminal name table and refers to symbols by index.  Terminal indices are
/// always assigned in bytewise name order, so comparing two words as index
/// sequences is the same as comparing them as sequences of terminal names.
/// Grammars derived from one another (e.g. a linearization) share the tables
/// of their origin, which keeps their words directly comparable.
namespace cfgtest {

enum class Terminal : std::uint32_t {};
enum class Nonterminal : std::uint32_t {};

using RuleIndex = std::size_t;

constexpr std::size_t index_of(Terminal t) noexcept { return static_cast<std::size_t>(t); }
constexpr std::size_t index_of(Nonterminal n) noexcept { return static_cast<std::size_t>(n); }

/// A word over the terminals of a grammar.
using Word = std::vector<Terminal>;

/// Shortlex order: shorter words first, equal lengths lexicographically.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The start symbol (or a requested nonterminal) derives no terminal word.
class EmptyLanguageError : public GrammarError {
 public:
  using GrammarError::GrammarError;
};

class NotLinearError : public GrammarError {
 public:
  using GrammarError::GrammarError;
};

enum class SymbolKind : std::uint8_t { terminal, nonterminal };

class Symbol {
 public:
  static constexpr Symbol of(Terminal t) noexcept { return Symbol(SymbolKind::terminal, index_of(t)); }
  static constexpr Symbol of(Nonterminal n) noexcept { return Symbol(SymbolKind::nonterminal, index_of(n)); }

  constexpr SymbolKind kind() const noexcept { return kind_; }
  constexpr bool is_terminal() const noexcept { return kind_ == SymbolKind::terminal; }
  constexpr bool is_nonterminal() const noexcept { return kind_ == SymbolKind::nonterminal; }
  constexpr Terminal terminal() const noexcept { return static_cast<Terminal>(id_); }
  constexpr Nonterminal nonterminal() const noexcept { return static_cast<Nonterminal>(id_); }
  constexpr std::uint32_t id() const noexcept { return id_; }

  constexpr auto operator<=>(const Symbol&) const = default;

 private:
  constexpr Symbol(SymbolKind kind, std::size_t id) noexcept
      : kind_(kind), id_(static_cast<std::uint32_t>(id)) {}

  SymbolKind kind_;
  std::uint32_t id_;
};

struct Rule {
  RuleIndex index = 0;
  Nonterminal lhs{};
  std::vector<Symbol> rhs;

  bool operator==(const Rule&) const = default;
};

namespace detail {

inline bool valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

}  // namespace detail

class Grammar {
 public:
  /// Terminal names must be strictly increasing (bytewise); rule indices must
  /// equal their position.  Throws GrammarError otherwise.
  Grammar(std::vector<std::string> nonterminals, std::vector<std::string> terminals,
          std::vector<Rule> rules, Nonterminal start)
      : nonterminals_(std::move(nonterminals)),
        terminals_(std::move(terminals)),
        rules_(std::move(rules)),
        start_(start) {
    validate();
  }

  const std::vector<std::string>& nonterminal_names() const noexcept { return nonterminals_; }
  const std::vector<std::string>& terminal_names() const noexcept { return terminals_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const Rule& rule(RuleIndex i) const { return rules_.at(i); }
  Nonterminal start() const noexcept { return start_; }

  std::size_t nonterminal_count() const noexcept { return nonterminals_.size(); }
  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  std::size_t rule_count() const noexcept { return rules_.size(); }

  const std::string& name(Nonterminal n) const { return nonterminals_.at(index_of(n)); }
  const std::string& name(Terminal t) const { return terminals_.at(index_of(t)); }
  const std::string& name(Symbol s) const {
    return s.is_terminal() ? name(s.terminal()) : name(s.nonterminal());
  }

  std::optional<Nonterminal> find_nonterminal(std::string_view name) const {
    auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
    if (it == nonterminals_.end()) return std::nullopt;
    return static_cast<Nonterminal>(it - nonterminals_.begin());
  }

  std::optional<Terminal> find_terminal(std::string_view name) const {
    auto it = std::lower_bound(terminals_.begin(), terminals_.end(), name);
    if (it == terminals_.end() || *it != name) return std::nullopt;
    return static_cast<Terminal>(it - terminals_.begin());
  }

  /// Translates a sequence of terminal names into a word; throws GrammarError
  /// on unknown names.
  Word word(const std::vector<std::string>& names) const {
    Word w;
    w.reserve(names.size());
    for (const auto& n : names) {
      auto t = find_terminal(n);
      if (!t) throw GrammarError("unknown terminal '" + n + "'");
      w.push_back(*t);
    }
    return w;
  }

  bool operator==(const Grammar&) const = default;

 private:
  void validate() const {
    std::set<std::string_view> seen;
    for (const auto& n : nonterminals_) {
      if (!detail::valid_symbol_name(n)) throw GrammarError("invalid nonterminal name '" + n + "'");
      if (!seen.insert(n).second) throw GrammarError("duplicate nonterminal '" + n + "'");
    }
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
      const auto& t = terminals_[i];
      if (!detail::valid_symbol_name(t)) throw GrammarError("invalid terminal name '" + t + "'");
      if (i > 0 && !(terminals_[i - 1] < t))
        throw GrammarError("terminal names must be unique and sorted");
      if (seen.count(t) != 0)
        throw GrammarError("'" + t + "' is used both as terminal and nonterminal");
    }
    if (index_of(start_) >= nonterminals_.size()) throw GrammarError("start symbol out of range");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const Rule& r = rules_[i];
      if (r.index != i) throw GrammarError("rule indices must be contiguous and in order");
      if (index_of(r.lhs) >= nonterminals_.size()) throw GrammarError("rule lhs out of range");
      for (const Symbol& s : r.rhs) {
        std::size_t bound = s.is_terminal() ? terminals_.size() : nonterminals_.size();
        if (s.id() >= bound) throw GrammarError("rule symbol out of range");
      }
    }
  }

  std::vector<std::string> nonterminals_;
  std::vector<std::string> terminals_;
  std::vector<Rule> rules_;
  Nonterminal start_;
};

/// Name-based grammar construction.  Nonterminals are numbered in order of
/// first appearance; terminals are renumbered by name at build time.
class GrammarBuilder {
 public:
  struct Ref {
    SymbolKind kind;
    std::string name;
  };

  static Ref t(std::string name) { return {SymbolKind::terminal, std::move(name)}; }
  static Ref nt(std::string name) { return {SymbolKind::nonterminal, std::move(name)}; }

  GrammarBuilder& add_rule(const std::string& lhs, const std::vector<Ref>& rhs) {
    PendingRule rule{intern_nonterminal(lhs), {}};
    for (const Ref& ref : rhs) {
      if (ref.kind == SymbolKind::nonterminal) {
        rule.rhs.push_back({SymbolKind::nonterminal, intern_nonterminal(ref.name)});
      } else {
        rule.rhs.push_back({SymbolKind::terminal, intern_terminal(ref.name)});
      }
    }
    pending_.push_back(std::move(rule));
    return *this;
  }

  GrammarBuilder& set_start(std::string name) {
    start_ = std::move(name);
    return *this;
  }

  /// Throws GrammarError when a name is both terminal and nonterminal, when
  /// there are no rules, or when the start symbol never occurs in a rule.
  Grammar build() const {
    if (pending_.empty()) throw GrammarError("grammar has no rules");
    for (const auto& t : terminal_order_) {
      if (nonterminal_ids_.count(t) != 0)
        throw GrammarError("'" + t + "' is used both as terminal and nonterminal");
    }
    std::vector<std::string> terminals = terminal_order_;
    std::sort(terminals.begin(), terminals.end());
    std::vector<std::uint32_t> remap(terminal_order_.size());
    for (std::size_t i = 0; i < terminal_order_.size(); ++i) {
      auto pos = std::lower_bound(terminals.begin(), terminals.end(), terminal_order_[i]);
      remap[i] = static_cast<std::uint32_t>(pos - terminals.begin());
    }

    std::vector<Rule> rules;
    rules.reserve(pending_.size());
    for (const auto& p : pending_) {
      Rule r{rules.size(), static_cast<Nonterminal>(p.lhs), {}};
      for (const auto& [kind, id] : p.rhs) {
        r.rhs.push_back(kind == SymbolKind::terminal ? Symbol::of(static_cast<Terminal>(remap[id]))
                                                     : Symbol::of(static_cast<Nonterminal>(id)));
      }
      rules.push_back(std::move(r));
    }

    Nonterminal start = static_cast<Nonterminal>(pending_.front().lhs);
    if (start_) {
      auto it = nonterminal_ids_.find(*start_);
      if (it == nonterminal_ids_.end())
        throw GrammarError("start symbol '" + *start_ + "' does not occur in any rule");
      start = static_cast<Nonterminal>(it->second);
    }
    return Grammar(nonterminal_order_, std::move(terminals), std::move(rules), start);
  }

 private:
  struct PendingRule {
    std::uint32_t lhs;
    std::vector<std::pair<SymbolKind, std::uint32_t>> rhs;
  };

  std::uint32_t intern_nonterminal(const std::string& name) {
    auto [it, inserted] =
        nonterminal_ids_.emplace(name, static_cast<std::uint32_t>(nonterminal_order_.size()));
    if (inserted) nonterminal_order_.push_back(name);
    return it->second;
  }

  std::uint32_t intern_terminal(const std::string& name) {
    auto [it, inserted] =
        terminal_ids_.emplace(name, static_cast<std::uint32_t>(terminal_order_.size()));
    if (inserted) terminal_order_.push_back(name);
    return it->second;
  }

  std::map<std::string, std::uint32_t> nonterminal_ids_;
  std::vector<std::string> nonterminal_order_;
  std::map<std::string, std::uint32_t> terminal_ids_;
  std::vector<std::string> terminal_order_;
  std::vector<PendingRule> pending_;
  std::optional<std::string> start_;
};

/// |G|: the sum over all rules of |rhs| + 1.
inline std::size_t grammar_size(const Grammar& g) {
  std::size_t size = 0;
  for (const Rule& r : g.rules()) size += r.rhs.size() + 1;
  return size;
}

inline std::size_t nonterminal_occurrences(const Rule& r) {
  return static_cast<std::size_t>(
      std::count_if(r.rhs.begin(), r.rhs.end(), [](Symbol s) { return s.is_nonterminal(); }));
}

inline bool is_linear(const Grammar& g) {
  return std::all_of(g.rules().begin(), g.rules().end(),
                     [](const Rule& r) { return nonterminal_occurrences(r) <= 1; });
}

/// Least fixpoint of "some rule for A has only productive nonterminals".
/// Indexed by nonterminal.
inline std::vector<bool> productive_mask(const Grammar& g) {
  std::vector<bool> productive(g.nonterminal_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (productive[index_of(r.lhs)]) continue;
      bool grounded = std::all_of(r.rhs.begin(), r.rhs.end(), [&](Symbol s) {
        return s.is_terminal() || productive[index_of(s.nonterminal())];
      });
      if (grounded) {
        productive[index_of(r.lhs)] = true;
        changed = true;
      }
    }
  }
  return productive;
}

inline std::set<Nonterminal> productive_nonterminals(const Grammar& g) {
  std::set<Nonterminal> out;
  auto mask = productive_mask(g);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.insert(static_cast<Nonterminal>(i));
  return out;
}

/// Shortlex-minimal word of every nonterminal (nullopt when unproductive).
///
/// Concatenation is monotone and never decreases a word in shortlex order, so
/// a Dijkstra-style pass that settles one nonterminal at a time is exact.
inline std::vector<std::optional<Word>> shortest_words(const Grammar& g) {
  const std::size_t n = g.nonterminal_count();
  std::vector<std::optional<Word>> best(n);
  std::vector<bool> settled(n, false);
  const ShortLex less;

  for (std::size_t round = 0; round < n; ++round) {
    std::optional<Word> pick;
    std::size_t pick_nt = n;
    for (const Rule& r : g.rules()) {
      const std::size_t lhs = index_of(r.lhs);
      if (settled[lhs]) continue;
      bool ready = std::all_of(r.rhs.begin(), r.rhs.end(), [&](Symbol s) {
        return s.is_terminal() || settled[index_of(s.nonterminal())];
      });
      if (!ready) continue;
      Word w;
      for (Symbol s : r.rhs) {
        if (s.is_terminal()) {
          w.push_back(s.terminal());
        } else {
          const Word& sub = *best[index_of(s.nonterminal())];
          w.insert(w.end(), sub.begin(), sub.end());
        }
      }
      if (!pick || less(w, *pick) || (!less(*pick, w) && lhs < pick_nt)) {
        pick = std::move(w);
        pick_nt = lhs;
      }
    }
    if (!pick) break;
    settled[pick_nt] = true;
    best[pick_nt] = std::move(pick);
  }
  return best;
}

/// Throws EmptyLanguageError when `a` is unproductive.
inline Word shortest_word(const Grammar& g, Nonterminal a) {
  auto all = shortest_words(g);
  auto& w = all.at(index_of(a));
  if (!w) throw EmptyLanguageError("nonterminal '" + g.name(a) + "' is unproductive");
  return std::move(*w);
}

/// Nonterminals reachable from the start symbol.
inline std::vector<bool> reachable_mask(const Grammar& g) {
  std::vector<bool> reached(g.nonterminal_count(), false);
  std::vector<Nonterminal> stack{g.start()};
  reached[index_of(g.start())] = true;
  while (!stack.empty()) {
    Nonterminal a = stack.back();
    stack.pop_back();
    for (const Rule& r : g.rules()) {
      if (r.lhs != a) continue;
      for (Symbol s : r.rhs) {
        if (s.is_nonterminal() && !reached[s.id()]) {
          reached[s.id()] = true;
          stack.push_back(s.nonterminal());
        }
      }
    }
  }
  return reached;
}

}  // namespace cfgtest

#endif  // CFGTEST_GRAMMAR_HPP
