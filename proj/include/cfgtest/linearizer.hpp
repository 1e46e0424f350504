#ifndef CFGTEST_LINEARIZER_HPP
#define CFGTEST_LINEARIZER_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfgtest/grammar.hpp"
#include "cfgtest/grammar_io.hpp"

namespace cfgtest {

/// Where a rule of the linear grammar came from.
struct RuleOrigin {
  RuleIndex source_rule = 0;
  /// Position in the source rule's rhs of the nonterminal that was kept;
  /// empty for rules copied verbatim (no nonterminal on the rhs).
  std::optional<std::size_t> kept_position;

  bool operator==(const RuleOrigin&) const = default;
};

struct LinearGrammar {
  Grammar grammar;
  std::vector<RuleOrigin> origins;  // parallel to grammar.rules()
};

/// The chosen word x_A of every productive nonterminal.
struct WitnessTable {
  std::vector<std::optional<Word>> words;  // indexed by nonterminal

  const std::optional<Word>& at(Nonterminal a) const { return words.at(index_of(a)); }
};

struct Linearization {
  LinearGrammar linear;
  WitnessTable witnesses;
};

/// Builds Lin(G): every rule A -> x0 A1 x1 ... An xn with n >= 1 becomes n
/// rules, the i-th keeping Ai and replacing every other Aj by x_Aj.  Rules
/// without nonterminals are copied, rules that mention an unproductive
/// nonterminal are dropped.  Output order is source-rule-major, kept
/// position minor.  x_A is the shortlex-least word of A.
///
/// Throws EmptyLanguageError when the start symbol is unproductive.
inline Linearization linearize(const Grammar& g) {
  WitnessTable witnesses{shortest_words(g)};
  if (!witnesses.at(g.start()))
    throw EmptyLanguageError("start symbol '" + g.name(g.start()) + "' is unproductive");

  std::vector<Rule> rules;
  std::vector<RuleOrigin> origins;
  auto emit = [&](Nonterminal lhs, std::vector<Symbol> rhs, RuleOrigin origin) {
    rules.push_back(Rule{rules.size(), lhs, std::move(rhs)});
    origins.push_back(origin);
  };

  for (const Rule& r : g.rules()) {
    bool grounded = std::all_of(r.rhs.begin(), r.rhs.end(), [&](Symbol s) {
      return s.is_terminal() || witnesses.words[s.id()].has_value();
    });
    if (!grounded) continue;

    if (nonterminal_occurrences(r) == 0) {
      emit(r.lhs, r.rhs, {r.index, std::nullopt});
      continue;
    }
    for (std::size_t kept = 0; kept < r.rhs.size(); ++kept) {
      if (!r.rhs[kept].is_nonterminal()) continue;
      std::vector<Symbol> rhs;
      for (std::size_t p = 0; p < r.rhs.size(); ++p) {
        const Symbol s = r.rhs[p];
        if (s.is_terminal() || p == kept) {
          rhs.push_back(s);
        } else {
          for (Terminal t : *witnesses.words[s.id()]) rhs.push_back(Symbol::of(t));
        }
      }
      emit(r.lhs, std::move(rhs), {r.index, kept});
    }
  }

  Grammar lin(g.nonterminal_names(), g.terminal_names(), std::move(rules), g.start());
  return {{std::move(lin), std::move(origins)}, std::move(witnesses)};
}

/// |rules(Lin(G))| <= |G|.
inline bool rule_count_bound_check(const Grammar& g, const LinearGrammar& lin) {
  return lin.grammar.rule_count() <= grammar_size(g);
}

/// Grammar text of Lin(G) with the witness table and per-rule provenance as
/// comments; the output parses back into the same rule list.
inline std::string linearization_to_text(const Grammar& source, const Linearization& lin) {
  const Grammar& g = lin.linear.grammar;
  std::string out;
  for (std::size_t a = 0; a < g.nonterminal_count(); ++a) {
    const auto& w = lin.witnesses.words[a];
    if (w) out += "# x_" + g.nonterminal_names()[a] + " = " + format_word(g, *w) + "\n";
  }
  out += "start: " + g.name(g.start()) + "\n";
  for (const Rule& r : g.rules()) {
    const RuleOrigin& o = lin.linear.origins[r.index];
    out += rule_to_text(g, r) + "  # from rule " + std::to_string(o.source_rule);
    if (o.kept_position) {
      out += ", kept " + source.name(source.rule(o.source_rule).rhs[*o.kept_position]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace cfgtest

#endif  // CFGTEST_LINEARIZER_HPP
