#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cfgtest/grammar_io.hpp"
#include "cfgtest/language.hpp"
#include "cfgtest/linearizer.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace cfgtest;
using cfgtest::support::word;

namespace {

std::vector<std::string> rule_texts(const Grammar& g) {
  std::vector<std::string> out;
  for (const Rule& r : g.rules()) out.push_back(rule_to_text(g, r));
  return out;
}

}  // namespace

TEST(Linearize, DoubledNonterminal) {
  const Grammar g = parse_grammar("S -> S S | a");
  const Linearization lin = linearize(g);
  EXPECT_EQ(rule_texts(lin.linear.grammar),
            (std::vector<std::string>{"S -> S a", "S -> a S", "S -> a"}));
  EXPECT_EQ(*lin.witnesses.at(g.start()), word(g, "a"));
  EXPECT_EQ(lin.linear.origins,
            (std::vector<RuleOrigin>{{0, 0}, {0, 1}, {1, std::nullopt}}));
  // L(Lin) is a subset of L(G), checked up to length 6
  for (const Word& w : enumerate_words(lin.linear.grammar, 6).words) EXPECT_TRUE(contains(g, w));
}

TEST(Linearize, LinearInputIsUnchanged) {
  const Grammar g = parse_grammar("S -> a S b | c");
  const Linearization lin = linearize(g);
  EXPECT_EQ(lin.linear.grammar, g);
}

TEST(Linearize, TwoDifferentNonterminals) {
  const Grammar g = parse_grammar("S -> A B\nA -> a\nB -> b");
  const Linearization lin = linearize(g);
  EXPECT_EQ(rule_texts(lin.linear.grammar),
            (std::vector<std::string>{"S -> A b", "S -> a B", "A -> a", "B -> b"}));
  EXPECT_EQ(*lin.witnesses.at(*g.find_nonterminal("A")), word(g, "a"));
  EXPECT_EQ(*lin.witnesses.at(*g.find_nonterminal("B")), word(g, "b"));
  EXPECT_TRUE(contains(g, word(g, "ab")));
  EXPECT_TRUE(contains(lin.linear.grammar, word(g, "ab")));
}

TEST(Linearize, DropsRulesWithUnproductiveNonterminals) {
  const Grammar g = parse_grammar("S -> a X | b S | c\nX -> X x");
  const Linearization lin = linearize(g);
  EXPECT_EQ(rule_texts(lin.linear.grammar), (std::vector<std::string>{"S -> b S", "S -> c"}));
  EXPECT_FALSE(lin.witnesses.at(*g.find_nonterminal("X")).has_value());
}

TEST(Linearize, UnproductiveStartIsEmptyLanguage) {
  EXPECT_THROW(linearize(parse_grammar("S -> a S")), EmptyLanguageError);
}

TEST(RuleCountBound, Examples) {
  const Grammar a = parse_grammar("S -> S S | a");
  EXPECT_EQ(linearize(a).linear.grammar.rule_count(), 3u);
  EXPECT_TRUE(rule_count_bound_check(a, linearize(a).linear));

  const Grammar b = parse_grammar("S -> a S b | c");
  EXPECT_EQ(linearize(b).linear.grammar.rule_count(), 2u);
  EXPECT_TRUE(rule_count_bound_check(b, linearize(b).linear));

  const Grammar c = parse_grammar("S -> A B\nA -> a\nB -> b");
  EXPECT_EQ(linearize(c).linear.grammar.rule_count(), 4u);
  EXPECT_EQ(grammar_size(c), 7u);
  EXPECT_TRUE(rule_count_bound_check(c, linearize(c).linear));
}

TEST(LinearizeProperties, RandomGrammars) {
  Rng rng(99);
  support::GrammarShape shape;
  shape.nonterminal_weight = 5;
  int nonempty = 0;
  for (int i = 0; i < 200; ++i) {
    const Grammar g = support::random_grammar(rng, shape);
    if (!shortest_words(g)[index_of(g.start())]) {
      EXPECT_THROW(linearize(g), EmptyLanguageError);
      continue;
    }
    ++nonempty;
    const Linearization lin = linearize(g);
    const Grammar& lg = lin.linear.grammar;
    EXPECT_TRUE(is_linear(lg));
    EXPECT_LE(lg.rule_count(), grammar_size(g));
    ASSERT_EQ(lin.linear.origins.size(), lg.rule_count());
    for (std::size_t a = 0; a < g.nonterminal_count(); ++a) {
      const auto& x = lin.witnesses.words[a];
      if (!x) continue;
      const Grammar from_a(g.nonterminal_names(), g.terminal_names(), g.rules(),
                           static_cast<Nonterminal>(a));
      EXPECT_TRUE(contains(from_a, *x));
    }
    const Enumeration e = enumerate_words(lg, 10, 20000);
    for (const Word& w : e.words) EXPECT_TRUE(contains(g, w)) << to_text(g);
  }
  EXPECT_GT(nonempty, 50);
}

TEST(LinearizeProperties, ProductiveLinearGrammarsKeepTheirRules) {
  Rng rng(1234);
  support::GrammarShape shape;
  shape.linear = true;
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const Grammar g = support::random_grammar(rng, shape);
    const auto productive = productive_mask(g);
    if (!std::all_of(productive.begin(), productive.end(), [](bool b) { return b; })) continue;
    EXPECT_EQ(linearize(g).linear.grammar.rules(), g.rules());
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(LinearizationText, ParsesBackWithProvenanceComments) {
  const Grammar g = parse_grammar("S -> S S | a");
  const Linearization lin = linearize(g);
  const std::string text = linearization_to_text(g, lin);
  EXPECT_NE(text.find("# x_S = a"), std::string::npos);
  EXPECT_NE(text.find("S -> S a  # from rule 0, kept S"), std::string::npos);
  EXPECT_NE(text.find("S -> a  # from rule 1"), std::string::npos);
  EXPECT_EQ(parse_grammar(text).rules(), lin.linear.grammar.rules());
}
