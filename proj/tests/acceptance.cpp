// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Tolerances are fixed below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cfgtest/cfgtest.hpp"
#include "cli.hpp"
#include "support/oracles.hpp"

using namespace cfgtest;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double size_bound_seconds = 10.0;
constexpr double general_bound_seconds = 30.0;
constexpr double semantics_seconds = 120.0;
constexpr double lemma_seconds = 60.0;
constexpr double scaling_seconds = 5.0;
constexpr double scaling_ratio = 16.0;
constexpr std::size_t lemma_trials = 100000;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

// Words produced in criteria 1 and 2, re-checked by criterion 3.
struct Emitted {
  Grammar grammar;
  std::vector<Word> words;
};
std::vector<Emitted> emitted;

Outcome size_bound_linear() {
  Rng rng(101);
  const auto start = Clock::now();
  std::size_t grammars = 0, bad = 0, largest = 0;
  while (grammars < 120) {
    const std::size_t rules = 2 + uniform_below(rng, 19);
    Grammar g = [&] {
      if (grammars % 2 == 0) {
        const std::size_t nts = 1 + uniform_below(rng, std::min<std::size_t>(rules, 6));
        return support::random_connected_linear(rng, nts, rules, 3);
      }
      support::GrammarShape shape;
      shape.linear = true;
      shape.max_nonterminals = 6;
      shape.min_rules = rules;
      shape.max_rules = rules;
      shape.nonterminal_weight = 6;
      return support::random_grammar(rng, shape);
    }();
    const TestSet ts = phi_k(g, 3);
    const std::uint64_t r = g.rule_count();
    if (ts.words.size() > count_bound(r, 3) || ts.words.size() > 2 * r * r * r) ++bad;
    largest = std::max(largest, ts.words.size());
    emitted.push_back({std::move(g), ts.words});
    ++grammars;
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << grammars << " grammars, " << bad << " over bound, largest set " << largest << ", "
    << t << " s (limit " << size_bound_seconds << " s)";
  return {bad == 0 && t < size_bound_seconds, d.str()};
}

Outcome size_bound_general() {
  Rng rng(202);
  support::GrammarShape shape;
  shape.max_nonterminals = 5;
  shape.max_rules = 10;
  shape.max_rhs = 5;
  shape.nonterminal_weight = 5;
  const auto start = Clock::now();
  std::size_t grammars = 0, nonempty = 0, bad = 0;
  while (grammars < 120) {
    Grammar g = support::random_grammar(rng, shape);
    const std::uint64_t size = grammar_size(g);
    if (size > 30) continue;
    const TestSet ts = test_set(g, 3);
    if (ts.words.size() > 2 * size * size * size) ++bad;
    try {
      if (linearize(g).linear.grammar.rule_count() > size) ++bad;
      ++nonempty;
    } catch (const EmptyLanguageError&) {
    }
    emitted.push_back({std::move(g), ts.words});
    ++grammars;
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << grammars << " grammars (" << nonempty << " non-empty), " << bad << " over bound, " << t
    << " s (limit " << general_bound_seconds << " s)";
  return {bad == 0 && nonempty >= 50 && t < general_bound_seconds, d.str()};
}

Outcome subset_property() {
  std::size_t words = 0, bad = 0;
  for (const Emitted& e : emitted) {
    for (const Word& w : e.words) {
      ++words;
      if (!contains(e.grammar, w)) ++bad;
    }
  }
  std::ostringstream d;
  d << words << " words from " << emitted.size() << " grammars, " << bad << " not in L(G)";
  return {bad == 0 && !emitted.empty(), d.str()};
}

Outcome closed_form() {
  const Grammar g = parse_grammar("S -> 'a' S 'b' | 'c'");
  const std::vector<Word> expected{g.word({"c"}), g.word({"a", "c", "b"}),
                                   g.word({"a", "a", "c", "b", "b"}),
                                   g.word({"a", "a", "a", "c", "b", "b", "b"})};
  const TestSet ts = test_set(g, 3);
  std::string got;
  for (const Word& w : ts.words) got += (got.empty() ? "" : ", ") + format_word(g, w);
  return {ts.words == expected, "{" + got + "}"};
}

Outcome semantics() {
  Rng rng(303);
  support::GrammarShape shape;
  shape.max_nonterminals = 4;
  shape.max_rules = 8;
  shape.max_terminals = 3;
  PropertyCheckOptions opt;
  opt.trials = 1000;
  opt.max_len = 12;
  opt.max_image_len = 3;
  opt.target_alphabet = "01";
  const auto start = Clock::now();
  std::size_t grammars = 0, violations = 0, truncated = 0, informative = 0;
  while (grammars < 50) {
    const Grammar g = support::random_grammar(rng, shape);
    if (!shortest_words(g)[index_of(g.start())]) continue;
    opt.seed = grammars;
    const CheckReport r = check_test_set_property(g, test_set(g, 3).words, opt);
    violations += r.violations.size();
    informative += r.informative;
    if (r.truncated) ++truncated;
    ++grammars;
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << grammars << " grammars x " << opt.trials << " pairs, " << informative
    << " informative, " << violations << " violations, " << truncated
    << " enumerations truncated, " << t << " s (limit " << semantics_seconds << " s)";
  return {violations == 0 && t < semantics_seconds, d.str()};
}

Outcome negative_control() {
  const Grammar g = parse_grammar("S -> 'a' S 'b' | 'c'");
  const std::vector<Word> language = enumerate_words(g, 12).words;
  const Morphism f({"x", "", "z"});  // a -> x, b -> eps, c -> z
  const Morphism h({"", "x", "z"});  // a -> eps, b -> x, c -> z
  const auto witness = refute_test_set(language, {g.word({"c"})}, f, h);
  const bool flagged = witness.has_value();
  return {flagged, flagged ? "flagged, witness " + format_word(g, *witness) : "not flagged"};
}

Outcome lemma() {
  const SigmaFour s;
  LemmaCheckOptions opt;
  opt.trials = lemma_trials;
  const auto start = Clock::now();
  const CheckReport r = check_t4_lemma(opt);
  const double t = seconds_since(start);
  std::ostringstream d;
  d << "|L4| = " << s.language().size() << ", |T4| = " << s.tests().size() << ", "
    << r.trials << " pairs (" << r.near_misses << " near misses, " << r.informative
    << " agreeing on T4), " << r.violations.size() << " violations, " << t << " s (limit "
    << lemma_seconds << " s)";
  const bool sizes = s.language().size() == 16 && s.tests().size() == 15;
  return {sizes && r.passed() && t < lemma_seconds, d.str()};
}

Outcome optimal_paths() {
  Rng rng(404);
  support::GrammarShape shape;
  shape.linear = true;
  shape.max_nonterminals = 5;
  shape.max_rules = 8;
  shape.nonterminal_weight = 6;
  std::size_t pairs = 0, mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const Grammar g = support::random_grammar(rng, shape);
    const PathGraph graph(g);
    const OptimalPathTable table(graph);
    const auto brute = support::brute_optimal(g, g.nonterminal_count());
    for (Vertex a = 0; a < graph.vertex_count(); ++a) {
      for (Vertex b = 0; b < graph.vertex_count(); ++b) {
        ++pairs;
        const auto* got = table.find(a, b);
        const auto it = brute.find({a, b});
        if ((got != nullptr) != (it != brute.end())) {
          ++mismatches;
        } else if (got && path_compare(*got, it->second) != 0) {
          ++mismatches;
        }
      }
    }
  }
  std::ostringstream d;
  d << "500 grammars, " << pairs << " vertex pairs, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

double time_testset_cli(const std::string& grammar_text) {
  std::istringstream in(grammar_text);
  std::ostringstream out, err;
  const auto start = Clock::now();
  const int code = cli::run({"testset", "-", "--format", "json"}, in, out, err);
  const double t = seconds_since(start);
  if (code != 0) throw std::runtime_error("testset failed: " + err.str());
  return t;
}

double median_time(const std::string& text, int runs) {
  std::vector<double> times;
  for (int i = 0; i < runs; ++i) times.push_back(time_testset_cli(text));
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Outcome scaling() {
  Rng rng(505);
  const std::string g25 = to_text(support::random_connected_linear(rng, 8, 25, 3));
  const std::string g50 = to_text(support::random_connected_linear(rng, 8, 50, 3));
  const double t25 = median_time(g25, 5);
  const double t50 = median_time(g50, 5);
  const double ratio = t50 / std::max(t25, 1e-9);
  std::ostringstream d;
  d << "|R| = 25: " << t25 << " s, |R| = 50: " << t50 << " s (limit " << scaling_seconds
    << " s), ratio " << ratio << " (limit " << scaling_ratio << ")";
  return {t50 < scaling_seconds && ratio <= scaling_ratio, d.str()};
}

}  // namespace

int main() {
  report(1, "size bound, linear grammars", size_bound_linear);
  report(2, "size bound, general grammars", size_bound_general);
  report(3, "test words belong to the language", subset_property);
  report(4, "closed form for S -> aSb | c", closed_form);
  report(5, "test-set semantics on sampled morphisms", semantics);
  report(6, "negative control is flagged", negative_control);
  report(7, "L4/T4 sizes and sampled pairs", lemma);
  report(8, "optimal paths match brute force", optimal_paths);
  report(9, "scaling of testset", scaling);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
