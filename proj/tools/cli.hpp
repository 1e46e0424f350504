#ifndef CFGTEST_TOOLS_CLI_HPP
#define CFGTEST_TOOLS_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfgtest/cfgtest.hpp"

namespace cfgtest::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,
  exit_invariant = 3,
  exit_violations = 4,
};

namespace detail {

using nlohmann::json;

/// Raised when a computed result breaks one of the library's guarantees.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Grammar load_grammar(const std::string& path, std::istream& in) {
  if (path == "-") return parse_grammar(in);
  std::ifstream file(path);
  if (!file) throw GrammarError("cannot open '" + path + "'");
  return parse_grammar(file);
}

inline json word_json(const Grammar& g, const Word& w) {
  json out = json::array();
  for (Terminal t : w) out.push_back(g.name(t));
  return out;
}

inline std::string vertex_name(const Grammar& g, const PathGraph& graph, Vertex v) {
  return v == graph.sink() ? std::string("⊥") : g.nonterminal_names().at(v);
}

inline json morphism_json(const std::vector<std::string>& letters, const Morphism& f) {
  json out = json::object();
  for (std::size_t i = 0; i < letters.size() && i < f.domain_size(); ++i)
    out[letters[i]] = f.images()[i];
  return out;
}

inline std::string morphism_text(const std::vector<std::string>& letters, const Morphism& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < letters.size() && i < f.domain_size(); ++i) {
    if (i) out += ", ";
    out += letters[i] + " -> " + (f.images()[i].empty() ? "eps" : f.images()[i]);
  }
  return out + "}";
}

struct Common {
  std::string input = "-";
  std::string format = "text";
};

inline void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("grammar", c.input, "Grammar file ('-' for standard input)");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
}

inline std::string run_testset(const Common& c, std::size_t k, bool filter, bool stats,
                               bool check_membership, std::istream& in) {
  const Grammar g = load_grammar(c.input, in);
  const TestSet ts = test_set(g, k, filter);
  const std::uint64_t exact = count_bound(ts.rule_count, k);
  if (ts.words.size() > exact)
    throw InvariantViolation("test set has " + std::to_string(ts.words.size()) +
                             " words, more than the bound " + std::to_string(exact));
  if (check_membership) {
    for (const Word& w : ts.words)
      if (!contains(g, w)) throw InvariantViolation("word '" + format_word(g, w) + "' is not in L(G)");
  }
  const std::uint64_t bound = reported_bound(ts.rule_count, k);

  if (c.format == "json") {
    json out;
    out["k"] = k;
    out["rule_count"] = ts.rule_count;
    out["bound"] = bound;
    out["words"] = json::array();
    out["provenance"] = json::array();
    for (std::size_t i = 0; i < ts.words.size(); ++i) {
      out["words"].push_back(word_json(g, ts.words[i]));
      out["provenance"].push_back({{"word_index", i},
                                   {"edges", ts.provenance[i].edges},
                                   {"path", ts.provenance[i].path}});
    }
    if (stats) {
      out["stats"] = {{"word_count", ts.words.size()},
                      {"max_word_length", ts.max_word_length()},
                      {"grammar_size", grammar_size(g)}};
    }
    return out.dump(2) + "\n";
  }
  std::string out;
  for (const Word& w : ts.words) out += format_word(g, w) + "\n";
  if (stats) {
    out += "# words: " + std::to_string(ts.words.size()) + "\n";
    out += "# max word length: " + std::to_string(ts.max_word_length()) + "\n";
    out += "# k: " + std::to_string(k) + "\n";
    out += "# linear rules: " + std::to_string(ts.rule_count) + "\n";
    out += "# bound: " + std::to_string(bound) + "\n";
    out += "# grammar size: " + std::to_string(grammar_size(g)) + "\n";
  }
  return out;
}

inline std::string run_linearize(const Common& c, std::istream& in) {
  const Grammar g = load_grammar(c.input, in);
  const Linearization lin = linearize(g);
  if (!rule_count_bound_check(g, lin.linear))
    throw InvariantViolation("linear grammar has more rules than |G|");
  if (!is_linear(lin.linear.grammar)) throw InvariantViolation("linearization is not linear");
  if (c.format == "json") {
    const Grammar& lg = lin.linear.grammar;
    json out;
    out["start"] = lg.name(lg.start());
    out["rules"] = json::array();
    for (const Rule& r : lg.rules()) {
      const RuleOrigin& o = lin.linear.origins[r.index];
      json rule = {{"index", r.index},
                   {"text", rule_to_text(lg, r)},
                   {"from_rule", o.source_rule}};
      rule["kept"] = o.kept_position ? json(g.name(g.rule(o.source_rule).rhs[*o.kept_position]))
                                     : json(nullptr);
      out["rules"].push_back(rule);
    }
    out["witnesses"] = json::object();
    for (std::size_t a = 0; a < lg.nonterminal_count(); ++a) {
      const auto& w = lin.witnesses.words[a];
      if (w) out["witnesses"][lg.nonterminal_names()[a]] = word_json(lg, *w);
    }
    return out.dump(2) + "\n";
  }
  return linearization_to_text(g, lin);
}

inline std::string run_graph(const Common& c, bool linearize_first, std::istream& in) {
  const Grammar source = load_grammar(c.input, in);
  if (!is_linear(source) && !linearize_first)
    throw NotLinearError("grammar is not linear (use --linearize)");
  const Grammar g = linearize_first ? linearize(source).linear.grammar : source;
  const PathGraph graph(g);
  const OptimalPathTable table(graph);

  if (c.format == "json") {
    json out;
    out["vertices"] = json::array();
    for (Vertex v = 0; v < graph.vertex_count(); ++v) out["vertices"].push_back(vertex_name(g, graph, v));
    out["edges"] = json::array();
    for (const Edge& e : graph.edges())
      out["edges"].push_back({{"src", vertex_name(g, graph, e.source)},
                              {"rule", e.rule},
                              {"dst", vertex_name(g, graph, e.target)}});
    out["optimal"] = json::array();
    for (Vertex a = 0; a < graph.vertex_count(); ++a)
      for (Vertex b = 0; b < graph.vertex_count(); ++b)
        if (const auto* p = table.find(a, b))
          out["optimal"].push_back({{"from", vertex_name(g, graph, a)},
                                    {"to", vertex_name(g, graph, b)},
                                    {"rules", *p}});
    return out.dump(2) + "\n";
  }
  std::string out = "vertices:";
  for (Vertex v = 0; v < graph.vertex_count(); ++v) out += " " + vertex_name(g, graph, v);
  out += "\nedges:\n";
  for (const Edge& e : graph.edges()) {
    out += "  " + vertex_name(g, graph, e.source) + " -[" + std::to_string(e.rule) + "]-> " +
           vertex_name(g, graph, e.target) + "    " + rule_to_text(g, g.rule(e.rule)) + "\n";
  }
  out += "optimal paths:\n";
  for (Vertex a = 0; a < graph.vertex_count(); ++a) {
    for (Vertex b = 0; b < graph.vertex_count(); ++b) {
      const auto* p = table.find(a, b);
      if (!p) continue;
      out += "  " + vertex_name(g, graph, a) + " => " + vertex_name(g, graph, b) + ": [";
      for (std::size_t i = 0; i < p->size(); ++i) out += (i ? " " : "") + std::to_string((*p)[i]);
      out += "]\n";
    }
  }
  return out;
}

struct VerifyArgs {
  std::size_t trials = 1000;
  std::size_t max_len = 12;
  std::size_t max_image_len = 3;
  std::size_t max_words = 50000;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  bool t4 = false;
  bool image_len_given = false;
};

inline std::string report_to_string(const Common& c, const CheckReport& report,
                                    const std::vector<std::string>& letters) {
  if (c.format == "json") {
    json out;
    out["trials"] = report.trials;
    out["seed"] = report.seed;
    out["truncated"] = report.truncated;
    out["language_words"] = report.language_words;
    out["informative"] = report.informative;
    out["near_misses"] = report.near_misses;
    out["violations"] = json::array();
    for (const Violation& v : report.violations) {
      out["violations"].push_back({{"context", v.context},
                                   {"f", morphism_json(letters, v.f)},
                                   {"h", morphism_json(letters, v.h)},
                                   {"witness", v.witness_text}});
    }
    return out.dump(2) + "\n";
  }
  std::string out;
  out += "trials: " + std::to_string(report.trials) + "\n";
  out += "seed: " + std::to_string(report.seed) + "\n";
  out += "language words checked: " + std::to_string(report.language_words) +
         (report.truncated ? " (truncated)" : "") + "\n";
  out += "informative trials: " + std::to_string(report.informative) + "\n";
  if (report.near_misses) out += "near misses: " + std::to_string(report.near_misses) + "\n";
  out += "violations: " + std::to_string(report.violations.size()) + "\n";
  for (const Violation& v : report.violations) {
    out += "  " + v.context + ": f = " + morphism_text(letters, v.f) +
           ", h = " + morphism_text(letters, v.h) + ", witness " + v.witness_text + "\n";
  }
  return out;
}

inline std::pair<std::string, bool> run_verify(const Common& c, const VerifyArgs& a,
                                               std::istream& in) {
  if (a.t4) {
    LemmaCheckOptions opt;
    opt.trials = a.trials;
    opt.seed = a.seed;
    if (a.image_len_given) opt.max_image_len = a.max_image_len;
    const CheckReport report = check_t4_lemma(opt);
    std::vector<std::string> letters;
    for (std::size_t i = 0; i < SigmaFour::letter_count; ++i)
      letters.push_back(SigmaFour::name(static_cast<Terminal>(i)));
    return {report_to_string(c, report, letters), report.passed()};
  }
  const Grammar g = load_grammar(c.input, in);
  const TestSet ts = test_set(g, a.k);
  PropertyCheckOptions opt;
  opt.trials = a.trials;
  opt.max_len = a.max_len;
  opt.max_image_len = a.max_image_len;
  opt.seed = a.seed;
  opt.max_language_words = a.max_words;
  CheckReport report;
  try {
    report = check_test_set_property(g, ts.words, opt);
  } catch (const SubsetViolationError& e) {
    throw InvariantViolation(e.what());
  }
  return {report_to_string(c, report, g.terminal_names()), report.passed()};
}

inline std::string run_enumerate(const Common& c, std::size_t max_len, std::size_t max_count,
                                 std::istream& in) {
  const Grammar g = load_grammar(c.input, in);
  const Enumeration e = enumerate_words(g, max_len, max_count);
  if (c.format == "json") {
    json out;
    out["max_len"] = max_len;
    out["truncated"] = e.truncated;
    out["words"] = json::array();
    for (const Word& w : e.words) out["words"].push_back(word_json(g, w));
    return out.dump(2) + "\n";
  }
  std::string out;
  for (const Word& w : e.words) out += format_word(g, w) + "\n";
  if (e.truncated) out += "# truncated\n";
  return out;
}

}  // namespace detail

/// Entry point of the `cfgtest` tool.  Output goes to `out` only when the
/// whole command succeeded; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Test sets for context-free languages", "cfgtest"};
  app.require_subcommand(1);

  detail::Common common;

  std::size_t k = 3;
  bool filter = false, stats = false, check_membership = false;
  auto* testset = app.add_subcommand("testset", "Compute a test set of the grammar's language");
  detail::add_common(testset, common);
  testset->add_option("-k", k, "Maximum number of chosen edges")->capture_default_str();
  testset->add_flag("--filter-optimal", filter, "Skip choices where P_i e_i is already optimal");
  testset->add_flag("--stats", stats, "Print statistics");
  testset->add_flag("--check-membership", check_membership,
                    "Re-check every word against the grammar");

  auto* lin = app.add_subcommand("linearize", "Print the linearized grammar");
  detail::add_common(lin, common);

  bool linearize_first = false;
  auto* graph = app.add_subcommand("graph", "Dump the rule graph and its optimal paths");
  detail::add_common(graph, common);
  graph->add_flag("--linearize", linearize_first, "Linearize non-linear input first");

  detail::VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Property-check the computed test set");
  detail::add_common(verify, common);
  verify->add_option("--trials", va.trials, "Morphism pairs to sample")->capture_default_str();
  verify->add_option("--max-len", va.max_len, "Enumerate the language up to this length")
      ->capture_default_str();
  auto* image_opt = verify->add_option("--max-image-len", va.max_image_len, "Longest letter image")
                        ->capture_default_str();
  verify->add_option("--max-words", va.max_words, "Cap on enumerated language words")
      ->capture_default_str();
  verify->add_option("-k", va.k, "Maximum number of chosen edges")->capture_default_str();
  verify->add_option("--seed", va.seed, "Random seed")->capture_default_str();
  verify->add_flag("--t4", va.t4, "Check the 15-word T4 test set of L4 instead");

  std::size_t max_len = 8, max_count = 1000;
  auto* enumerate = app.add_subcommand("enumerate", "List words of the language by length");
  detail::add_common(enumerate, common);
  enumerate->add_option("--max-len", max_len, "Longest word")->capture_default_str();
  enumerate->add_option("--max-count", max_count, "Most words to list")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "cfgtest: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    std::string result;
    bool ok = true;
    if (*testset) {
      result = detail::run_testset(common, k, filter, stats, check_membership, in);
    } else if (*lin) {
      result = detail::run_linearize(common, in);
    } else if (*graph) {
      result = detail::run_graph(common, linearize_first, in);
    } else if (*verify) {
      va.image_len_given = image_opt->count() > 0;
      std::tie(result, ok) = detail::run_verify(common, va, in);
    } else if (*enumerate) {
      result = detail::run_enumerate(common, max_len, max_count, in);
    }
    out << result;
    return ok ? exit_ok : exit_violations;
  } catch (const EmptyLanguageError& e) {
    err << "cfgtest: " << e.what() << "\n";
    return exit_usage;
  } catch (const GrammarError& e) {
    err << "cfgtest: " << e.what() << "\n";
    return exit_usage;
  } catch (const detail::InvariantViolation& e) {
    err << "cfgtest: invariant violated: " << e.what() << "\n";
    return exit_invariant;
  } catch (const std::exception& e) {
    err << "cfgtest: internal error: " << e.what() << "\n";
    return exit_invariant;
  }
}

}  // namespace cfgtest::cli

#endif  // CFGTEST_TOOLS_CLI_HPP
