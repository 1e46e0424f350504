#ifndef CFGTEST_GRAMMAR_IO_HPP
#define CFGTEST_GRAMMAR_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cfgtest/grammar.hpp"

// Grammar text format:
//
//   # comment
//   start: S                 (optional; default is the first rule's lhs)
//   S -> 'a' S 'b' | c
//      | eps                 (continuation of the previous lhs)
//
// Nonterminals match [A-Z][A-Za-z0-9_]*, bare terminals [a-z][a-z0-9_]*,
// quoted terminals are any non-blank run without quotes.  `eps` and `_`
// stand for the empty right-hand side.
namespace cfgtest {

class ParseError : public GrammarError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : GrammarError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

enum class TokenKind { arrow, bar, colon, nonterminal, terminal, epsilon, word };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t column;
};

inline bool is_nonterminal_name(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline bool is_bare_terminal_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::islower(u) || std::isdigit(u) || c == '_')) return false;
  }
  return true;
}

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

inline std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (is_blank(c)) {
      ++i;
      continue;
    }
    if (c == '#') break;
    const std::size_t col = i + 1;
    if (c == '|') {
      out.push_back({TokenKind::bar, "|", col});
      ++i;
    } else if (c == ':') {
      out.push_back({TokenKind::colon, ":", col});
      ++i;
    } else if (c == '-') {
      if (i + 1 >= line.size() || line[i + 1] != '>') throw ParseError(line_no, col, "expected '->'");
      out.push_back({TokenKind::arrow, "->", col});
      i += 2;
    } else if (c == '\'') {
      std::size_t end = i + 1;
      while (end < line.size() && line[end] != '\'' && !is_blank(line[end])) ++end;
      if (end >= line.size() || line[end] != '\'')
        throw ParseError(line_no, col, "unterminated quoted terminal");
      if (end == i + 1) throw ParseError(line_no, col, "empty quoted terminal");
      out.push_back({TokenKind::terminal, std::string(line.substr(i + 1, end - i - 1)), col});
      i = end + 1;
    } else {
      std::size_t end = i;
      while (end < line.size() && !is_blank(line[end]) && line[end] != '|' && line[end] != '#' &&
             line[end] != '\'' && line[end] != ':' && line[end] != '-')
        ++end;
      std::string text(line.substr(i, end - i));
      if (text.empty()) throw ParseError(line_no, col, "unexpected character");
      if (text == "eps" || text == "_") {
        out.push_back({TokenKind::epsilon, text, col});
      } else if (is_nonterminal_name(text)) {
        out.push_back({TokenKind::nonterminal, text, col});
      } else if (is_bare_terminal_name(text)) {
        out.push_back({TokenKind::word, text, col});
      } else {
        throw ParseError(line_no, col, "invalid symbol '" + text + "'");
      }
      i = end;
    }
  }
  return out;
}

}  // namespace detail

/// Parses the grammar text format.  Throws ParseError for syntax errors and
/// GrammarError for semantic ones (name clashes, no rules, unknown start).
inline Grammar parse_grammar(std::string_view text) {
  using detail::TokenKind;
  GrammarBuilder builder;
  std::optional<std::string> current_lhs;
  std::size_t rule_lines = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto tokens = detail::tokenize_line(line, line_no);
    if (tokens.empty()) continue;

    std::size_t i = 0;
    if (tokens[0].kind == TokenKind::word && tokens[0].text == "start" && tokens.size() > 1 &&
        tokens[1].kind == TokenKind::colon) {
      if (tokens.size() != 3 || tokens[2].kind != TokenKind::nonterminal)
        throw ParseError(line_no, tokens[1].column, "expected 'start: Nonterminal'");
      builder.set_start(tokens[2].text);
      continue;
    }
    if (tokens[0].kind == TokenKind::nonterminal) {
      if (tokens.size() < 2 || tokens[1].kind != TokenKind::arrow)
        throw ParseError(line_no, tokens[0].column + tokens[0].text.size(), "expected '->'");
      current_lhs = tokens[0].text;
      i = 2;
    } else if (tokens[0].kind == TokenKind::bar) {
      if (!current_lhs) throw ParseError(line_no, tokens[0].column, "continuation without a rule");
      i = 1;
    } else {
      throw ParseError(line_no, tokens[0].column, "expected a nonterminal or '|'");
    }
    ++rule_lines;

    // alternatives separated by '|'
    std::vector<GrammarBuilder::Ref> rhs;
    bool epsilon = false;
    std::size_t alt_column = i < tokens.size() ? tokens[i].column : line.size() + 1;
    auto finish_alt = [&](std::size_t column) {
      if (rhs.empty() && !epsilon)
        throw ParseError(line_no, column, "empty alternative (write 'eps' for the empty word)");
      builder.add_rule(*current_lhs, rhs);
      rhs.clear();
      epsilon = false;
    };
    for (; i < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      switch (tok.kind) {
        case TokenKind::bar:
          finish_alt(tok.column);
          alt_column = tok.column + 1;
          break;
        case TokenKind::epsilon:
          if (epsilon || !rhs.empty())
            throw ParseError(line_no, tok.column, "'" + tok.text + "' must stand alone");
          epsilon = true;
          break;
        case TokenKind::nonterminal:
        case TokenKind::terminal:
        case TokenKind::word:
          if (epsilon) throw ParseError(line_no, tok.column, "'eps' must stand alone");
          rhs.push_back(tok.kind == TokenKind::nonterminal ? GrammarBuilder::nt(tok.text)
                                                           : GrammarBuilder::t(tok.text));
          break;
        case TokenKind::arrow:
        case TokenKind::colon:
          throw ParseError(line_no, tok.column, "unexpected '" + tok.text + "'");
      }
    }
    finish_alt(alt_column);
  }
  if (rule_lines == 0) throw GrammarError("grammar has no rules");
  return builder.build();
}

inline Grammar parse_grammar(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_grammar(text);
}

/// Renders a terminal the way the parser reads it back.
inline std::string quote_terminal(const std::string& name) {
  if (detail::is_bare_terminal_name(name) && name != "eps") return name;
  if (name.find('\'') != std::string::npos)
    throw GrammarError("terminal '" + name + "' cannot be written in grammar text");
  return "'" + name + "'";
}

inline std::string rhs_to_text(const Grammar& g, const std::vector<Symbol>& rhs) {
  if (rhs.empty()) return "eps";
  std::string out;
  for (Symbol s : rhs) {
    if (!out.empty()) out += ' ';
    out += s.is_terminal() ? quote_terminal(g.name(s)) : g.name(s);
  }
  return out;
}

inline std::string rule_to_text(const Grammar& g, const Rule& r) {
  return g.name(r.lhs) + " -> " + rhs_to_text(g, r.rhs);
}

/// One rule per line, preceded by the start directive; parse_grammar of the
/// result reproduces `g` exactly when every terminal occurs in some rule.
inline std::string to_text(const Grammar& g) {
  std::string out = "start: " + g.name(g.start()) + "\n";
  for (const Rule& r : g.rules()) out += rule_to_text(g, r) + "\n";
  return out;
}

/// Concatenated when every terminal name is one character, otherwise
/// space-separated.  The empty word prints as `eps`.
inline std::string format_word(const Grammar& g, const Word& w) {
  if (w.empty()) return "eps";
  bool single = std::all_of(g.terminal_names().begin(), g.terminal_names().end(),
                            [](const std::string& n) { return n.size() == 1; });
  std::string out;
  for (Terminal t : w) {
    if (!single && !out.empty()) out += ' ';
    out += g.name(t);
  }
  return out;
}

}  // namespace cfgtest

#endif  // CFGTEST_GRAMMAR_IO_HPP
