#ifndef CFGTEST_TESTS_HELPERS_HPP
#define CFGTEST_TESTS_HELPERS_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cfgtest/cfgtest.hpp"

namespace cfgtest::support {

/// Word whose terminals are the single characters of `letters`.
inline Word word(const Grammar& g, std::string_view letters) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  return g.word(names);
}

inline std::set<std::string> spelled(const Grammar& g, const std::vector<Word>& words) {
  std::set<std::string> out;
  for (const Word& w : words) out.insert(format_word(g, w));
  return out;
}

inline std::vector<std::string> spelled_in_order(const Grammar& g, const std::vector<Word>& words) {
  std::vector<std::string> out;
  for (const Word& w : words) out.push_back(format_word(g, w));
  return out;
}

}  // namespace cfgtest::support

#endif  // CFGTEST_TESTS_HELPERS_HPP
