#ifndef CFGTEST_VERIFIER_HPP
#define CFGTEST_VERIFIER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfgtest/grammar.hpp"
#include "cfgtest/grammar_io.hpp"
#include "cfgtest/language.hpp"
#include "cfgtest/random.hpp"

/// \file
/// Randomized checks of the test-set property.
///
/// T is a test set for L when any two morphisms that agree on T agree on L.
/// That cannot be decided by sampling, but its contrapositive can be
/// refuted: a pair of morphisms that disagrees on some word of L while
/// agreeing on all of T is a counterexample.  Finding none is evidence only.
namespace cfgtest {

class UnknownLetterError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class SubsetViolationError : public GrammarError {
 public:
  using GrammarError::GrammarError;
};

/// A morphism from the terminals of a grammar (by index) into words over a
/// character alphabet.  Images are applied letter by letter, so the
/// morphism law holds by construction.
class Morphism {
 public:
  Morphism() = default;
  explicit Morphism(std::vector<std::string> images) : images_(std::move(images)) {}

  std::size_t domain_size() const noexcept { return images_.size(); }
  const std::vector<std::string>& images() const noexcept { return images_; }

  const std::string& image(Terminal t) const {
    if (index_of(t) >= images_.size())
      throw UnknownLetterError("letter " + std::to_string(index_of(t)) + " outside morphism domain");
    return images_[index_of(t)];
  }

  bool operator==(const Morphism&) const = default;

 private:
  std::vector<std::string> images_;
};

/// Throws UnknownLetterError.
inline std::string apply_morphism(const Morphism& f, const Word& w) {
  std::string out;
  for (Terminal t : w) out += f.image(t);
  return out;
}

/// Each image drawn uniformly among the words of length 0..max_image_len
/// over `target`.
inline Morphism random_morphism(std::size_t source_size, std::string_view target,
                                std::size_t max_image_len, Rng& rng) {
  // words of length exactly i: |target|^i
  std::vector<std::uint64_t> per_length{1};
  std::uint64_t total = 1;
  for (std::size_t i = 1; i <= max_image_len && !target.empty(); ++i) {
    per_length.push_back(per_length.back() * target.size());
    total += per_length.back();
  }
  std::vector<std::string> images;
  images.reserve(source_size);
  for (std::size_t s = 0; s < source_size; ++s) {
    std::uint64_t pick = uniform_below(rng, total);
    std::size_t len = 0;
    while (pick >= per_length[len]) pick -= per_length[len++];
    std::string img(len, '\0');
    for (std::size_t i = 0; i < len; ++i) {
      img[i] = target[pick % target.size()];
      pick /= target.size();
    }
    images.push_back(std::move(img));
  }
  return Morphism(std::move(images));
}

/// First word on which f and h differ.
inline const Word* first_disagreement(const Morphism& f, const Morphism& h,
                                      const std::vector<Word>& words) {
  for (const Word& w : words)
    if (apply_morphism(f, w) != apply_morphism(h, w)) return &w;
  return nullptr;
}

/// A word of `language` refuting "f = h on tests implies f = h on language".
inline std::optional<Word> refute_test_set(const std::vector<Word>& language,
                                           const std::vector<Word>& tests, const Morphism& f,
                                           const Morphism& h) {
  const Word* witness = first_disagreement(f, h, language);
  if (!witness || first_disagreement(f, h, tests)) return std::nullopt;
  return *witness;
}

struct Violation {
  std::string context;
  Morphism f;
  Morphism h;
  Word witness;
  std::string witness_text;
};

struct CheckReport {
  std::size_t trials = 0;
  std::vector<Violation> violations;
  std::uint64_t seed = 0;
  /// The language sample hit its size cap.
  bool truncated = false;
  /// Words of the language that were checked.
  std::size_t language_words = 0;
  /// Trials that reached the implication: f != h on L (test sets), or
  /// distinct f, h with f = h on T4 (L4 check).
  std::size_t informative = 0;
  /// Near-miss pairs that agreed on at least 14 of the 15 T4 words.
  std::size_t near_misses = 0;

  bool passed() const noexcept { return violations.empty(); }
};

struct PropertyCheckOptions {
  std::size_t trials = 1000;
  std::size_t max_len = 12;
  std::size_t max_image_len = 3;
  std::uint64_t seed = 0;
  std::string target_alphabet = "01";
  std::size_t max_language_words = 50000;
};

/// Samples morphism pairs and reports every pair that separates two words
/// of L(g) (up to max_len) while agreeing on all of `tests`.  Throws
/// SubsetViolationError first if some test word is not in L(g).
inline CheckReport check_test_set_property(const Grammar& g, const std::vector<Word>& tests,
                                           const PropertyCheckOptions& options = {}) {
  for (const Word& w : tests)
    if (!contains(g, w))
      throw SubsetViolationError("test word '" + format_word(g, w) + "' is not in the language");

  CheckReport report;
  report.seed = options.seed;
  const Enumeration language = enumerate_words(g, options.max_len, options.max_language_words);
  report.truncated = language.truncated;
  report.language_words = language.words.size();

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    Rng rng(derive_seed(options.seed, trial));
    Morphism f = random_morphism(g.terminal_count(), options.target_alphabet,
                                 options.max_image_len, rng);
    Morphism h = random_morphism(g.terminal_count(), options.target_alphabet,
                                 options.max_image_len, rng);
    ++report.trials;
    const Word* witness = first_disagreement(f, h, language.words);
    if (!witness) continue;
    ++report.informative;
    if (first_disagreement(f, h, tests)) continue;
    report.violations.push_back(
        {"trial " + std::to_string(trial), std::move(f), std::move(h), *witness,
         format_word(g, *witness)});
  }
  return report;
}

/// The 16-letter alphabet {a_i, abar_i, b_i, bbar_i | i = 1..4}, the 16-word
/// language L4 = { x4 x3 x2 x1 xbar1 xbar2 xbar3 xbar4 } and its 15-word test
/// set T4 (everything but the all-b word).
class SigmaFour {
 public:
  static constexpr std::size_t letter_count = 16;

  SigmaFour() {
    for (std::uint32_t choice = 0; choice < 16; ++choice) {
      Word w;
      for (std::size_t i = 4; i >= 1; --i) w.push_back(letter(choice >> (i - 1) & 1, i, false));
      for (std::size_t i = 1; i <= 4; ++i) w.push_back(letter(choice >> (i - 1) & 1, i, true));
      language_.push_back(w);
      if (choice == 15) {
        all_b_ = w;
      } else {
        tests_.push_back(w);
      }
    }
    if (language_.size() != 16 || tests_.size() != 15)
      throw std::logic_error("L4/T4 construction has the wrong size");
  }

  /// a_i (b = false) or b_i (b = true), barred or not; i in 1..4.
  static Terminal letter(bool b, std::size_t i, bool bar) {
    return static_cast<Terminal>((i - 1) * 4 + (b ? 2 : 0) + (bar ? 1 : 0));
  }

  static std::string name(Terminal t) {
    const std::size_t id = index_of(t);
    std::string out = (id & 2) ? "b" : "a";
    if (id & 1) out += "bar";
    return out + std::to_string(id / 4 + 1);
  }

  const std::vector<Word>& language() const noexcept { return language_; }
  const std::vector<Word>& tests() const noexcept { return tests_; }
  const Word& all_b() const noexcept { return all_b_; }

 private:
  std::vector<Word> language_;
  std::vector<Word> tests_;
  Word all_b_;
};

inline std::string format_sigma_four_word(const Word& w) {
  std::string out;
  for (Terminal t : w) {
    if (!out.empty()) out += ' ';
    out += SigmaFour::name(t);
  }
  return out;
}

namespace detail {

inline std::string alphabet_of_size(std::size_t n) {
  static constexpr std::string_view symbols =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  if (n > symbols.size()) throw std::invalid_argument("target alphabet too large");
  return std::string(symbols.substr(0, n));
}

// Letters that are immediately followed by another in every L4 word that
// contains them, paired with one possible follower.
inline std::pair<Terminal, Terminal> adjacent_letters(Rng& rng) {
  const std::size_t level = 1 + uniform_below(rng, 4);
  const bool b = uniform_below(rng, 2) != 0;
  const bool b_next = uniform_below(rng, 2) != 0;
  switch (uniform_below(rng, 3)) {
    case 0:  // x_i x_{i-1}, or x_1 xbar_1 at the bottom
      if (level == 1) return {SigmaFour::letter(b, 1, false), SigmaFour::letter(b, 1, true)};
      return {SigmaFour::letter(b, level, false), SigmaFour::letter(b_next, level - 1, false)};
    case 1:  // xbar_i xbar_{i+1}
      if (level == 4) return {SigmaFour::letter(b, 1, false), SigmaFour::letter(b, 1, true)};
      return {SigmaFour::letter(b, level, true), SigmaFour::letter(b_next, level + 1, true)};
    default:
      return {SigmaFour::letter(b, 1, false), SigmaFour::letter(b, 1, true)};
  }
}

// h is f with either one image redrawn, or a suffix of one image moved to the
// front of the image of a letter that can follow it.  The second kind keeps
// every word using that adjacency intact, which lands close to the boundary.
inline Morphism perturb(const Morphism& f, std::string_view target, std::size_t max_image_len,
                        Rng& rng) {
  std::vector<std::string> images = f.images();
  if (uniform_below(rng, 2) == 0) {
    const std::size_t letter = uniform_below(rng, images.size());
    Morphism fresh = random_morphism(1, target, max_image_len, rng);
    images[letter] = fresh.images()[0];
    if (images[letter] == f.images()[letter]) images[letter] += target.empty() ? "" : target.substr(0, 1);
    return Morphism(std::move(images));
  }
  const std::size_t moves = 1 + uniform_below(rng, 2);
  for (std::size_t m = 0; m < moves; ++m) {
    auto [from, to] = adjacent_letters(rng);
    std::string& src = images[index_of(from)];
    if (src.empty()) continue;
    const std::size_t cut = uniform_below(rng, src.size());
    images[index_of(to)] = src.substr(cut) + images[index_of(to)];
    src.resize(cut);
  }
  return Morphism(std::move(images));
}

}  // namespace detail

struct LemmaCheckOptions {
  std::size_t trials = 100000;
  std::size_t target_alphabet_size = 2;
  std::size_t max_image_len = 2;
  std::uint64_t seed = 0;
};

/// For random and near-miss morphism pairs over the 16 letters: whenever the
/// pair agrees on T4 it must also agree on the all-b word.  `trials` random
/// pairs are followed by `trials` perturbed pairs.
inline CheckReport check_t4_lemma(const LemmaCheckOptions& options = {}) {
  const SigmaFour sigma;
  const std::string target = detail::alphabet_of_size(options.target_alphabet_size);
  CheckReport report;
  report.seed = options.seed;
  report.language_words = sigma.language().size();

  auto examine = [&](Morphism f, Morphism h, const std::string& context, bool near_miss) {
    ++report.trials;
    std::size_t agreeing = 0;
    for (const Word& w : sigma.tests())
      if (apply_morphism(f, w) == apply_morphism(h, w)) ++agreeing;
    if (near_miss && agreeing >= 14) ++report.near_misses;
    if (agreeing != sigma.tests().size() || f.images() == h.images()) return;
    ++report.informative;
    if (apply_morphism(f, sigma.all_b()) == apply_morphism(h, sigma.all_b())) return;
    report.violations.push_back({context, std::move(f), std::move(h), sigma.all_b(),
                                 format_sigma_four_word(sigma.all_b())});
  };

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    Rng rng(derive_seed(options.seed, trial));
    Morphism f = random_morphism(SigmaFour::letter_count, target, options.max_image_len, rng);
    Morphism h = random_morphism(SigmaFour::letter_count, target, options.max_image_len, rng);
    examine(std::move(f), std::move(h), "random " + std::to_string(trial), false);
  }
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    Rng rng(derive_seed(options.seed, options.trials + trial));
    Morphism f = random_morphism(SigmaFour::letter_count, target, options.max_image_len, rng);
    Morphism h = detail::perturb(f, target, options.max_image_len, rng);
    examine(std::move(f), std::move(h), "near-miss " + std::to_string(trial), true);
  }
  return report;
}

}  // namespace cfgtest

#endif  // CFGTEST_VERIFIER_HPP
