#ifndef KMPSCP_KMP_HPP
#define KMPSCP_KMP_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kmpscp {

/// Length of the longest proper border of q (0 for the empty word).
std::size_t failure(std::string_view q);

/// failure() of every prefix of p, lengths 0..|p|.
std::vector<std::size_t> failure_table(std::string_view p);

/// Pointer move after matching q ending before index i: i - f(q). Requires i >= |q|.
std::size_t jump(std::size_t i, std::string_view q);

struct SearchResult {
  bool found = false;
  std::size_t comparisons = 0;
  /// First occurrence, or npos.
  std::size_t index = std::string::npos;
};

SearchResult kmp_search(std::string_view p, std::string_view y);

/**
 * Matching automaton over an open alphabet.
 *
 * States 0..|p|; state |p| accepts and is a sink. Letters outside p
 * always lead to 0 from non-accepting states.
 */
class Automaton {
 public:
  explicit Automaton(std::string_view p);

  std::size_t state_count() const { return pattern_.size() + 1; }
  std::size_t accept() const { return pattern_.size(); }
  const std::string& pattern() const { return pattern_; }
  /// Letters of p in first-occurrence order.
  const std::string& alphabet() const { return alphabet_; }

  std::size_t delta(std::size_t q, char c) const;
  bool accepts(std::string_view y) const;

 private:
  std::string pattern_;
  std::string alphabet_;
  std::vector<std::size_t> fail_;
};

/// Letters, suffixes and read-so-far infixes of a pattern.
class PatternDecomposition {
 public:
  explicit PatternDecomposition(std::string pattern);

  const std::string& pattern() const { return pattern_; }
  /// i-th letter, 1-based: 1 <= i <= |p|.
  char letter(std::size_t i) const;
  /// p without its first i letters, 0 <= i < |p|.
  std::string suffix(std::size_t i) const;
  /// Letters 2..i, read after the first one and before suffix(i); 1 <= i < |p|.
  std::string omega(std::size_t i) const;

 private:
  std::string pattern_;
};

}  // namespace kmpscp

#endif  // KMPSCP_KMP_HPP
