#include "kmpscp/kmp.hpp"

#include <stdexcept>

namespace kmpscp {

std::vector<std::size_t> failure_table(std::string_view p) {
  std::vector<std::size_t> f(p.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    while (k > 0 && p[i] != p[k]) k = f[k];
    if (p[i] == p[k]) ++k;
    f[i + 1] = k;
  }
  return f;
}

std::size_t failure(std::string_view q) { return failure_table(q).back(); }

std::size_t jump(std::size_t i, std::string_view q) {
  if (i < q.size()) throw std::invalid_argument("jump: index is smaller than the matched prefix");
  return i - failure(q);
}

SearchResult kmp_search(std::string_view p, std::string_view y) {
  if (p.empty()) throw std::invalid_argument("pattern must be nonempty");
  const auto f = failure_table(p);
  SearchResult r;
  std::size_t q = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    while (true) {
      ++r.comparisons;
      if (y[i] == p[q]) {
        ++q;
        break;
      }
      if (q == 0) break;
      q = f[q];
    }
    if (q == p.size()) {
      r.found = true;
      r.index = i + 1 - p.size();
      return r;
    }
  }
  return r;
}

Automaton::Automaton(std::string_view p) : pattern_(p), fail_(failure_table(p)) {
  if (p.empty()) throw std::invalid_argument("pattern must be nonempty");
  for (char c : pattern_)
    if (alphabet_.find(c) == std::string::npos) alphabet_ += c;
}

std::size_t Automaton::delta(std::size_t q, char c) const {
  if (q > accept()) throw std::out_of_range("no such state");
  if (q == accept()) return q;
  while (true) {
    if (pattern_[q] == c) return q + 1;
    if (q == 0) return 0;
    q = fail_[q];
  }
}

bool Automaton::accepts(std::string_view y) const {
  std::size_t q = 0;
  for (char c : y) q = delta(q, c);
  return q == accept();
}

PatternDecomposition::PatternDecomposition(std::string pattern) : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw std::invalid_argument("pattern must be nonempty");
}

char PatternDecomposition::letter(std::size_t i) const {
  if (i < 1 || i > pattern_.size()) throw std::out_of_range("letter index");
  return pattern_[i - 1];
}

std::string PatternDecomposition::suffix(std::size_t i) const {
  if (i >= pattern_.size()) throw std::out_of_range("suffix index");
  return pattern_.substr(i);
}

std::string PatternDecomposition::omega(std::size_t i) const {
  if (i < 1 || i >= pattern_.size()) throw std::out_of_range("omega index");
  return pattern_.substr(1, i - 1);
}

}  // namespace kmpscp
