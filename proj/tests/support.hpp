#ifndef KMPSCP_TESTS_SUPPORT_HPP
#define KMPSCP_TESTS_SUPPORT_HPP

#include <functional>
#include <string>
#include <vector>

#include "kmpscp/configs.hpp"
#include "kmpscp/interpreter.hpp"

namespace testing {

inline bool contains(const std::string& p, const std::string& y) {
  // Deliberately quadratic; independent of std::string::find.
  if (p.size() > y.size()) return false;
  for (std::size_t i = 0; i + p.size() <= y.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < p.size() && ok; ++j) ok = y[i + j] == p[j];
    if (ok) return true;
  }
  return false;
}

/// Every word over `alpha` with length in [lo, hi].
inline std::vector<std::string> words(const std::string& alpha, std::size_t lo, std::size_t hi) {
  std::vector<std::string> out;
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= hi; ++len) {
    if (len >= lo) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : alpha) next.push_back(w + c);
    layer = std::move(next);
  }
  return out;
}

/// All assignments of the expression's parameters: list params to words of
/// length <= max_len, symbol params to single letters, over `alpha`.
inline std::vector<kmpscp::Assignment> assignments(const kmpscp::Expr& e, const std::string& alpha, std::size_t max_len) {
  std::vector<kmpscp::Assignment> out{{}};
  const auto tails = words(alpha, 0, max_len);
  for (const auto& p : kmpscp::params_in_order(e)) {
    std::vector<kmpscp::Assignment> next;
    for (const auto& a : out) {
      if (p.is_symbol) {
        for (char c : alpha) {
          auto b = a;
          b.symbols[p.name] = c;
          next.push_back(b);
        }
      } else {
        for (const auto& w : tails) {
          auto b = a;
          b.lists[p.name] = w;
          next.push_back(b);
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

inline kmpscp::Configuration config(const std::string& text, kmpscp::Restriction r = {}) {
  return kmpscp::Configuration{kmpscp::parse_expression(text), std::move(r)};
}

inline kmpscp::Term sp(const std::string& name) { return kmpscp::Term::param_named(name); }
inline kmpscp::Term lit(char c) { return kmpscp::Term::literal(c); }

}  // namespace testing

#endif
