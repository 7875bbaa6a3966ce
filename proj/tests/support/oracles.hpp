#pragma once

// Slow, obviously-correct reference implementations for cross-checking.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curate::test {

/// Levenshtein by direct recursion on the definition.
inline std::size_t naive_edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  const std::size_t sub = naive_edit_distance(a.substr(1), b.substr(1)) + (a[0] == b[0] ? 0 : 1);
  const std::size_t del = naive_edit_distance(a.substr(1), b) + 1;
  const std::size_t ins = naive_edit_distance(a, b.substr(1)) + 1;
  return std::min({sub, del, ins});
}

/// Same recursion, memoized on suffix positions so longer strings finish.
inline std::size_t memo_edit_distance(std::u32string_view a, std::u32string_view b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    const std::size_t r = std::min({self(self, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1), self(self, i + 1, j) + 1,
                                    self(self, i, j + 1) + 1});
    memo[{i, j}] = r;
    return r;
  };
  return rec(rec, 0, 0);
}

/// Cohen's kappa from a contingency table, computed with exact integer
/// counts until the final division.
inline double table_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> cats(a);
  cats.insert(cats.end(), b.begin(), b.end());
  std::sort(cats.begin(), cats.end());
  cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
  const std::size_t k = cats.size();
  std::vector<std::vector<long long>> table(k, std::vector<long long>(k, 0));
  auto idx = [&](const std::string& c) {
    return static_cast<std::size_t>(std::lower_bound(cats.begin(), cats.end(), c) - cats.begin());
  };
  for (std::size_t i = 0; i < a.size(); ++i) ++table[idx(a[i])][idx(b[i])];
  const long long n = static_cast<long long>(a.size());
  long long diag = 0, chance = 0;
  for (std::size_t c = 0; c < k; ++c) {
    diag += table[c][c];
    long long row = 0, col = 0;
    for (std::size_t d = 0; d < k; ++d) {
      row += table[c][d];
      col += table[d][c];
    }
    chance += row * col;
  }
  // kappa = (n*diag - chance) / (n^2 - chance)
  const long long den = n * n - chance;
  if (den == 0) return 1.0;
  return static_cast<double>(n * diag - chance) / static_cast<double>(den);
}

/// Greedy longest match by scanning the whole word list at every position.
/// `combining` tells whether a scalar may not start a cluster.
template <typename IsCombining>
std::vector<std::u32string> naive_segment(const std::u32string& text, const std::vector<std::u32string>& words,
                                          IsCombining combining) {
  std::vector<std::u32string> out;
  std::u32string unknown;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    if (!combining(text[i])) {
      for (const auto& w : words) {
        if (w.size() <= best || text.compare(i, w.size(), w) != 0) continue;
        const std::size_t end = i + w.size();
        if (end < text.size() && combining(text[end])) continue;
        best = w.size();
      }
    }
    if (best > 0) {
      if (!unknown.empty()) out.push_back(std::exchange(unknown, {}));
      out.push_back(text.substr(i, best));
      i += best;
    } else {
      unknown.push_back(text[i]);
      ++i;
    }
  }
  if (!unknown.empty()) out.push_back(unknown);
  return out;
}

}  // namespace curate::test
