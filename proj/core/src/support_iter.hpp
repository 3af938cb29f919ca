#pragma once

#include <vector>

namespace lassopath::detail {

// Advances to the next support of size <= max_size over {0..p-1} in
// size-then-lexicographic order; start from an empty vector. Returns false
// when exhausted.
inline bool next_support(std::vector<int>& support, int p, int max_size) {
  if (support.empty()) {
    if (max_size < 1 || p < 1) return false;
    support = {0};
    return true;
  }
  const int k = static_cast<int>(support.size());
  for (int i = k - 1; i >= 0; --i) {
    if (support[i] < p - (k - i)) {
      ++support[i];
      for (int r = i + 1; r < k; ++r) support[r] = support[r - 1] + 1;
      return true;
    }
  }
  if (k >= max_size || k >= p) return false;
  support.resize(k + 1);
  for (int i = 0; i <= k; ++i) support[i] = i;
  return true;
}

}  // namespace lassopath::detail
