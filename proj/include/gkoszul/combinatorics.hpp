#pragma once

// Subset / multiset enumeration used for exterior, symmetric and divided
// power bases, plus the binomial convention shared by all length formulas.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gkoszul {

// C(a, b) with C(a, b) = 0 whenever a < 0, b < 0 or a < b.
inline std::int64_t binomial(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  std::int64_t acc = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    acc = acc * (a - b + i);
    if (acc % i != 0) throw std::logic_error("binomial: non-integral step");
    acc /= i;
  }
  return acc;
}

// All k-subsets of {0,...,n-1} as strictly increasing index vectors,
// in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (k == 0) out.assign(1, {});
  return out;
}

// All multisets of size p over {0,...,n-1} as weakly increasing index
// vectors, in lexicographic order. For n = 0 only p = 0 contributes.
inline std::vector<std::vector<int>> multisets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0) return out;
  if (p == 0) {
    out.assign(1, {});
    return out;
  }
  if (n == 0) return out;
  std::vector<int> cur(p, 0);
  while (true) {
    out.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j) cur[j] = cur[i];
  }
  return out;
}

// Exponent-vector form of a multiset over {0,...,n-1}.
inline std::vector<int> multiset_to_exponents(const std::vector<int>& ms, int n) {
  std::vector<int> e(n, 0);
  for (int i : ms) e[i]++;
  return e;
}

// Sign of moving index i in front of the sorted set S, i.e. (-1)^{#{s in S : s < i}}.
inline int wedge_insert_sign(const std::vector<int>& s, int i) {
  int cnt = 0;
  for (int x : s)
    if (x < i) ++cnt;
  return (cnt % 2 == 0) ? 1 : -1;
}

// Position of i in the sorted vector, or -1.
inline int index_of(const std::vector<int>& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i);
  if (it == v.end() || *it != i) return -1;
  return static_cast<int>(it - v.begin());
}

// Permutation sign of an arbitrary sequence of distinct integers.
inline int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

}  // namespace gkoszul
