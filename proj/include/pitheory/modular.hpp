#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pitheory/primes.hpp"

namespace pitheory::modular {

using u64 = std::uint64_t;
using Matrix = std::vector<std::vector<u64>>;

inline u64 mul(u64 a, u64 b, u64 q) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % q); }
inline u64 add(u64 a, u64 b, u64 q) { return (a + b) % q; }
inline u64 sub(u64 a, u64 b, u64 q) { return (a + q - b) % q; }

inline u64 pow(u64 a, u64 e, u64 q) {
  u64 r = 1 % q;
  a %= q;
  while (e > 0) {
    if (e & 1) r = mul(r, a, q);
    a = mul(a, a, q);
    e >>= 1;
  }
  return r;
}

inline u64 inv(u64 a, u64 q) { return pow(a, q - 2, q); }

inline u64 primitive_root(u64 q) {
  const auto factors = prime_divisors(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (auto p : factors) {
      if (pow(g, (q - 1) / p, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

/// Characteristic polynomial (lowest degree first, monic) via reduction to
/// upper Hessenberg form.
inline std::vector<u64> characteristic_polynomial(Matrix h, u64 q) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    const u64 pivot_inv = inv(h[m][m - 1], q);
    for (std::size_t r = m + 1; r < n; ++r) {
      const u64 u = mul(h[r][m - 1], pivot_inv, q);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h[r][c] = sub(h[r][c], mul(u, h[m][c], q), q);
      for (std::size_t c = 0; c < n; ++c) h[c][m] = add(h[c][m], mul(u, h[c][r], q), q);
    }
  }
  std::vector<std::vector<u64>> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 0; m < n; ++m) {
    // p[m+1] = (x - h[m][m]) p[m] - sum_i t_i h[m-i][m] p[m-i]
    std::vector<u64> next(m + 2, 0);
    for (std::size_t k = 0; k <= m; ++k) {
      next[k + 1] = add(next[k + 1], p[m][k], q);
      next[k] = sub(next[k], mul(h[m][m], p[m][k], q), q);
    }
    u64 t = 1;
    for (std::size_t i = 1; i <= m; ++i) {
      t = mul(t, h[m - i + 1][m - i], q);
      const u64 f = mul(t, h[m - i][m], q);
      if (f == 0) continue;
      for (std::size_t k = 0; k < p[m - i].size(); ++k) next[k] = sub(next[k], mul(f, p[m - i][k], q), q);
    }
    p[m + 1] = std::move(next);
  }
  return p[n];
}

inline u64 evaluate(const std::vector<u64>& poly, u64 x, u64 q) {
  u64 r = 0;
  for (std::size_t k = poly.size(); k-- > 0;) r = add(mul(r, x, q), poly[k], q);
  return r;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& m, u64 q) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const u64 s = inv(m[r][c], q);
    for (auto& x : m[r]) x = mul(x, s, q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const u64 f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = sub(m[i][k], mul(f, m[r][k], q), q);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Basis (as rows) of the right null space of m.
inline Matrix null_space(Matrix m, std::size_t cols, u64 q) {
  const auto pivots = row_reduce(m, q);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = sub(0, m[r][free], q);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace pitheory::modular
