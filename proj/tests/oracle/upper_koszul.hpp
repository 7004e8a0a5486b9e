#pragma once

// Independent Betti-number oracle for tests: beta_{i,alpha}(I) is the rank
// of reduced homology H_{i-1} of the upper Koszul complex
// K^alpha = { S subset of variables : x^(alpha - S) in I }.
// Shares no code with the library beyond the standard library and GMP.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Deg = std::vector<int>;
using Table = std::map<std::pair<int, Deg>, int>;

inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  auto inv = [p](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : m) {
    for (auto& x : row) x = ((x % p) + p) % p;
  }
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    auto iv = inv(m[rank][c]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      auto f = m[r][c] * iv % p;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_rational(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline bool in_ideal(const std::vector<Deg>& gens, const Deg& a) {
  for (const auto& g : gens) {
    bool div = true;
    for (std::size_t i = 0; i < a.size(); ++i) div = div && g[i] <= a[i];
    if (div) return true;
  }
  return false;
}

/// Reduced homology ranks of K^alpha, index k holding dimension k - 1.
inline std::vector<std::size_t> upper_koszul_homology(const std::vector<Deg>& gens, const Deg& alpha,
                                                      std::uint64_t p) {
  const std::size_t m = alpha.size();
  std::vector<std::vector<unsigned>> faces(m + 1);  // by cardinality
  for (unsigned s = 0; s < (1u << m); ++s) {
    Deg b = alpha;
    bool ok = true;
    std::size_t size = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (s >> i & 1u) {
        ++size;
        if (--b[i] < 0) ok = false;
      }
    }
    if (ok && in_ideal(gens, b)) faces[size].push_back(s);
  }
  // boundary from cardinality k to k - 1
  std::vector<std::size_t> rk(m + 2, 0);
  for (std::size_t k = 1; k <= m; ++k) {
    if (faces[k].empty() || faces[k - 1].empty()) continue;
    std::map<unsigned, std::size_t> row;
    for (std::size_t i = 0; i < faces[k - 1].size(); ++i) row[faces[k - 1][i]] = i;
    std::vector<std::vector<std::int64_t>> d(faces[k - 1].size(), std::vector<std::int64_t>(faces[k].size(), 0));
    for (std::size_t j = 0; j < faces[k].size(); ++j) {
      int sign = 1;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(faces[k][j] >> i & 1u)) continue;
        d[row.at(faces[k][j] & ~(1u << i))][j] = sign;
        sign = -sign;
      }
    }
    if (p) {
      rk[k] = rank_mod_p(d, static_cast<std::int64_t>(p));
    } else {
      std::vector<std::vector<mpq_class>> q(d.size(), std::vector<mpq_class>(d.empty() ? 0 : d[0].size()));
      for (std::size_t r = 0; r < d.size(); ++r) {
        for (std::size_t c = 0; c < d[r].size(); ++c) q[r][c] = static_cast<long>(d[r][c]);
      }
      rk[k] = rank_rational(q);
    }
  }
  std::vector<std::size_t> h(m + 1, 0);
  for (std::size_t k = 0; k <= m; ++k) h[k] = faces[k].size() - rk[k] - rk[k + 1];
  return h;
}

/// Multigraded Betti numbers of the ideal (homological degree 0 = generators).
inline Table betti(const std::vector<Deg>& gens, std::uint64_t p) {
  std::set<Deg> lattice;
  for (const auto& g : gens) {
    std::set<Deg> fresh{g};
    for (const auto& x : lattice) {
      Deg j(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) j[i] = std::max(g[i], x[i]);
      fresh.insert(j);
    }
    lattice.insert(fresh.begin(), fresh.end());
  }
  Table t;
  for (const auto& alpha : lattice) {
    auto h = upper_koszul_homology(gens, alpha, p);
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k]) t[{static_cast<int>(k), alpha}] = static_cast<int>(h[k]);
    }
  }
  return t;
}

}  // namespace oracle
