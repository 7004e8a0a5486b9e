#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monores/graded_complex.hpp"
#include "monores/monomials.hpp"
#include "monores/posets.hpp"

namespace monores {

struct RigidityReport {
  bool rigid = true;
  /// Violating homological degree and degree(s); second is set for a
  /// comparable pair, empty when some beta exceeds 1.
  std::optional<int> degree;
  Multidegree first;
  std::optional<Multidegree> second;
  int beta = 0;

  std::string describe() const {
    if (rigid) return "rigid";
    if (!second) return "beta_{" + std::to_string(*degree) + "," + format_degree(first) + "} = " + std::to_string(beta);
    return "comparable in degree " + std::to_string(*degree) + ": " + format_degree(first) + " < " +
           format_degree(*second);
  }
};

/// Every nonzero Betti number is 1, and the degrees within one homological
/// degree are pairwise incomparable.
inline RigidityReport is_rigid(const BettiTable& t) {
  RigidityReport r;
  std::map<int, std::vector<Multidegree>> by_degree;
  for (const auto& [key, beta] : t) {
    if (beta == 0) continue;
    if (beta != 1) {
      r.rigid = false;
      r.degree = key.first;
      r.first = key.second;
      r.beta = beta;
      return r;
    }
    by_degree[key.first].push_back(key.second);
  }
  for (const auto& [i, degs] : by_degree) {
    for (const auto& x : degs) {
      for (const auto& y : degs) {
        if (strictly_below(x, y)) {
          r.rigid = false;
          r.degree = i;
          r.first = x;
          r.second = y;
          r.beta = 1;
          return r;
        }
      }
    }
  }
  return r;
}

/// Distinct degrees carrying a nonzero Betti number, ordered coordinate-wise;
/// ids follow the sorted order of the degrees.
inline Poset betti_poset(const BettiTable& t) {
  std::vector<Multidegree> degs;
  for (const auto& [key, beta] : t) {
    if (beta != 0) degs.push_back(key.second);
  }
  std::sort(degs.begin(), degs.end());
  degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
  std::vector<Id> ids;
  std::vector<std::pair<Id, Id>> rel;
  for (std::size_t i = 0; i < degs.size(); ++i) {
    ids.push_back(static_cast<Id>(i));
    for (std::size_t j = 0; j < degs.size(); ++j) {
      if (strictly_below(degs[i], degs[j])) rel.emplace_back(static_cast<Id>(i), static_cast<Id>(j));
    }
  }
  return Poset(std::move(ids), rel, std::move(degs));
}

namespace detail {

/// Positions in the Betti poset of the degrees of p, or nothing when the
/// degree map is not a bijection.
inline std::optional<std::vector<std::size_t>> degree_bijection(const Poset& p, const Poset& betti) {
  if (!p.has_degrees() || p.size() != betti.size()) return std::nullopt;
  std::map<Multidegree, std::size_t> where;
  for (std::size_t i = 0; i < betti.size(); ++i) where[betti.degree(i)] = i;
  std::vector<std::size_t> to(p.size());
  std::vector<char> hit(betti.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = where.find(p.degree(i));
    if (it == where.end() || hit[it->second]) return std::nullopt;
    hit[it->second] = 1;
    to[i] = it->second;
  }
  return to;
}

}  // namespace detail

/// The degree map is a bijection onto the Betti poset and x < y implies
/// deg x < deg y.
inline bool degree_map_is_monotone_bijection(const Poset& p, const Poset& betti) {
  auto to = detail::degree_bijection(p, betti);
  if (!to) return false;
  for (const auto& [x, y] : p.relations()) {
    if (!betti.less((*to)[p.index(x)], (*to)[p.index(y)])) return false;
  }
  return true;
}

/// The degree map is an order isomorphism from p onto the Betti poset.
inline bool degree_map_is_isomorphism(const Poset& p, const Poset& betti) {
  auto to = detail::degree_bijection(p, betti);
  if (!to) return false;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p.less(x, y) != betti.less((*to)[x], (*to)[y])) return false;
    }
  }
  return true;
}

struct RigidHcwCheck {
  BettiTable table;
  RigidityReport rigidity;
  bool betti_poset_hcw = false;
  bool agree() const { return rigidity.rigid == betti_poset_hcw; }
};

inline RigidHcwCheck rigid_vs_hcw(const MonomialIdeal& ideal, const FieldSpec& field,
                                  std::size_t cap = kDefaultTaylorCap) {
  RigidHcwCheck out;
  out.table = betti_table(minimal_resolution(ideal, field, cap));
  out.rigidity = is_rigid(out.table);
  out.betti_poset_hcw = is_hcw(betti_poset(out.table), field);
  return out;
}

/// The ideal is rigid exactly when its Betti poset is an hcw-poset.
inline bool check_rigid_iff_hcw(const MonomialIdeal& ideal, const FieldSpec& field,
                                std::size_t cap = kDefaultTaylorCap) {
  return rigid_vs_hcw(ideal, field, cap).agree();
}

}  // namespace monores
