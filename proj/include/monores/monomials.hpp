#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "monores/error.hpp"

namespace monores {

/// Exponent vector of a monomial; also used as a Z^m multidegree.
using Multidegree = std::vector<int>;

inline void check_same_length(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeError, "multidegree length mismatch");
}

inline Multidegree lcm(const Multidegree& a, const Multidegree& b) {
  check_same_length(a, b);
  Multidegree out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

/// Coordinate-wise a <= b, i.e. x^a divides x^b.
inline bool divides(const Multidegree& a, const Multidegree& b) {
  check_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline bool strictly_below(const Multidegree& a, const Multidegree& b) { return a != b && divides(a, b); }

inline Multidegree difference(const Multidegree& a, const Multidegree& b) {
  check_same_length(a, b);
  Multidegree out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline bool is_zero_degree(const Multidegree& a) {
  return std::all_of(a.begin(), a.end(), [](int e) { return e == 0; });
}

inline std::string format_degree(const Multidegree& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

/// A monomial ideal, held as its minimal generating set in lexicographic order.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Multidegree>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  bool contains(const Multidegree& a) const {
    return std::any_of(generators_.begin(), generators_.end(), [&](const Multidegree& g) { return divides(g, a); });
  }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  friend MonomialIdeal minimalize(std::vector<Multidegree> generators);
  std::size_t num_vars_ = 0;
  std::vector<Multidegree> generators_;
};

inline MonomialIdeal minimalize(std::vector<Multidegree> generators) {
  if (generators.empty()) throw Error(ErrorKind::EmptyIdeal, "no generators given");
  const std::size_t m = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != m) throw Error(ErrorKind::ShapeError, "generators have different lengths");
    for (int e : g) {
      if (e < 0) throw Error(ErrorKind::ShapeError, "negative exponent");
    }
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  MonomialIdeal ideal;
  ideal.num_vars_ = m;
  for (const auto& g : generators) {
    bool redundant = std::any_of(generators.begin(), generators.end(),
                                 [&](const Multidegree& h) { return h != g && divides(h, g); });
    if (!redundant) ideal.generators_.push_back(g);
  }
  return ideal;
}

/// Joins of all nonempty subsets of generators, deduplicated and sorted.
inline std::vector<Multidegree> lcm_lattice(const MonomialIdeal& ideal) {
  std::set<Multidegree> lattice;
  for (const auto& g : ideal.generators()) {
    std::vector<Multidegree> fresh{g};
    for (const auto& x : lattice) fresh.push_back(lcm(x, g));
    lattice.insert(fresh.begin(), fresh.end());
  }
  return {lattice.begin(), lattice.end()};
}

/// Closure of a set of degrees under pairwise join.
inline std::vector<Multidegree> join_closure(const std::vector<Multidegree>& degrees) {
  std::set<Multidegree> closed;
  for (const auto& g : degrees) {
    if (closed.count(g)) continue;
    std::vector<Multidegree> fresh{g};
    for (const auto& x : closed) fresh.push_back(lcm(x, g));
    closed.insert(fresh.begin(), fresh.end());
  }
  return {closed.begin(), closed.end()};
}

}  // namespace monores
