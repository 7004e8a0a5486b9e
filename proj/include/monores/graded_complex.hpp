#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monores/error.hpp"
#include "monores/exactla.hpp"
#include "monores/monomials.hpp"
#include "monores/scalar.hpp"

namespace monores {

using Id = int;

struct BasisElement {
  Id id = 0;
  Multidegree degree;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Chain complex of Z^m-graded free modules with homogeneous bases.
///
/// Only the scalar part of each matrix entry is stored: a nonzero entry in
/// row c and column b of f_n stands for scalar * x^(deg b - deg c), and the
/// constructor rejects entries where deg c is not below deg b. Index 0 of the
/// differential list is unused; f_n maps degree n to degree n-1.
class GradedFreeComplex {
 public:
  GradedFreeComplex() = default;

  GradedFreeComplex(std::size_t num_vars, FieldSpec field, std::vector<std::vector<BasisElement>> basis,
                    std::vector<SparseMatrix> differentials)
      : num_vars_(num_vars), field_(field), basis_(std::move(basis)), d_(std::move(differentials)) {
    field_.validate();
    while (!basis_.empty() && basis_.back().empty()) basis_.pop_back();
    d_.resize(std::max<std::size_t>(basis_.size(), 1));
    d_[0] = SparseMatrix();
    std::set<Id> seen;
    for (std::size_t n = 0; n < basis_.size(); ++n) {
      for (const auto& b : basis_[n]) {
        if (!seen.insert(b.id).second) throw Error(ErrorKind::ShapeError, "duplicate basis id " + std::to_string(b.id));
        if (b.degree.size() != num_vars_) throw Error(ErrorKind::ShapeError, "basis degree has wrong length");
        for (int e : b.degree) {
          if (e < 0) throw Error(ErrorKind::ShapeError, "negative multidegree");
        }
      }
    }
    for (std::size_t n = 1; n < basis_.size(); ++n) {
      auto& m = d_[n];
      if (m.rows() == 0 && m.cols() == 0) m = SparseMatrix(basis_[n - 1].size(), basis_[n].size());
      if (m.rows() != basis_[n - 1].size() || m.cols() != basis_[n].size()) {
        throw Error(ErrorKind::ShapeError, "differential " + std::to_string(n) + " has the wrong shape");
      }
      SparseMatrix coerced(m.rows(), m.cols());
      m.for_each([&](std::size_t r, std::size_t c, const Scalar& v) {
        if (!divides(basis_[n - 1][r].degree, basis_[n][c].degree)) {
          throw Error(ErrorKind::ShapeError, "non-homogeneous entry in differential " + std::to_string(n) +
                                                 " at ids (" + std::to_string(basis_[n - 1][r].id) + ", " +
                                                 std::to_string(basis_[n][c].id) + ")");
        }
        coerced.set(r, c, field_.coerce(v));
      });
      m = std::move(coerced);
    }
  }

  std::size_t num_vars() const { return num_vars_; }
  const FieldSpec& field() const { return field_; }
  /// Number of homological degrees (length + 1); zero for the empty complex.
  std::size_t num_degrees() const { return basis_.size(); }
  const std::vector<BasisElement>& basis(std::size_t n) const {
    static const std::vector<BasisElement> empty;
    return n < basis_.size() ? basis_[n] : empty;
  }
  const SparseMatrix& differential(std::size_t n) const {
    static const SparseMatrix empty;
    if (n == 0 || n >= d_.size()) return empty;
    return d_[n];
  }

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& b : basis_) r.push_back(b.size());
    return r;
  }

  /// Homological degree and position of a basis id.
  std::optional<std::pair<std::size_t, std::size_t>> locate(Id id) const {
    for (std::size_t n = 0; n < basis_.size(); ++n) {
      for (std::size_t i = 0; i < basis_[n].size(); ++i) {
        if (basis_[n][i].id == id) return std::make_pair(n, i);
      }
    }
    return std::nullopt;
  }

  /// Exponent of the monomial in entry (row, col) of f_n.
  Multidegree entry_exponent(std::size_t n, std::size_t row, std::size_t col) const {
    return difference(basis_[n][col].degree, basis_[n - 1][row].degree);
  }

  /// Generators of the ideal resolved: the degrees of the degree-0 basis.
  MonomialIdeal resolved_ideal() const {
    std::vector<Multidegree> gens;
    for (const auto& b : basis(0)) gens.push_back(b.degree);
    return minimalize(std::move(gens));
  }

  /// Throws NotAComplex when some f_n f_{n+1} is nonzero.
  void check_complex() const {
    for (std::size_t n = 1; n + 1 < basis_.size(); ++n) {
      if (!(d_[n] * d_[n + 1]).is_zero()) {
        throw Error(ErrorKind::NotAComplex, "composite of differentials " + std::to_string(n) + " and " +
                                                std::to_string(n + 1) + " is nonzero");
      }
    }
  }

  bool is_minimal() const {
    for (std::size_t n = 1; n < basis_.size(); ++n) {
      bool unit = false;
      d_[n].for_each([&](std::size_t r, std::size_t c, const Scalar&) {
        if (basis_[n - 1][r].degree == basis_[n][c].degree) unit = true;
      });
      if (unit) return false;
    }
    return true;
  }

 private:
  std::size_t num_vars_ = 0;
  FieldSpec field_;
  std::vector<std::vector<BasisElement>> basis_;
  std::vector<SparseMatrix> d_;
};

/// Chain complex of vector spaces, augmented: d[0] maps degree 0 onto the
/// target k (one row, or zero rows when degree 0 is empty).
struct BarComplex {
  FieldSpec field;
  std::vector<std::vector<Id>> ids;
  std::vector<SparseMatrix> d;

  std::size_t num_degrees() const { return ids.size(); }

  /// Ranks of homology in degrees -1, 0, 1, ...; index 0 is degree -1.
  std::vector<std::size_t> homology_ranks() const {
    std::vector<std::size_t> rk(ids.size() + 1, 0);
    for (std::size_t n = 0; n < ids.size(); ++n) rk[n] = rank(d[n], field);
    std::vector<std::size_t> h;
    std::size_t target = ids.empty() ? 0 : d[0].rows();
    h.push_back(target - (ids.empty() ? 0 : rk[0]));
    for (std::size_t n = 0; n < ids.size(); ++n) h.push_back(ids[n].size() - rk[n] - rk[n + 1]);
    return h;
  }

  bool is_exact() const {
    auto h = homology_ranks();
    return std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; });
  }

  std::optional<std::size_t> position(std::size_t n, Id id) const {
    auto it = std::find(ids[n].begin(), ids[n].end(), id);
    if (it == ids[n].end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids[n].begin());
  }
};

using BettiTable = std::map<std::pair<int, Multidegree>, int>;

inline std::vector<int> betti_totals(const BettiTable& t) {
  std::vector<int> totals;
  for (const auto& [key, beta] : t) {
    if (static_cast<std::size_t>(key.first) >= totals.size()) totals.resize(key.first + 1, 0);
    totals[key.first] += beta;
  }
  return totals;
}

namespace detail {

inline SparseMatrix augmentation_row(std::size_t n0, const FieldSpec& f) {
  SparseMatrix a(n0 ? 1 : 0, n0);
  for (std::size_t i = 0; i < n0; ++i) a.set(0, i, f.one());
  return a;
}

}  // namespace detail

/// Erases every monomial factor; the augmentation sends each generator to 1.
inline BarComplex bar_reduce(const GradedFreeComplex& c) {
  BarComplex bar{c.field(), {}, {}};
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    std::vector<Id> ids;
    for (const auto& b : c.basis(n)) ids.push_back(b.id);
    bar.ids.push_back(std::move(ids));
  }
  if (c.num_degrees() == 0) return bar;
  bar.d.push_back(detail::augmentation_row(c.basis(0).size(), c.field()));
  for (std::size_t n = 1; n < c.num_degrees(); ++n) bar.d.push_back(c.differential(n));
  return bar;
}

/// Homogeneous component of degree alpha: basis elements of degree <= alpha.
inline BarComplex strand(const GradedFreeComplex& c, const Multidegree& alpha) {
  BarComplex s{c.field(), {}, {}};
  std::vector<std::vector<std::size_t>> keep(c.num_degrees());
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    std::vector<Id> ids;
    for (std::size_t i = 0; i < c.basis(n).size(); ++i) {
      if (divides(c.basis(n)[i].degree, alpha)) {
        keep[n].push_back(i);
        ids.push_back(c.basis(n)[i].id);
      }
    }
    s.ids.push_back(std::move(ids));
  }
  if (c.num_degrees() == 0) return s;
  s.d.push_back(detail::augmentation_row(keep[0].size(), c.field()));
  for (std::size_t n = 1; n < c.num_degrees(); ++n) s.d.push_back(c.differential(n).select(keep[n - 1], keep[n]));
  return s;
}

inline constexpr std::size_t kDefaultTaylorCap = 16;

/// Taylor resolution: one basis element per nonempty subset of generators,
/// labelled by the lcm; f(S) = sum_j (-1)^j (S minus its j-th element).
inline GradedFreeComplex taylor_complex(const MonomialIdeal& ideal, const FieldSpec& field,
                                        std::size_t cap = kDefaultTaylorCap) {
  field.validate();
  const std::size_t r = ideal.size();
  if (r > cap) {
    throw Error(ErrorKind::TooLarge, std::to_string(r) + " generators exceed the Taylor cap of " + std::to_string(cap));
  }
  const auto& gens = ideal.generators();
  std::vector<std::vector<std::vector<std::size_t>>> subsets(r);
  // combinations in lexicographic order, by size
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      subsets[k - 1].push_back(comb);
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == r - k + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::vector<std::vector<BasisElement>> basis(r);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(r);
  Id next = 0;
  for (std::size_t n = 0; n < r; ++n) {
    for (std::size_t i = 0; i < subsets[n].size(); ++i) {
      Multidegree deg(ideal.num_vars(), 0);
      for (auto g : subsets[n][i]) deg = lcm(deg, gens[g]);
      basis[n].push_back({next++, deg});
      index[n][subsets[n][i]] = i;
    }
  }
  std::vector<SparseMatrix> d(r);
  for (std::size_t n = 1; n < r; ++n) {
    d[n] = SparseMatrix(subsets[n - 1].size(), subsets[n].size());
    for (std::size_t c = 0; c < subsets[n].size(); ++c) {
      const auto& s = subsets[n][c];
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        d[n].set(index[n - 1].at(face), c, field.from_int(j % 2 ? -1 : 1));
      }
    }
  }
  return GradedFreeComplex(ideal.num_vars(), field, std::move(basis), std::move(d));
}

/// Cancels unit entries (equal row and column degree) until none remain.
///
/// Entries are scanned with the lowest homological degree first and, within a
/// differential, in row-major order of the current bases. Cancelling the pair
/// (c, b) with unit u in f_n replaces f_n by D - s u^-1 r on the remaining
/// bases and restricts f_{n-1} and f_{n+1}.
inline GradedFreeComplex minimize(const GradedFreeComplex& c) {
  c.check_complex();
  const std::size_t L = c.num_degrees();
  // ordered live bases and column maps keyed by position in the original basis
  std::vector<std::vector<bool>> alive(L);
  std::vector<std::map<std::size_t, std::map<std::size_t, Scalar>>> cols(L);
  for (std::size_t n = 0; n < L; ++n) alive[n].assign(c.basis(n).size(), true);
  for (std::size_t n = 1; n < L; ++n) {
    c.differential(n).for_each([&](std::size_t r, std::size_t col, const Scalar& v) { cols[n][col][r] = v; });
  }
  std::size_t n = 1;
  while (n < L) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (const auto& [b, col] : cols[n]) {
      for (const auto& [r, v] : col) {
        if (c.basis(n - 1)[r].degree != c.basis(n)[b].degree) continue;
        if (!unit || std::make_pair(r, b) < *unit) unit = std::make_pair(r, b);
        break;  // rows ascend within a column; later rows of this column cannot win
      }
    }
    if (!unit) {
      ++n;
      continue;
    }
    auto [row, b] = *unit;
    const Scalar u = cols[n][b].at(row);
    const auto pivot_col = cols[n][b];
    for (auto& [b2, col] : cols[n]) {
      if (b2 == b) continue;
      auto it = col.find(row);
      if (it == col.end()) continue;
      Scalar factor = it->second / u;
      for (const auto& [r, v] : pivot_col) {
        Scalar nv = col.count(r) ? col[r] - factor * v : -(factor * v);
        if (nv.is_zero()) {
          col.erase(r);
        } else {
          col[r] = nv;
        }
      }
    }
    cols[n].erase(b);
    for (auto it = cols[n].begin(); it != cols[n].end();) {
      it->second.erase(row);
      it = it->second.empty() ? cols[n].erase(it) : std::next(it);
    }
    if (n + 1 < L) {
      for (auto it = cols[n + 1].begin(); it != cols[n + 1].end();) {
        it->second.erase(b);
        it = it->second.empty() ? cols[n + 1].erase(it) : std::next(it);
      }
    }
    if (n >= 2) cols[n - 1].erase(row);
    alive[n][b] = false;
    alive[n - 1][row] = false;
  }
  std::vector<std::vector<BasisElement>> basis(L);
  std::vector<std::vector<std::size_t>> new_pos(L);
  for (std::size_t k = 0; k < L; ++k) {
    new_pos[k].assign(c.basis(k).size(), 0);
    for (std::size_t i = 0; i < c.basis(k).size(); ++i) {
      if (!alive[k][i]) continue;
      new_pos[k][i] = basis[k].size();
      basis[k].push_back(c.basis(k)[i]);
    }
  }
  std::vector<SparseMatrix> d(L);
  for (std::size_t k = 1; k < L; ++k) {
    d[k] = SparseMatrix(basis[k - 1].size(), basis[k].size());
    for (const auto& [b, col] : cols[k]) {
      for (const auto& [r, v] : col) d[k].set(new_pos[k - 1][r], new_pos[k][b], v);
    }
  }
  return GradedFreeComplex(c.num_vars(), c.field(), std::move(basis), std::move(d));
}

inline BettiTable betti_table(const GradedFreeComplex& c) {
  if (!c.is_minimal()) throw Error(ErrorKind::NotMinimal, "complex has a unit entry");
  BettiTable t;
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    for (const auto& b : c.basis(n)) ++t[{static_cast<int>(n), b.degree}];
  }
  return t;
}

struct ResolutionReport {
  bool ok = true;
  std::optional<Multidegree> failing_degree;
  /// Homology ranks (degree -1 first) of the failing strand.
  std::vector<std::size_t> failing_homology;
  std::size_t strands_checked = 0;
};

/// Strand-wise exactness over the lcm lattice of the ideal generated by the
/// degree-0 labels, together with every label degree.
inline ResolutionReport is_resolution(const GradedFreeComplex& c) {
  c.check_complex();
  ResolutionReport report;
  if (c.num_degrees() == 0) {
    report.ok = false;
    return report;
  }
  auto degrees = lcm_lattice(c.resolved_ideal());
  std::set<Multidegree> all(degrees.begin(), degrees.end());
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    for (const auto& b : c.basis(n)) all.insert(b.degree);
  }
  for (const auto& alpha : all) {
    ++report.strands_checked;
    auto h = strand(c, alpha).homology_ranks();
    if (std::any_of(h.begin(), h.end(), [](std::size_t x) { return x != 0; })) {
      report.ok = false;
      report.failing_degree = alpha;
      report.failing_homology = h;
      return report;
    }
  }
  return report;
}

/// Minimal free resolution of I, via minimisation of the Taylor complex.
inline GradedFreeComplex minimal_resolution(const MonomialIdeal& ideal, const FieldSpec& field,
                                            std::size_t cap = kDefaultTaylorCap) {
  return minimize(taylor_complex(ideal, field, cap));
}

}  // namespace monores
