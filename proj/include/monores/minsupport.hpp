#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "monores/error.hpp"
#include "monores/exactla.hpp"
#include "monores/graded_complex.hpp"

namespace monores {

/// Ids of the nonzero entries in the column of f_n belonging to basis id b.
inline std::vector<Id> boundary_support(const GradedFreeComplex& c, Id b) {
  auto loc = c.locate(b);
  if (!loc) throw Error(ErrorKind::NotFound, "no basis element with id " + std::to_string(b));
  auto [n, pos] = *loc;
  if (n == 0) throw Error(ErrorKind::ShapeError, "degree-0 elements have no boundary support");
  std::vector<Id> out;
  for (const auto& [r, v] : c.differential(n).column(pos)) out.push_back(c.basis(n - 1)[r].id);
  std::sort(out.begin(), out.end());
  return out;
}

/// z lies in F_n of the bar complex; true iff no nonzero cycle has support
/// strictly inside supp(z). Decided by one rank computation: the restriction
/// of the degree-n differential to supp(z) must have a one-dimensional kernel.
inline bool is_minimal_support_cycle(const BarComplex& bar, std::size_t n, const Vector& z) {
  const auto& dn = bar.d.at(n);
  if (z.size() != dn.cols()) throw Error(ErrorKind::ShapeError, "cycle has the wrong length");
  if (!is_zero_vector(dn.apply(z))) throw Error(ErrorKind::NotACycle, "vector is not in the kernel");
  auto s = support_of(z);
  if (s.empty()) return true;
  return rank(dn.select_columns(s), bar.field) + 1 == s.size();
}

/// A kernel vector of d restricted to `within` whose support is
/// inclusion-minimal, found by dropping positions in the given order while a
/// nonzero kernel survives. `within` must carry a nonzero kernel.
inline Vector shrink_support(const SparseMatrix& d, std::vector<std::size_t> within, const FieldSpec& field) {
  auto kernel_on = [&](const std::vector<std::size_t>& cols) { return kernel_basis(d.select_columns(cols), field); };
  const auto order = within;
  for (std::size_t c : order) {
    std::vector<std::size_t> trial;
    for (auto x : within) {
      if (x != c) trial.push_back(x);
    }
    if (!trial.empty() && !kernel_on(trial).empty()) within = std::move(trial);
  }
  auto kernel = kernel_on(within);
  if (kernel.size() != 1) throw Error(ErrorKind::VerificationFailed, "support shrinking did not reach a circuit");
  Vector z(d.cols(), field.zero());
  for (std::size_t i = 0; i < within.size(); ++i) z[within[i]] = kernel[0][i];
  return z;
}

struct BasisChangeStep {
  enum class Kind { ReplaceByWitness, CombineWithWitness };
  Kind kind = Kind::ReplaceByWitness;
  std::size_t degree = 0;
  Id replaced = 0;
  /// New element as sum of coeff * x^exponent * old basis element.
  struct Term {
    Id id;
    Scalar coeff;
    Multidegree exponent;
  };
  std::vector<Term> terms;
};

using BasisChangeLog = std::vector<BasisChangeStep>;

inline bool has_minimal_support_basis(const GradedFreeComplex& c) {
  auto bar = bar_reduce(c);
  for (std::size_t n = 1; n < c.num_degrees(); ++n) {
    for (std::size_t j = 0; j < c.basis(n).size(); ++j) {
      Vector z(c.basis(n - 1).size(), c.field().zero());
      for (const auto& [r, v] : c.differential(n).column(j)) z[r] = v;
      if (!is_minimal_support_cycle(bar, n - 1, z)) return false;
    }
  }
  return true;
}

namespace detail {

inline std::vector<std::size_t> by_ascending_id(const std::vector<BasisElement>& basis,
                                                std::vector<std::size_t> positions) {
  std::sort(positions.begin(), positions.end(),
            [&](std::size_t a, std::size_t b) { return basis[a].id < basis[b].id; });
  return positions;
}

}  // namespace detail

/// Turns the basis of a minimal resolution into one with minimal boundary
/// support, degree by degree, keeping B_0. Each non-minimal column f(b') is
/// improved by lifting a smaller-support cycle z' of the bar complex to
/// degree alpha (the join of its support degrees), solving f(w) = z' in the
/// degree-alpha strand, and then either replacing b' by w (when b' occurs in
/// w) or by a'_b b' - a_b x^(deg b' - alpha) w, which kills the coefficient of
/// b in f(b').
inline std::pair<GradedFreeComplex, BasisChangeLog> make_minimal_support_basis(const GradedFreeComplex& c) {
  if (!c.is_minimal()) throw Error(ErrorKind::NotMinimal, "input has a unit entry");
  c.check_complex();
  const auto& field = c.field();
  const std::size_t L = c.num_degrees();
  std::vector<std::vector<BasisElement>> basis(L);
  std::vector<SparseMatrix> d(L);
  for (std::size_t n = 0; n < L; ++n) basis[n] = c.basis(n);
  for (std::size_t n = 1; n < L; ++n) d[n] = c.differential(n);
  BasisChangeLog log;

  auto lower_map = [&](std::size_t k) {
    return k == 0 ? detail::augmentation_row(basis[0].size(), field) : d[k];
  };

  for (std::size_t k = 0; k + 1 < L; ++k) {
    const std::size_t n = k + 1;
    const SparseMatrix fk = lower_map(k);
    std::vector<std::size_t> cols(basis[n].size());
    std::iota(cols.begin(), cols.end(), 0);
    for (std::size_t j : detail::by_ascending_id(basis[n], cols)) {
      while (true) {
        Vector z(basis[k].size(), field.zero());
        for (const auto& [r, v] : d[n].column(j)) z[r] = v;
        auto s = support_of(z);
        if (rank(fk.select_columns(s), field) + 1 == s.size()) break;

        auto z_small = shrink_support(fk, detail::by_ascending_id(basis[k], s), field);
        auto s_small = support_of(z_small);
        Multidegree alpha(c.num_vars(), 0);
        for (auto i : s_small) alpha = lcm(alpha, basis[k][i].degree);

        std::vector<std::size_t> strand_cols;
        for (std::size_t i = 0; i < basis[n].size(); ++i) {
          if (divides(basis[n][i].degree, alpha)) strand_cols.push_back(i);
        }
        auto sol = solve(d[n].select_columns(strand_cols), z_small, field);
        if (!sol) throw Error(ErrorKind::VerificationFailed, "lifted cycle is not a boundary in its strand");
        Vector gamma(basis[n].size(), field.zero());
        for (std::size_t i = 0; i < strand_cols.size(); ++i) gamma[strand_cols[i]] = (*sol)[i];

        BasisChangeStep step;
        step.degree = n;
        step.replaced = basis[n][j].id;
        if (!gamma[j].is_zero()) {
          step.kind = BasisChangeStep::Kind::ReplaceByWitness;
          if (basis[n][j].degree != alpha) {
            throw Error(ErrorKind::VerificationFailed, "witness degree differs from the replaced element");
          }
        } else {
          step.kind = BasisChangeStep::Kind::CombineWithWitness;
          std::size_t b = s_small.front();
          for (auto i : s_small) {
            if (basis[k][i].id < basis[k][b].id) b = i;
          }
          Scalar a_small = z_small[b], a_big = z[b];
          for (auto& g : gamma) g = -(a_big * g);
          gamma[j] = a_small;
        }
        for (std::size_t i = 0; i < gamma.size(); ++i) {
          if (gamma[i].is_zero()) continue;
          step.terms.push_back({basis[n][i].id, gamma[i], difference(basis[n][j].degree, basis[n][i].degree)});
        }

        // column j of f_n becomes f_n(new element)
        Vector new_col(basis[k].size(), field.zero());
        for (std::size_t i = 0; i < gamma.size(); ++i) {
          if (gamma[i].is_zero()) continue;
          for (const auto& [r, v] : d[n].column(i)) new_col[r] += gamma[i] * v;
        }
        for (std::size_t r = 0; r < new_col.size(); ++r) d[n].set(r, j, new_col[r]);
        // rows of f_{n+1}: old b_j = (new - sum_{i != j} gamma_i b_i) / gamma_j
        if (n + 1 < L) {
          auto& up = d[n + 1];
          const Scalar inv = gamma[j].inverse();
          std::vector<std::pair<std::size_t, Scalar>> row_j;
          for (std::size_t col = 0; col < up.cols(); ++col) {
            Scalar v = up.get(j, col);
            if (!v.is_zero()) row_j.emplace_back(col, v);
          }
          for (std::size_t i = 0; i < gamma.size(); ++i) {
            if (i == j || gamma[i].is_zero()) continue;
            Scalar f = gamma[i] * inv;
            for (const auto& [col, v] : row_j) up.add_to(i, col, -(f * v));
          }
          for (const auto& [col, v] : row_j) up.set(j, col, v * inv);
        }
        if (support_of(new_col).size() >= s.size()) {
          throw Error(ErrorKind::VerificationFailed, "basis change did not shrink the boundary support");
        }
        log.push_back(std::move(step));
      }
    }
  }
  GradedFreeComplex out(c.num_vars(), field, std::move(basis), std::move(d));
  out.check_complex();
  if (!has_minimal_support_basis(out)) {
    throw Error(ErrorKind::VerificationFailed, "constructed basis fails a circuit test");
  }
  return {std::move(out), std::move(log)};
}

/// True iff within each degree n >= 1 no boundary support contains another.
inline bool noncomparable_supports(const GradedFreeComplex& c) {
  for (std::size_t n = 1; n < c.num_degrees(); ++n) {
    std::vector<std::vector<std::size_t>> supports;
    for (std::size_t j = 0; j < c.basis(n).size(); ++j) {
      std::vector<std::size_t> s;
      for (const auto& [r, v] : c.differential(n).column(j)) s.push_back(r);
      supports.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < supports.size(); ++a) {
      for (std::size_t b = 0; b < supports.size(); ++b) {
        if (a != b && std::includes(supports[a].begin(), supports[a].end(), supports[b].begin(), supports[b].end())) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace monores
