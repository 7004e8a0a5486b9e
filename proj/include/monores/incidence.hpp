#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monores/conic.hpp"
#include "monores/error.hpp"
#include "monores/graded_complex.hpp"
#include "monores/minsupport.hpp"
#include "monores/posets.hpp"

namespace monores {

/// Poset on the basis ids generated by c < b whenever [b : c] is nonzero,
/// with the basis labels as degree map.
inline Poset incidence_poset(const GradedFreeComplex& c) {
  std::vector<Id> ids;
  std::vector<Multidegree> degrees;
  std::vector<std::pair<Id, Id>> relations;
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    for (const auto& b : c.basis(n)) {
      ids.push_back(b.id);
      degrees.push_back(b.degree);
    }
    if (n == 0) continue;
    for (std::size_t j = 0; j < c.basis(n).size(); ++j) {
      const auto& col = c.differential(n).column(j);
      if (col.empty()) {
        throw Error(ErrorKind::DegenerateColumn, "basis element has zero boundary", std::to_string(c.basis(n)[j].id));
      }
      for (const auto& [r, v] : col) relations.emplace_back(c.basis(n - 1)[r].id, c.basis(n)[j].id);
    }
  }
  return Poset(std::move(ids), relations, std::move(degrees));
}

/// phi(b) = scale * (the single conic generator at apex b).
struct ConicIsoCertificate {
  Poset poset;
  ConicComplex conic;
  struct Image {
    std::size_t generator = 0;  // position within its conic degree
    Scalar scale;
  };
  std::map<Id, Image> image;
};

/// Builds the isomorphism between the bar complex of C and the conic complex
/// of its incidence poset, degree by degree: phi(b) = [b] in degree 0, and
/// phi(b) is the unique preimage of phi(f_n(b)) otherwise.
inline ConicIsoCertificate conic_iso_check(const GradedFreeComplex& c) {
  c.check_complex();
  if (!noncomparable_supports(c)) {
    throw Error(ErrorKind::HypothesisFailed, "two boundary supports in one degree are comparable");
  }
  const auto& field = c.field();
  ConicIsoCertificate cert{incidence_poset(c), {}, {}};
  cert.conic = conic_complex(cert.poset, field);
  for (auto id : cert.poset.ids()) {
    auto k = cert.conic.component_dim(id);
    if (k != 1) {
      throw Error(ErrorKind::NotMinimalSupport, "conic component has dimension " + std::to_string(k),
                  std::to_string(id));
    }
  }
  if (cert.conic.num_degrees() != c.num_degrees()) {
    throw Error(ErrorKind::VerificationFailed, "conic complex has a different length");
  }
  // generators of each degree follow poset index order, which is basis order
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    for (std::size_t j = 0; j < c.basis(n).size(); ++j) {
      if (cert.conic.generators[n][j].apex != c.basis(n)[j].id) {
        throw Error(ErrorKind::VerificationFailed, "conic generators out of basis order");
      }
    }
  }
  for (const auto& b : c.basis(0)) cert.image[b.id] = {cert.image.size(), field.one()};
  for (std::size_t n = 1; n < c.num_degrees(); ++n) {
    const auto& f = c.differential(n);
    const auto& g = cert.conic.d[n];
    for (std::size_t j = 0; j < c.basis(n).size(); ++j) {
      Vector target(c.basis(n - 1).size(), field.zero());
      for (const auto& [r, v] : f.column(j)) target[r] = v * cert.image.at(c.basis(n - 1)[r].id).scale;
      auto lambda = solve(g.select_columns(std::vector<std::size_t>{j}), target, field);
      if (!lambda || (*lambda)[0].is_zero()) {
        throw Error(ErrorKind::VerificationFailed, "boundary has no preimage in the apex component",
                    std::to_string(c.basis(n)[j].id));
      }
      cert.image[c.basis(n)[j].id] = {j, (*lambda)[0]};
    }
  }
  return cert;
}

/// The homogenized conic complex of the incidence poset resolves I with the
/// Betti table of C.
inline bool verify_mfr_support(const MonomialIdeal& ideal, const GradedFreeComplex& c, const FieldSpec& field) {
  if (!(c.field() == field)) throw Error(ErrorKind::InvalidField, "complex is over a different field");
  auto p = incidence_poset(c);
  auto h = homogenize(conic_complex(p, field), p);
  h.check_complex();
  if (!h.is_minimal() || betti_table(h) != betti_table(c)) return false;
  if (!(h.resolved_ideal() == ideal)) return false;
  return is_resolution(h).ok;
}

namespace detail {

struct PosetShape {
  int dim;
  std::size_t below;
  std::size_t above;
  auto operator<=>(const PosetShape&) const = default;
};

inline std::vector<PosetShape> shapes(const Poset& p) {
  std::vector<PosetShape> s(p.size());
  std::vector<std::size_t> above(p.size(), 0);
  for (std::size_t b = 0; b < p.size(); ++b) {
    for (auto a : p.lower_covers(b)) ++above[a];
  }
  for (std::size_t i = 0; i < p.size(); ++i) s[i] = {p.dim(i), p.lower_covers(i).size(), above[i]};
  return s;
}

}  // namespace detail

/// An order isomorphism P -> Q as a map of ids, found by backtracking over
/// elements with equal (d, lower-cover count, upper-cover count).
inline std::optional<std::map<Id, Id>> find_isomorphism(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  auto sp = detail::shapes(p), sq = detail::shapes(q);
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  const std::size_t n = p.size();
  // assign low elements first so cover checks prune early
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.dim(a) < p.dim(b); });
  std::vector<std::optional<std::size_t>> to(n);
  std::vector<char> used(n, 0);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  std::function<bool(std::size_t)> assign = [&](std::size_t k) {
    if (k == n) return true;
    const std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || !(sp[x] == sq[y])) continue;
      bool ok = true;
      for (std::size_t k2 = 0; k2 < k && ok; ++k2) {
        const std::size_t u = order[k2], v = *to[u];
        ok = p.less(u, x) == q.less(v, y) && p.less(x, u) == q.less(y, v);
      }
      if (!ok) continue;
      to[x] = y;
      used[y] = 1;
      if (assign(k + 1)) return true;
      used[y] = 0;
      to[x].reset();
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  std::map<Id, Id> out;
  for (std::size_t i = 0; i < n; ++i) out[p.id(i)] = q.id(*to[i]);
  return out;
}

inline bool isomorphic(const Poset& p, const Poset& q) { return find_isomorphism(p, q).has_value(); }

}  // namespace monores
