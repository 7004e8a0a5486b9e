#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monores/error.hpp"
#include "monores/exactla.hpp"
#include "monores/graded_complex.hpp"
#include "monores/posets.hpp"

namespace monores {

/// A simplicial chain: oriented face -> nonzero coefficient.
using Chain = std::map<Face, Scalar>;

inline void add_to_chain(Chain& c, const Face& f, const Scalar& v) {
  auto it = c.find(f);
  if (it == c.end()) {
    if (!v.is_zero()) c.emplace(f, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) c.erase(it);
}

inline Chain chain_boundary(const Chain& c, const FieldSpec& field) {
  Chain out;
  for (const auto& [f, v] : c) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      Face g = f;
      g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
      add_to_chain(out, g, i % 2 ? -(field.coerce(v)) : field.coerce(v));
    }
  }
  return out;
}

/// [a, w]: the cone with apex a over a chain of the open filter below a.
inline Chain cone(Id apex, const Chain& w) {
  Chain out;
  for (const auto& [f, v] : w) {
    Face g{apex};
    g.insert(g.end(), f.begin(), f.end());
    out.emplace(std::move(g), v);
  }
  return out;
}

/// Generator [apex, cycle] of the conic complex in degree d(apex); cycle is a
/// top-dimensional cycle of the order complex of the open filter below apex.
struct ConicGenerator {
  Id apex = 0;
  int degree = 0;
  Chain cycle;

  Chain as_chain() const { return cone(apex, cycle); }
};

/// Conic chain complex, stored with its augmentation: d[0] sends every
/// degree-0 generator to the empty face; d[n] maps degree n to degree n-1.
struct ConicComplex {
  FieldSpec field;
  std::vector<std::vector<ConicGenerator>> generators;
  std::vector<SparseMatrix> d;
  bool augmented = true;

  std::size_t num_degrees() const { return generators.size(); }

  std::size_t component_dim(Id apex) const {
    std::size_t n = 0;
    for (const auto& gs : generators) {
      for (const auto& g : gs) n += g.apex == apex ? 1 : 0;
    }
    return n;
  }

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& g : generators) r.push_back(g.size());
    return r;
  }

  /// Field complex with running ids; without augmentation the target k of
  /// d[0] is dropped.
  BarComplex to_field_complex() const { return to_field_complex(augmented); }
  BarComplex to_field_complex(bool with_augmentation) const {
    BarComplex b{field, {}, {}};
    Id next = 0;
    for (const auto& gs : generators) {
      std::vector<Id> ids;
      for (std::size_t i = 0; i < gs.size(); ++i) ids.push_back(next++);
      b.ids.push_back(std::move(ids));
    }
    b.d = d;
    if (!with_augmentation && !b.d.empty()) b.d[0] = SparseMatrix(0, b.d[0].cols());
    return b;
  }

  friend bool operator==(const ConicComplex& a, const ConicComplex& b) {
    if (a.generators.size() != b.generators.size() || !(a.d == b.d)) return false;
    for (std::size_t n = 0; n < a.generators.size(); ++n) {
      if (a.generators[n].size() != b.generators[n].size()) return false;
      for (std::size_t i = 0; i < a.generators[n].size(); ++i) {
        const auto& x = a.generators[n][i];
        const auto& y = b.generators[n][i];
        if (x.apex != y.apex || x.degree != y.degree || x.cycle != y.cycle) return false;
      }
    }
    return true;
  }
};

namespace detail {

struct ApexCycles {
  std::vector<Face> faces;  // faces carrying the cycle coordinates
  std::vector<std::size_t> generator_index;
  SparseMatrix basis;  // faces x generators
};

}  // namespace detail

/// Echelonized basis of the top cycle space of the order complex below a.
inline std::vector<Chain> top_cycle_basis(const Poset& p, Id a, const FieldSpec& field) {
  const int n = p.dim_of(a);
  if (n == 0) return {Chain{{Face{}, field.one()}}};
  auto k = order_complex(down_set(p, a, true));
  auto kernel = kernel_basis(boundary_matrix(k, n - 1, field), field);
  const auto& faces = k.of_dim(n - 1);
  std::vector<Chain> out;
  for (const auto& v : kernel) {
    Chain c;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (!v[i].is_zero()) c.emplace(faces[i], v[i]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Writes a chain as sum over top vertices c of [c, w_c].
inline std::map<Id, Chain> split_by_top_vertex(const Chain& w) {
  std::map<Id, Chain> parts;
  for (const auto& [f, v] : w) {
    if (f.empty()) throw Error(ErrorKind::ShapeError, "the empty face has no top vertex");
    parts[f.front()].emplace(Face(f.begin() + 1, f.end()), v);
  }
  return parts;
}

/// Conic chain complex of P: the degree-n part is spanned by cones [a, z]
/// over top cycles z below elements a with d(a) = n, and the differential of
/// [a, z] is z, rewritten as sum of [c, z_c] in the bases at each apex c.
inline ConicComplex conic_complex(const Poset& p, const FieldSpec& field, bool augmented = true) {
  field.validate();
  ConicComplex cc{field, {}, {}, augmented};
  int top = -1;
  for (std::size_t i = 0; i < p.size(); ++i) top = std::max(top, p.dim(i));
  cc.generators.resize(static_cast<std::size_t>(top + 1));
  std::map<Id, detail::ApexCycles> at_apex;
  for (int n = 0; n <= top; ++n) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.dim(i) != n) continue;
      const Id a = p.id(i);
      auto cycles = top_cycle_basis(p, a, field);
      auto& ac = at_apex[a];
      std::map<Face, std::size_t> face_pos;
      for (const auto& z : cycles) {
        for (const auto& [f, v] : z) face_pos.emplace(f, 0);
      }
      for (auto& [f, pos] : face_pos) {
        pos = ac.faces.size();
        ac.faces.push_back(f);
      }
      ac.basis = SparseMatrix(ac.faces.size(), cycles.size());
      auto& gens = cc.generators[static_cast<std::size_t>(n)];
      for (std::size_t j = 0; j < cycles.size(); ++j) {
        for (const auto& [f, v] : cycles[j]) ac.basis.set(face_pos.at(f), j, v);
        ac.generator_index.push_back(gens.size());
        gens.push_back({a, n, std::move(cycles[j])});
      }
    }
  }
  cc.d.resize(cc.generators.size());
  if (cc.generators.empty()) return cc;
  cc.d[0] = detail::augmentation_row(cc.generators[0].size(), field);
  for (std::size_t n = 1; n < cc.generators.size(); ++n) {
    cc.d[n] = SparseMatrix(cc.generators[n - 1].size(), cc.generators[n].size());
    for (std::size_t j = 0; j < cc.generators[n].size(); ++j) {
      for (const auto& [c, zc] : split_by_top_vertex(cc.generators[n][j].cycle)) {
        const auto& ac = at_apex.at(c);
        Vector rhs(ac.faces.size(), field.zero());
        for (const auto& [f, v] : zc) {
          auto it = std::find(ac.faces.begin(), ac.faces.end(), f);
          if (it == ac.faces.end()) {
            throw Error(ErrorKind::VerificationFailed, "face of a conic boundary is not in the cycle basis support");
          }
          rhs[static_cast<std::size_t>(it - ac.faces.begin())] = v;
        }
        auto coords = solve(ac.basis, rhs, field);
        if (!coords) throw Error(ErrorKind::VerificationFailed, "conic boundary is not in the span of the apex cycles");
        for (std::size_t i = 0; i < coords->size(); ++i) cc.d[n].set(ac.generator_index[i], j, (*coords)[i]);
      }
    }
  }
  return cc;
}

/// Coordinates in conic degree n of a chain sum_c [c, z_c] whose apexes c
/// all have d(c) = n; nullopt if some z_c is not a top cycle at c.
inline std::optional<Vector> conic_coordinates(const ConicComplex& cc, std::size_t n, const Chain& z) {
  const auto& gens = cc.generators.at(n);
  Vector out(gens.size(), cc.field.zero());
  for (const auto& [c, zc] : split_by_top_vertex(z)) {
    std::vector<std::size_t> cols;
    std::map<Face, std::size_t> face_pos;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (gens[j].apex != c) continue;
      cols.push_back(j);
      for (const auto& [f, v] : gens[j].cycle) face_pos.emplace(f, face_pos.size());
    }
    if (cols.empty()) return std::nullopt;
    for (const auto& [f, v] : zc) {
      if (!face_pos.count(f)) return std::nullopt;
    }
    SparseMatrix m(face_pos.size(), cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (const auto& [f, v] : gens[cols[i]].cycle) m.set(face_pos.at(f), i, v);
    }
    Vector rhs(face_pos.size(), cc.field.zero());
    for (const auto& [f, v] : zc) rhs[face_pos.at(f)] = v;
    auto x = solve(m, rhs, cc.field);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] = (*x)[i];
  }
  return out;
}

/// Homology of the augmented (or plain) conic complex; index 0 is degree -1.
inline std::vector<std::size_t> conic_homology(const ConicComplex& c, bool augmented) {
  if (c.generators.empty()) return {augmented ? 1u : 0u};
  return c.to_field_complex(augmented).homology_ranks();
}

inline std::vector<std::size_t> conic_homology(const ConicComplex& c) { return conic_homology(c, c.augmented); }

inline bool conic_is_exact(const ConicComplex& c) {
  auto h = conic_homology(c, true);
  return std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; });
}

/// Free Z^m-graded complex with one basis element per conic generator, of
/// degree deg(apex); the entry between apexes a > b gains x^(deg a - deg b).
inline GradedFreeComplex homogenize(const ConicComplex& c, const Poset& p) {
  if (!degree_is_monotone(p)) throw Error(ErrorKind::NotAMorphism, "degree map is not order preserving");
  std::size_t m = p.size() ? p.degree(0).size() : 0;
  std::vector<std::vector<BasisElement>> basis;
  Id next = 0;
  for (const auto& gs : c.generators) {
    std::vector<BasisElement> level;
    for (const auto& g : gs) level.push_back({next++, p.degree(p.index(g.apex))});
    basis.push_back(std::move(level));
  }
  std::vector<SparseMatrix> d(c.d.size());
  for (std::size_t n = 1; n < c.d.size(); ++n) d[n] = c.d[n];
  return GradedFreeComplex(m, c.field, std::move(basis), std::move(d));
}

struct SupportReport {
  bool ok = true;
  std::optional<Multidegree> failing_degree;
  std::size_t degrees_checked = 0;
};

/// The homogenization resolves a monomial ideal iff the augmented conic
/// complex of every nonempty P_{deg <= alpha} is exact; alpha ranges over the
/// join closure of the degrees.
inline SupportReport supports_resolution(const Poset& p, const FieldSpec& field) {
  if (!degree_is_monotone(p)) throw Error(ErrorKind::NotAMorphism, "degree map is not order preserving");
  SupportReport report;
  for (const auto& alpha : join_closure(*p.degrees())) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (divides(p.degree(i), alpha)) keep.push_back(i);
    }
    if (keep.empty()) continue;
    ++report.degrees_checked;
    if (!conic_is_exact(conic_complex(p.induced(keep), field))) {
      report.ok = false;
      report.failing_degree = alpha;
      return report;
    }
  }
  return report;
}

/// Reduced homology of the order complex and augmented conic homology agree,
/// provided each open filter has no reduced homology below d(a) - 1.
inline bool conic_vs_simplicial(const Poset& p, const FieldSpec& field) {
  for (auto a : p.ids()) {
    auto h = reduced_homology(order_complex(down_set(p, a, true)), field);
    for (int m = -1; m <= p.dim_of(a) - 2; ++m) {
      if (h.rank(m) != 0) {
        throw Error(ErrorKind::HypothesisFailed, "open filter below " + std::to_string(a) +
                                                     " has reduced homology in dimension " + std::to_string(m));
      }
    }
  }
  auto simplicial = reduced_homology(order_complex(p), field);
  auto conic = conic_homology(conic_complex(p, field), true);
  std::size_t len = std::max(simplicial.ranks.size(), conic.size());
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t s = i < simplicial.ranks.size() ? simplicial.ranks[i] : 0;
    std::size_t c = i < conic.size() ? conic[i] : 0;
    if (s != c) return false;
  }
  return true;
}

/// rank Ker d_n of the augmented conic complex equals rank of the reduced
/// homology H_n of the conic n-skeleton, for every n.
inline bool conic_kernel_matches_skeleta(const ConicComplex& c, const Poset& p) {
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    std::size_t kernel = c.generators[n].size() - rank(c.d[n], c.field);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.dim(i) <= static_cast<int>(n)) keep.push_back(i);
    }
    auto h = reduced_homology(order_complex(p.induced(keep)), c.field);
    if (h.rank(static_cast<int>(n)) != kernel) return false;
  }
  return true;
}

/// Each generator [a, z], viewed as a simplicial chain, has boundary z, and z
/// equals the image of the conic differential read back as chains.
inline bool conic_embeds_in_simplicial(const ConicComplex& c) {
  for (std::size_t n = 1; n < c.num_degrees(); ++n) {
    for (std::size_t j = 0; j < c.generators[n].size(); ++j) {
      const auto& g = c.generators[n][j];
      if (chain_boundary(g.as_chain(), c.field) != g.cycle) return false;
      Chain image;
      for (const auto& [i, v] : c.d[n].column(j)) {
        for (const auto& [f, w] : c.generators[n - 1][i].as_chain()) add_to_chain(image, f, v * w);
      }
      if (image != g.cycle) return false;
    }
  }
  return true;
}

}  // namespace monores
