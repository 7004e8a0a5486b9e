#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monores/error.hpp"
#include "monores/exactla.hpp"
#include "monores/graded_complex.hpp"
#include "monores/monomials.hpp"

namespace monores {

/// Finite poset on integer ids, optionally carrying a degree map into Z^m.
///
/// Built from any acyclic set of generating relations (lower, upper). The
/// strict order and the cover relation (its transitive reduction) are
/// computed eagerly, so a constructed Poset is immutable and safe to share.
class Poset {
 public:
  Poset() = default;

  Poset(std::vector<Id> ids, const std::vector<std::pair<Id, Id>>& relations,
        std::optional<std::vector<Multidegree>> degrees = std::nullopt)
      : ids_(std::move(ids)), degrees_(std::move(degrees)) {
    const std::size_t n = ids_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(ids_[i], i).second) {
        throw Error(ErrorKind::ShapeError, "duplicate poset element " + std::to_string(ids_[i]));
      }
    }
    if (degrees_ && degrees_->size() != n) throw Error(ErrorKind::ShapeError, "degree map has the wrong size");
    std::vector<std::vector<std::size_t>> up(n);
    for (const auto& [lo, hi] : relations) {
      auto a = index(lo), b = index(hi);
      if (a == b) throw Error(ErrorKind::ShapeError, "reflexive relation on " + std::to_string(lo));
      up[a].push_back(b);
    }
    // topological order (Kahn), smallest index first for determinism
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (auto b : up[a]) ++indeg[b];
    }
    std::set<std::size_t> ready;
    for (std::size_t a = 0; a < n; ++a) {
      if (indeg[a] == 0) ready.insert(a);
    }
    std::vector<std::size_t> topo;
    while (!ready.empty()) {
      auto a = *ready.begin();
      ready.erase(ready.begin());
      topo.push_back(a);
      for (auto b : up[a]) {
        if (--indeg[b] == 0) ready.insert(b);
      }
    }
    if (topo.size() != n) throw Error(ErrorKind::ShapeError, "relations contain a cycle");
    less_.assign(n, std::vector<char>(n, 0));
    std::vector<std::vector<std::size_t>> down(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (auto b : up[a]) down[b].push_back(a);
    }
    for (auto b : topo) {
      for (auto a : down[b]) {
        less_[a][b] = 1;
        for (std::size_t x = 0; x < n; ++x) {
          if (less_[x][a]) less_[x][b] = 1;
        }
      }
    }
    lower_covers_.assign(n, {});
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t a = 0; a < n; ++a) {
        if (!less_[a][b]) continue;
        bool cover = true;
        for (std::size_t x = 0; x < n && cover; ++x) {
          if (less_[a][x] && less_[x][b]) cover = false;
        }
        if (cover) lower_covers_[b].push_back(a);
      }
    }
    dim_.assign(n, 0);
    for (auto b : topo) {
      for (auto a : lower_covers_[b]) dim_[b] = std::max(dim_[b], dim_[a] + 1);
    }
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<Id>& ids() const { return ids_; }
  Id id(std::size_t i) const { return ids_[i]; }

  std::size_t index(Id id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorKind::NotFound, "no poset element " + std::to_string(id));
    return it->second;
  }
  bool contains(Id id) const { return index_.count(id) != 0; }

  bool less(std::size_t a, std::size_t b) const { return less_[a][b] != 0; }
  bool less_ids(Id a, Id b) const { return less(index(a), index(b)); }

  const std::vector<std::size_t>& lower_covers(std::size_t b) const { return lower_covers_[b]; }

  /// Cover pairs (lower id, upper id), sorted.
  std::vector<std::pair<Id, Id>> covers() const {
    std::vector<std::pair<Id, Id>> out;
    for (std::size_t b = 0; b < size(); ++b) {
      for (auto a : lower_covers_[b]) out.emplace_back(ids_[a], ids_[b]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Every pair a < b as ids, sorted.
  std::vector<std::pair<Id, Id>> relations() const {
    std::vector<std::pair<Id, Id>> out;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) {
        if (less_[a][b]) out.emplace_back(ids_[a], ids_[b]);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Length of the longest chain ending at the element; minimal elements have 0.
  int dim(std::size_t a) const { return dim_[a]; }
  int dim_of(Id id) const { return dim_[index(id)]; }

  bool has_degrees() const { return degrees_.has_value(); }
  const Multidegree& degree(std::size_t a) const { return degrees_->at(a); }
  const std::optional<std::vector<Multidegree>>& degrees() const { return degrees_; }

  /// Induced subposet on the given element positions (kept in that order).
  Poset induced(const std::vector<std::size_t>& keep) const {
    std::vector<Id> ids;
    std::optional<std::vector<Multidegree>> degs;
    if (degrees_) degs.emplace();
    for (auto i : keep) {
      ids.push_back(ids_[i]);
      if (degrees_) degs->push_back((*degrees_)[i]);
    }
    std::vector<std::pair<Id, Id>> rel;
    for (auto a : keep) {
      for (auto b : keep) {
        if (less_[a][b]) rel.emplace_back(ids_[a], ids_[b]);
      }
    }
    return Poset(std::move(ids), rel, std::move(degs));
  }

  /// The same elements with extra relations; the order they generate.
  Poset with_relations(const std::vector<std::pair<Id, Id>>& extra) const {
    auto rel = covers();
    rel.insert(rel.end(), extra.begin(), extra.end());
    return Poset(ids_, rel, degrees_);
  }

  Poset with_degrees(std::vector<Multidegree> degrees) const { return Poset(ids_, covers(), std::move(degrees)); }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.ids_ == b.ids_ && a.less_ == b.less_ && a.degrees_ == b.degrees_;
  }

 private:
  std::vector<Id> ids_;
  std::map<Id, std::size_t> index_;
  std::optional<std::vector<Multidegree>> degrees_;
  std::vector<std::vector<char>> less_;
  std::vector<std::vector<std::size_t>> lower_covers_;
  std::vector<int> dim_;
};

/// P_{<a} (strict) or P_{<=a}.
inline Poset down_set(const Poset& p, Id a, bool strict) {
  auto ia = p.index(a);
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p.less(x, ia) || (!strict && x == ia)) keep.push_back(x);
  }
  return p.induced(keep);
}

inline int dim_element(const Poset& p, Id a) { return p.dim_of(a); }

/// deg is order preserving: a < b implies deg a <= deg b.
inline bool degree_is_monotone(const Poset& p) {
  if (!p.has_degrees()) return false;
  for (std::size_t b = 0; b < p.size(); ++b) {
    for (auto a : p.lower_covers(b)) {
      if (!divides(p.degree(a), p.degree(b))) return false;
    }
  }
  return true;
}

using Face = std::vector<Id>;

/// Simplicial complex of chains; every face lists its vertices from the top
/// of the chain downwards. faces[k + 1] holds the k-dimensional faces in
/// lexicographic order, faces[0] = {[]}.
struct OrientedComplex {
  std::vector<std::vector<Face>> faces;

  int dimension() const { return static_cast<int>(faces.size()) - 2; }
  const std::vector<Face>& of_dim(int k) const {
    static const std::vector<Face> none;
    auto i = static_cast<std::size_t>(k + 1);
    return k >= -1 && i < faces.size() ? faces[i] : none;
  }
  std::size_t face_count() const {
    std::size_t n = 0;
    for (const auto& f : faces) n += f.size();
    return n;
  }
};

inline constexpr std::size_t kDefaultFaceCap = 2'000'000;

inline OrientedComplex order_complex(const Poset& p, std::size_t cap = kDefaultFaceCap) {
  OrientedComplex k;
  k.faces.push_back({Face{}});
  std::size_t count = 1;
  Face chain;
  std::function<void(std::size_t)> extend = [&](std::size_t top) {
    chain.push_back(p.id(top));
    if (++count > cap) {
      throw Error(ErrorKind::TooLarge, "order complex exceeds " + std::to_string(cap) + " faces");
    }
    if (k.faces.size() < chain.size() + 1) k.faces.emplace_back();
    k.faces[chain.size()].push_back(chain);
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p.less(x, top)) extend(x);
    }
    chain.pop_back();
  };
  for (std::size_t a = 0; a < p.size(); ++a) extend(a);
  for (auto& fs : k.faces) std::sort(fs.begin(), fs.end());
  return k;
}

/// Boundary C_k -> C_{k-1}; the i-th vertex is dropped with sign (-1)^i.
inline SparseMatrix boundary_matrix(const OrientedComplex& k, int dim, const FieldSpec& field) {
  const auto& rows = k.of_dim(dim - 1);
  const auto& cols = k.of_dim(dim);
  SparseMatrix m(rows.size(), cols.size());
  if (dim < 0) return m;
  std::map<Face, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t i = 0; i < cols[c].size(); ++i) {
      Face f = cols[c];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      m.set(row_index.at(f), c, field.from_int(i % 2 ? -1 : 1));
    }
  }
  return m;
}

/// Reduced homology ranks; ranks[i + 1] is the rank in dimension i >= -1.
struct HomologyReport {
  std::vector<std::size_t> ranks;

  std::size_t rank(int i) const {
    auto k = static_cast<std::size_t>(i + 1);
    return i >= -1 && k < ranks.size() ? ranks[k] : 0;
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto r : ranks) t += r;
    return t;
  }
};

inline HomologyReport reduced_homology(const OrientedComplex& k, const FieldSpec& field) {
  field.validate();
  const int top = k.dimension();
  std::vector<std::size_t> rk(static_cast<std::size_t>(top + 3), 0);  // rk[i+1] = rank of boundary from dim i
  for (int i = 0; i <= top; ++i) rk[static_cast<std::size_t>(i + 1)] = rank(boundary_matrix(k, i, field), field);
  HomologyReport h;
  for (int i = -1; i <= top; ++i) {
    auto idx = static_cast<std::size_t>(i + 1);
    h.ranks.push_back(k.of_dim(i).size() - rk[idx] - rk[idx + 1]);
  }
  return h;
}

/// P_{<a} has the reduced homology of a sphere of dimension dim(P_{<a}).
inline bool is_homology_sphere_at(const Poset& p, Id a, const FieldSpec& field) {
  auto k = order_complex(down_set(p, a, true));
  auto h = reduced_homology(k, field);
  const int top = k.dimension();
  for (int i = -1; i <= top; ++i) {
    if (h.rank(i) != (i == top ? 1u : 0u)) return false;
  }
  return true;
}

inline bool is_hcw(const Poset& p, const FieldSpec& field) {
  for (auto id : p.ids()) {
    if (!is_homology_sphere_at(p, id, field)) return false;
  }
  return true;
}

}  // namespace monores
