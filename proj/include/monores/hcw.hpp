#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monores/conic.hpp"
#include "monores/error.hpp"
#include "monores/graded_complex.hpp"
#include "monores/incidence.hpp"
#include "monores/minsupport.hpp"
#include "monores/posets.hpp"

namespace monores {

namespace detail {

inline Chain vector_to_chain(const Vector& v, const std::vector<Face>& faces) {
  Chain c;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (!v[i].is_zero()) c.emplace(faces[i], v[i]);
  }
  return c;
}

inline Vector chain_to_vector(const Chain& c, const std::vector<Face>& faces, const FieldSpec& field) {
  Vector v(faces.size(), field.zero());
  for (const auto& [f, x] : c) {
    auto it = std::lower_bound(faces.begin(), faces.end(), f);
    if (it == faces.end() || *it != f) throw Error(ErrorKind::ShapeError, "chain face outside the complex");
    v[static_cast<std::size_t>(it - faces.begin())] = x;
  }
  return v;
}

inline Multidegree degree_of(const Poset& p, Id a) { return p.degree(p.index(a)); }

inline Poset degree_filter(const Poset& p, const Multidegree& alpha) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (divides(p.degree(i), alpha)) keep.push_back(i);
  }
  return p.induced(keep);
}

}  // namespace detail

/// Rewrites an m-cycle w of the order complex below a into a homologous cycle
/// whose faces all have a top vertex of dimension m: while some top vertex c
/// has d(c) > m, the part [c, w_c] is traded for a filling v of w_c below c.
inline Chain antichain_form(const Poset& p, Id a, const Chain& w, int m, const FieldSpec& field) {
  for (const auto& [f, v] : w) {
    if (static_cast<int>(f.size()) != m + 1) throw Error(ErrorKind::ShapeError, "chain is not of dimension m");
    for (auto x : f) {
      if (!p.less_ids(x, a)) throw Error(ErrorKind::ShapeError, "chain leaves the open filter");
    }
  }
  if (!chain_boundary(w, field).empty()) throw Error(ErrorKind::NotACycle, "chain has nonzero boundary");
  Chain z = w;
  while (true) {
    auto parts = split_by_top_vertex(z);
    int k = m;
    for (const auto& [c, zc] : parts) k = std::max(k, p.dim_of(c));
    if (k == m) return z;
    for (const auto& [c, zc] : parts) {
      if (p.dim_of(c) != k) continue;
      auto below = order_complex(down_set(p, c, true));
      const auto& rows = below.of_dim(m - 1);
      auto v = solve(boundary_matrix(below, m, field), detail::chain_to_vector(zc, rows, field), field);
      if (!v) {
        throw Error(ErrorKind::HypothesisFailed, "open filter is not a homology sphere (cannot fill a cycle)",
                    std::to_string(c));
      }
      for (const auto& [f, x] : cone(c, zc)) add_to_chain(z, f, -x);
      for (const auto& [f, x] : detail::vector_to_chain(*v, below.of_dim(m))) add_to_chain(z, f, x);
    }
  }
}

struct CavityResult {
  Poset poset;
  std::vector<std::pair<Id, Id>> added;
  int iterations = 0;
};

namespace detail {

/// Cycles and boundaries of the order complex below a in dimension n.
struct FilterHomology {
  OrientedComplex complex;
  std::vector<Vector> cycles;
  SparseMatrix boundaries;
  std::size_t rank = 0;
};

inline FilterHomology filter_homology(const Poset& p, Id a, int n, const FieldSpec& field) {
  FilterHomology h;
  h.complex = order_complex(down_set(p, a, true));
  h.cycles = kernel_basis(boundary_matrix(h.complex, n, field), field);
  h.boundaries = boundary_matrix(h.complex, n + 1, field);
  h.rank = h.cycles.size() - rank(h.boundaries, field);
  return h;
}

/// One pass of the cavity filling: kills the first nonzero class h of
/// H_n below a by the minimal set of new relations c < a.
inline std::vector<Id> cavity_step(const Poset& p, Id a, int n, const FilterHomology& h, const FieldSpec& field) {
  const Vector* cls = nullptr;
  for (const auto& z : h.cycles) {
    if (!solve(h.boundaries, z, field)) {
      cls = &z;
      break;
    }
  }
  if (!cls) throw Error(ErrorKind::VerificationFailed, "no nonzero homology class found");
  auto z = antichain_form(p, a, vector_to_chain(*cls, h.complex.of_dim(n)), n, field);

  auto sub = degree_filter(p, degree_of(p, a));
  auto cc = conic_complex(sub, field);
  const auto top = static_cast<std::size_t>(n + 1);
  if (cc.num_degrees() <= top) throw Error(ErrorKind::VerificationFailed, "degree filter has no conic degree n+1");
  auto target = conic_coordinates(cc, static_cast<std::size_t>(n), z);
  if (!target) throw Error(ErrorKind::VerificationFailed, "antichain form is not a conic chain");
  const auto& gens = cc.generators[top];
  const auto& dn = cc.d[top];

  std::set<Id> forced;  // apexes outside P_{<a} whose coordinates must vanish
  auto attempt = [&](const std::set<Id>& zeroed) -> std::optional<Vector> {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!zeroed.count(gens[j].apex)) cols.push_back(j);
    }
    auto x = solve(dn.select_columns(cols), *target, field);
    if (!x) return std::nullopt;
    Vector t(gens.size(), field.zero());
    for (std::size_t i = 0; i < cols.size(); ++i) t[cols[i]] = (*x)[i];
    return t;
  };
  auto outside = [&](const Vector& t) {
    std::set<Id> c;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!t[j].is_zero() && !p.less_ids(gens[j].apex, a)) c.insert(gens[j].apex);
    }
    return c;
  };
  auto t = attempt(forced);
  if (!t) throw Error(ErrorKind::HypothesisFailed, "conic homology of the degree filter is nonzero", std::to_string(n));
  auto c = outside(*t);
  for (bool changed = true; changed;) {
    changed = false;
    for (Id x : std::vector<Id>(c.begin(), c.end())) {
      if (!c.count(x)) continue;
      auto trial = forced;
      trial.insert(x);
      if (auto t2 = attempt(trial)) {
        forced = std::move(trial);
        c = outside(*t2);
        changed = true;
      }
    }
  }
  if (c.empty()) throw Error(ErrorKind::VerificationFailed, "filling chain lies entirely below the apex");
  return {c.begin(), c.end()};
}

inline void require(bool ok, const std::string& condition, Id a) {
  if (!ok) throw Error(ErrorKind::VerificationFailed, "cavity filling violates " + condition, std::to_string(a));
}

inline CavityResult fill_cavity_impl(const Poset& p, Id a, int n, const FieldSpec& field, bool check_hypotheses) {
  field.validate();
  if (!degree_is_monotone(p)) throw Error(ErrorKind::NotAMorphism, "degree map is not order preserving");
  if (n < 0 || p.dim_of(a) < n + 2) {
    throw Error(ErrorKind::HypothesisFailed, "requires d(a) >= n + 2", std::to_string(a));
  }
  if (check_hypotheses) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.dim(i) < p.dim_of(a) && !is_homology_sphere_at(p, p.id(i), field)) {
        throw Error(ErrorKind::HypothesisFailed, "lower open filter is not a homology sphere", std::to_string(p.id(i)));
      }
    }
    auto h = conic_homology(conic_complex(degree_filter(p, degree_of(p, a)), field), true);
    if (static_cast<std::size_t>(n + 1) < h.size() && h[static_cast<std::size_t>(n + 1)] != 0) {
      throw Error(ErrorKind::HypothesisFailed, "conic homology of the degree filter is nonzero", std::to_string(n));
    }
  }
  CavityResult out{p, {}, 0};
  auto h = filter_homology(p, a, n, field);
  if (h.rank == 0) return out;
  const auto before = reduced_homology(h.complex, field);
  while (h.rank > 0) {
    const std::size_t r = h.rank;
    auto c = cavity_step(out.poset, a, n, h, field);
    std::vector<std::pair<Id, Id>> extra;
    for (Id x : c) extra.emplace_back(x, a);
    out.poset = out.poset.with_relations(extra);
    out.added.insert(out.added.end(), extra.begin(), extra.end());
    ++out.iterations;
    h = filter_homology(out.poset, a, n, field);
    require(h.rank < r, "the decrease of the cavity rank", a);
  }
  const Poset& q = out.poset;
  // (1) order extension and monotone degrees
  for (const auto& [x, y] : p.relations()) require(q.less_ids(x, y), "order extension", a);
  require(degree_is_monotone(q), "degree monotonicity", a);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Id c = p.id(i);
    // (2) untouched filters away from a, (3) preserved dimensions
    if (!(c == a || p.less_ids(a, c))) require(down_set(p, c, false) == down_set(q, c, false), "untouched filters", a);
    require(p.dim(i) == q.dim_of(c), "preserved dimensions", a);
  }
  // (4) identical conic complex
  require(conic_complex(p, field) == conic_complex(q, field), "conic invariance", a);
  // (5) higher homology below a, (6) vanishing in dimension n
  const auto after = reduced_homology(order_complex(down_set(q, a, true)), field);
  const int top = static_cast<int>(std::max(before.ranks.size(), after.ranks.size()));
  for (int k = n + 1; k <= top; ++k) {
    require(before.rank(k) == after.rank(k), "preserved higher homology", a);
  }
  require(after.rank(n) == 0, "vanishing homology in dimension n", a);
  return out;
}

}  // namespace detail

/// Adds relations c < a (c of dimension n + 1) until the open filter below a
/// has no reduced homology in dimension n, keeping the conic complex fixed.
/// Every conclusion is recomputed and checked.
inline CavityResult fill_cavity(const Poset& p, Id a, int n, const FieldSpec& field) {
  return detail::fill_cavity_impl(p, a, n, field, true);
}

struct HcwReport {
  Poset input;
  Poset output;
  std::vector<std::pair<Id, Id>> added;
  std::map<Id, bool> sphere_before;
  std::map<Id, bool> sphere_after;
};

inline std::map<Id, bool> sphere_verdicts(const Poset& p, const FieldSpec& field) {
  std::map<Id, bool> out;
  for (auto id : p.ids()) out[id] = is_homology_sphere_at(p, id, field);
  return out;
}

/// Fills cavities for every a in increasing d(a) (ties by id) and
/// n = d(a) - 2 down to 0, producing an hcw-poset with the same conic complex.
inline HcwReport hcwify(const Poset& p, const FieldSpec& field) {
  field.validate();
  if (!degree_is_monotone(p)) throw Error(ErrorKind::NotAMorphism, "degree map is not order preserving");
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto h = reduced_homology(order_complex(down_set(p, p.id(i), true)), field);
    if (h.rank(p.dim(i) - 1) != 1) {
      throw Error(ErrorKind::HypothesisFailed, "top homology below an element is not one-dimensional",
                  std::to_string(p.id(i)));
    }
  }
  auto support = supports_resolution(p, field);
  if (!support.ok) {
    throw Error(ErrorKind::HypothesisFailed, "conic complex of a degree filter is not exact",
                format_degree(*support.failing_degree));
  }
  HcwReport report{p, p, {}, sphere_verdicts(p, field), {}};
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::pair(p.dim(x), p.id(x)) < std::pair(p.dim(y), p.id(y));
  });
  for (auto i : order) {
    const Id a = p.id(i);
    for (int n = p.dim(i) - 2; n >= 0; --n) {
      auto step = detail::fill_cavity_impl(report.output, a, n, field, false);
      report.output = std::move(step.poset);
      report.added.insert(report.added.end(), step.added.begin(), step.added.end());
    }
  }
  report.sphere_after = sphere_verdicts(report.output, field);
  for (const auto& [id, ok] : report.sphere_after) {
    if (!ok) throw Error(ErrorKind::VerificationFailed, "output is not an hcw-poset", std::to_string(id));
  }
  if (!degree_is_monotone(report.output)) throw Error(ErrorKind::VerificationFailed, "output degree map not monotone");
  if (!(conic_complex(p, field) == conic_complex(report.output, field))) {
    throw Error(ErrorKind::VerificationFailed, "conic complex changed");
  }
  return report;
}

struct HcwSupport {
  GradedFreeComplex resolution;  // minimal, with minimal-support basis
  Poset incidence;
  HcwReport report;
  GradedFreeComplex supported;  // homogenized conic complex of the hcw-poset
};

/// Minimal resolution, minimal-support basis, incidence poset, hcw-ification,
/// and homogenization; checks Betti tables and the hcw property.
inline HcwSupport hcw_support(const MonomialIdeal& ideal, const FieldSpec& field,
                              std::size_t cap = kDefaultTaylorCap) {
  auto [basis, log] = make_minimal_support_basis(minimal_resolution(ideal, field, cap));
  auto p = incidence_poset(basis);
  auto report = hcwify(p, field);
  auto h = homogenize(conic_complex(report.output, field), report.output);
  if (betti_table(h) != betti_table(basis)) throw Error(ErrorKind::VerificationFailed, "Betti tables differ");
  if (!is_hcw(report.output, field)) throw Error(ErrorKind::VerificationFailed, "output is not hcw");
  return {std::move(basis), std::move(p), std::move(report), std::move(h)};
}

}  // namespace monores
