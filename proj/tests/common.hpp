#pragma once

#include <random>
#include <string>
#include <vector>

#include "monores/monores.hpp"
#include "oracle/upper_koszul.hpp"

namespace testing_support {

using namespace monores;

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline MonomialIdeal load_ideal(const std::string& name) {
  return minimalize(io::parse_ideal_string(io::read_file(fixture(name))).monomials);
}

inline GradedFreeComplex load_complex(const std::string& name) {
  return io::complex_from_json(io::json::parse(io::read_file(fixture(name))));
}

inline MonomialIdeal rp2() { return load_ideal("rp2.ideal"); }
inline MonomialIdeal ideal_M() { return load_ideal("M.ideal"); }

/// Random ideal with between 2 and max_gens minimal generators in 2..max_vars
/// variables, exponents in 0..max_exp. Candidates comparable to an earlier
/// generator are redrawn.
inline MonomialIdeal random_ideal(std::uint32_t seed, int max_gens = 6, int max_vars = 5, int max_exp = 3) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> nvars(2, max_vars), ngens(2, max_gens), expo(0, max_exp);
  const int m = nvars(rng);
  const int g = ngens(rng);
  std::vector<Multidegree> gens;
  // small variable counts cannot host every target size, so attempts are capped
  for (int attempt = 0, misses = 0; attempt < 1000 && static_cast<int>(gens.size()) < g; ++attempt) {
    Multidegree e(static_cast<std::size_t>(m));
    for (auto& x : e) x = expo(rng);
    if (is_zero_degree(e)) continue;
    bool comparable = false;
    for (const auto& h : gens) comparable = comparable || divides(h, e) || divides(e, h);
    if (!comparable) {
      gens.push_back(e);
    } else if (++misses == 50) {
      if (gens.size() == 1) gens.clear();  // stuck behind one large generator
      misses = 0;
    }
  }
  return minimalize(gens);
}

inline oracle::Table oracle_betti(const MonomialIdeal& ideal, const FieldSpec& f) {
  return oracle::betti(ideal.generators(), f.characteristic);
}

/// A Poset from (lower, upper) relations on ids 0..n-1, optionally with degrees.
inline Poset make_poset(int n, const std::vector<std::pair<Id, Id>>& rel,
                        std::optional<std::vector<Multidegree>> deg = std::nullopt) {
  std::vector<Id> ids;
  for (int i = 0; i < n; ++i) ids.push_back(i);
  return Poset(ids, rel, std::move(deg));
}

/// Basis change b_t <- b_t + s x^(deg b_t - deg b_s) b_s in degree n, given by
/// positions; deg b_s must divide deg b_t. The differentials are rewritten so
/// the result is the same complex in the new basis.
inline GradedFreeComplex add_multiple(const GradedFreeComplex& c, std::size_t n, std::size_t target,
                                      std::size_t source, const Scalar& s) {
  std::vector<std::vector<BasisElement>> basis;
  std::vector<SparseMatrix> d(c.num_degrees());
  for (std::size_t k = 0; k < c.num_degrees(); ++k) basis.push_back(c.basis(k));
  for (std::size_t k = 1; k < c.num_degrees(); ++k) d[k] = c.differential(k);
  if (n >= 1) {
    for (const auto& [r, v] : c.differential(n).column(source)) d[n].add_to(r, target, s * v);
  }
  if (n + 1 < c.num_degrees()) {
    for (std::size_t j = 0; j < basis[n + 1].size(); ++j) {
      auto v = c.differential(n + 1).get(target, j);
      if (!v.is_zero()) d[n + 1].add_to(source, j, -(s * v));
    }
  }
  return GradedFreeComplex(c.num_vars(), c.field(), std::move(basis), std::move(d));
}

}  // namespace testing_support
