#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "monores/conic.hpp"
#include "monores/error.hpp"
#include "monores/graded_complex.hpp"
#include "monores/hcw.hpp"
#include "monores/minsupport.hpp"
#include "monores/monomials.hpp"
#include "monores/posets.hpp"

namespace monores::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- ideals

struct IdealFile {
  std::vector<std::string> vars;
  std::vector<Multidegree> monomials;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline int parse_int(const std::string& s, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  }
  return out;
}

inline bool is_exponent_row(const std::string& s) {
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) && !std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace detail

/// Reads an ideal file: optional `vars:` header, then one monomial per line
/// as a product (`x1*x2^3`) or as exponents; `#` starts a comment.
inline IdealFile parse_ideal(std::istream& in) {
  IdealFile f;
  bool header = false;
  std::vector<std::pair<int, std::string>> products;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    auto text = detail::trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text.rfind("vars:", 0) == 0) {
      if (header || !f.monomials.empty() || !products.empty()) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": vars header must come first");
      }
      f.vars = detail::split_names(text.substr(5));
      if (f.vars.empty()) throw Error(ErrorKind::ParseError, "empty vars header");
      header = true;
      continue;
    }
    if (detail::is_exponent_row(text)) {
      Multidegree e;
      std::istringstream row(text);
      for (std::string tok; row >> tok;) e.push_back(detail::parse_int(tok, line));
      if (!f.monomials.empty() && f.monomials.front().size() != e.size()) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": inconsistent variable count");
      }
      if (header && e.size() != f.vars.size()) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": row does not match vars header");
      }
      f.monomials.push_back(std::move(e));
    } else {
      products.emplace_back(line, text);
    }
  }
  if (!products.empty()) {
    if (!f.monomials.empty()) throw Error(ErrorKind::ParseError, "cannot mix exponent rows and products");
    if (!header) {
      // variables in order of first appearance
      for (const auto& [line, text] : products) {
        std::istringstream fs(detail::strip_spaces(text));
        for (std::string tok; std::getline(fs, tok, '*');) {
          auto name = tok.substr(0, tok.find('^'));
          if (name.empty()) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": empty factor");
          if (std::find(f.vars.begin(), f.vars.end(), name) == f.vars.end()) f.vars.push_back(name);
        }
      }
    }
    for (const auto& [line, text] : products) {
      Multidegree e(f.vars.size(), 0);
      std::istringstream fs(detail::strip_spaces(text));
      for (std::string tok; std::getline(fs, tok, '*');) {
        auto caret = tok.find('^');
        auto name = tok.substr(0, caret);
        int power = caret == std::string::npos ? 1 : detail::parse_int(tok.substr(caret + 1), line);
        auto it = std::find(f.vars.begin(), f.vars.end(), name);
        if (name.empty() || it == f.vars.end()) {
          throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": unknown variable '" + name + "'");
        }
        if (power < 0) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": negative exponent");
        e[static_cast<std::size_t>(it - f.vars.begin())] += power;
      }
      f.monomials.push_back(std::move(e));
    }
  }
  if (f.monomials.empty()) throw Error(ErrorKind::ParseError, "no monomials");
  if (f.vars.empty()) {
    for (std::size_t i = 0; i < f.monomials.front().size(); ++i) f.vars.push_back("x" + std::to_string(i + 1));
  }
  return f;
}

inline IdealFile parse_ideal_string(const std::string& s) {
  std::istringstream in(s);
  return parse_ideal(in);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string format_monomial(const Multidegree& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- scalars

inline json scalar_to_json(const Scalar& s) {
  if (s.characteristic() == 0 && s.rational().get_den() == 1 && s.rational().get_num().fits_slong_p()) {
    return s.rational().get_num().get_si();
  }
  if (s.characteristic() != 0) return s.residue();
  return s.to_string();
}

inline Scalar scalar_from_json(const json& j, const FieldSpec& field) {
  if (j.is_number_integer()) return field.from_int(j.get<long>());
  if (j.is_string()) {
    try {
      return field.coerce(Scalar(mpq_class(j.get<std::string>())));
    } catch (const std::invalid_argument&) {
    }
  }
  throw Error(ErrorKind::ParseError, "bad scalar " + j.dump());
}

// ---------------------------------------------------------------- complexes

/// {num_vars, characteristic, degrees: [[{id, degree}]], differentials:
/// [{n, entries: [{row, col, scalar, exponent}]}]}; rows and cols are ids.
inline json complex_to_json(const GradedFreeComplex& c) {
  json j;
  j["num_vars"] = c.num_vars();
  j["characteristic"] = c.field().characteristic;
  json degs = json::array();
  for (std::size_t n = 0; n < c.num_degrees(); ++n) {
    json level = json::array();
    for (const auto& b : c.basis(n)) level.push_back({{"id", b.id}, {"degree", b.degree}});
    degs.push_back(std::move(level));
  }
  j["degrees"] = std::move(degs);
  json ds = json::array();
  for (std::size_t n = 1; n < c.num_degrees(); ++n) {
    json entries = json::array();
    for (const auto& [r, col, v] : c.differential(n).triplets()) {
      entries.push_back({{"row", c.basis(n - 1)[r].id},
                         {"col", c.basis(n)[col].id},
                         {"scalar", scalar_to_json(v)},
                         {"exponent", c.entry_exponent(n, r, col)}});
    }
    ds.push_back({{"n", n}, {"entries", std::move(entries)}});
  }
  j["differentials"] = std::move(ds);
  return j;
}

inline GradedFreeComplex complex_from_json(const json& j, std::optional<FieldSpec> field_override = std::nullopt) {
  try {
    FieldSpec field{j.value("characteristic", std::uint64_t{0})};
    if (field_override) field = *field_override;
    field.validate();
    const auto m = j.at("num_vars").get<std::size_t>();
    std::vector<std::vector<BasisElement>> basis;
    std::map<Id, std::pair<std::size_t, std::size_t>> where;
    for (const auto& level : j.at("degrees")) {
      std::vector<BasisElement> bs;
      for (const auto& b : level) {
        Id id = b.at("id").get<Id>();
        where[id] = {basis.size(), bs.size()};
        bs.push_back({id, b.at("degree").get<Multidegree>()});
      }
      basis.push_back(std::move(bs));
    }
    std::vector<SparseMatrix> d(basis.size());
    for (std::size_t n = 1; n < basis.size(); ++n) d[n] = SparseMatrix(basis[n - 1].size(), basis[n].size());
    for (const auto& block : j.value("differentials", json::array())) {
      auto n = block.at("n").get<std::size_t>();
      if (n == 0 || n >= basis.size()) throw Error(ErrorKind::ParseError, "differential index out of range");
      for (const auto& e : block.at("entries")) {
        auto r = where.at(e.at("row").get<Id>());
        auto c = where.at(e.at("col").get<Id>());
        if (r.first + 1 != n || c.first != n) throw Error(ErrorKind::ParseError, "entry between wrong degrees");
        if (e.contains("exponent")) {
          auto expect = difference(basis[n][c.second].degree, basis[n - 1][r.second].degree);
          if (e.at("exponent").get<Multidegree>() != expect) {
            throw Error(ErrorKind::ShapeError, "entry exponent does not match the basis degrees");
          }
        }
        if (!d[n].get(r.second, c.second).is_zero()) throw Error(ErrorKind::ParseError, "duplicate entry");
        d[n].set(r.second, c.second, scalar_from_json(e.at("scalar"), field));
      }
    }
    return GradedFreeComplex(m, field, std::move(basis), std::move(d));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  } catch (const std::out_of_range& e) {
    throw Error(ErrorKind::ParseError, std::string("unknown id: ") + e.what());
  }
}

// ---------------------------------------------------------------- Betti tables

inline json betti_to_json(const BettiTable& t) {
  json entries = json::array();
  for (const auto& [key, beta] : t) entries.push_back({{"i", key.first}, {"deg", key.second}, {"beta", beta}});
  return {{"entries", std::move(entries)}};
}

inline std::string betti_summary(const BettiTable& t) {
  std::string s = "betti:";
  for (int b : betti_totals(t)) s += " " + std::to_string(b);
  return s;
}

// ---------------------------------------------------------------- posets

inline json poset_to_json(const Poset& p) {
  json elems = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    json e{{"id", p.id(i)}, {"d", p.dim(i)}};
    if (p.has_degrees()) e["deg"] = p.degree(i);
    elems.push_back(std::move(e));
  }
  json covers = json::array();
  for (const auto& [lo, hi] : p.covers()) covers.push_back({lo, hi});
  return {{"elements", std::move(elems)}, {"covers", std::move(covers)}};
}

inline Poset poset_from_json(const json& j) {
  try {
    std::vector<Id> ids;
    std::vector<Multidegree> degs;
    bool with_degrees = true;
    for (const auto& e : j.at("elements")) {
      ids.push_back(e.at("id").get<Id>());
      if (e.contains("deg")) {
        degs.push_back(e.at("deg").get<Multidegree>());
      } else {
        with_degrees = false;
      }
    }
    std::vector<std::pair<Id, Id>> rel;
    for (const auto& c : j.at("covers")) rel.emplace_back(c.at(0).get<Id>(), c.at(1).get<Id>());
    std::optional<std::vector<Multidegree>> d;
    if (with_degrees && !ids.empty()) d = std::move(degs);
    return Poset(std::move(ids), rel, std::move(d));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

/// Hasse diagram drawn bottom-up, one rank per d; `dashed` covers are styled
/// as added relations.
inline std::string poset_to_dot(const Poset& p, const std::vector<std::pair<Id, Id>>& dashed = {}) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n";
  std::map<int, std::vector<Id>> ranks;
  for (std::size_t i = 0; i < p.size(); ++i) ranks[p.dim(i)].push_back(p.id(i));
  for (const auto& [d, ids] : ranks) {
    os << "  { rank=same;";
    for (auto id : ids) os << " " << id << ";";
    os << " }\n";
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << "  " << p.id(i);
    if (p.has_degrees()) os << " [label=\"" << p.id(i) << "\\n" << format_degree(p.degree(i)) << "\"]";
    os << ";\n";
  }
  for (const auto& [lo, hi] : p.covers()) {
    bool added = std::find(dashed.begin(), dashed.end(), std::pair(lo, hi)) != dashed.end();
    os << "  " << lo << " -> " << hi << (added ? " [style=dashed]" : "") << ";\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- logs and reports

inline json change_log_to_json(const BasisChangeLog& log) {
  json out = json::array();
  for (const auto& s : log) {
    json terms = json::array();
    for (const auto& t : s.terms) {
      terms.push_back({{"id", t.id}, {"coeff", scalar_to_json(t.coeff)}, {"exponent", t.exponent}});
    }
    out.push_back({{"degree", s.degree},
                   {"replaced", s.replaced},
                   {"kind", s.kind == BasisChangeStep::Kind::ReplaceByWitness ? "replace" : "combine"},
                   {"terms", std::move(terms)}});
  }
  return out;
}

inline json hcw_report_to_json(const HcwReport& r) {
  json added = json::array();
  for (const auto& [c, a] : r.added) added.push_back({c, a});
  auto verdicts = [](const std::map<Id, bool>& m) {
    json v = json::array();
    for (const auto& [id, ok] : m) v.push_back({{"id", id}, {"sphere", ok}});
    return v;
  };
  return {{"input", poset_to_json(r.input)},
          {"output", poset_to_json(r.output)},
          {"added_relations", std::move(added)},
          {"sphere_before", verdicts(r.sphere_before)},
          {"sphere_after", verdicts(r.sphere_after)}};
}

inline json conic_to_json(const ConicComplex& c) {
  json degs = json::array();
  for (const auto& gs : c.generators) {
    json level = json::array();
    for (const auto& g : gs) {
      json faces = json::array();
      for (const auto& [f, v] : g.cycle) faces.push_back({{"verts", f}, {"coeff", scalar_to_json(v)}});
      level.push_back({{"apex", g.apex}, {"faces", std::move(faces)}});
    }
    degs.push_back(std::move(level));
  }
  json ds = json::array();
  for (std::size_t n = 1; n < c.d.size(); ++n) {
    json entries = json::array();
    for (const auto& [r, col, v] : c.d[n].triplets()) {
      entries.push_back({{"row", r}, {"col", col}, {"scalar", scalar_to_json(v)}});
    }
    ds.push_back({{"n", n}, {"entries", std::move(entries)}});
  }
  return {{"characteristic", c.field.characteristic},
          {"augmented", c.augmented},
          {"generators", std::move(degs)},
          {"differentials", std::move(ds)}};
}

}  // namespace monores::io
