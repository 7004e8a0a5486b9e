// Command-line front end: resolutions, minimal-support bases, incidence and
// conic complexes, hcw-ification and the full verification driver.

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "monores/monores.hpp"

using namespace monores;
using io::json;

namespace {

enum Exit { kOk = 0, kVerification = 1, kParse = 2, kCap = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::ShapeError:
    case ErrorKind::InvalidField:
    case ErrorKind::EmptyIdeal:
    case ErrorKind::NotFound:
      return kParse;
    case ErrorKind::TooLarge:
      return kCap;
    default:
      return kVerification;
  }
}

struct Options {
  std::string input;
  std::uint64_t characteristic = 0;
  bool json = false;
  bool dot = false;
  std::size_t cap = kDefaultTaylorCap;
};

/// What an input file holds: an ideal, a based complex, or a poset.
struct Input {
  std::optional<io::IdealFile> ideal;
  std::optional<GradedFreeComplex> complex;
  std::optional<Poset> poset;
};

Input load(const Options& o) {
  auto text = io::read_file(o.input);
  Input in;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    if (j.contains("elements")) {
      in.poset = io::poset_from_json(j);
    } else {
      in.complex = io::complex_from_json(j, FieldSpec{o.characteristic});
    }
  } else {
    in.ideal = io::parse_ideal_string(text);
  }
  return in;
}

FieldSpec field_of(const Options& o) {
  FieldSpec f{o.characteristic};
  f.validate();
  return f;
}

MonomialIdeal ideal_of(const Input& in) {
  if (in.ideal) return minimalize(in.ideal->monomials);
  if (in.complex) return in.complex->resolved_ideal();
  throw Error(ErrorKind::ParseError, "input does not describe an ideal");
}

/// The minimal resolution: computed from an ideal, or taken as given.
GradedFreeComplex resolution_of(const Input& in, const Options& o) {
  if (in.complex) return *in.complex;
  return minimal_resolution(ideal_of(in), field_of(o), o.cap);
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

const char* yes(bool b) { return b ? "true" : "false"; }

int cmd_resolve(const Options& o) {
  auto in = load(o);
  auto c = resolution_of(in, o);
  c.check_complex();
  auto t = betti_table(c);
  if (o.json) {
    std::cout << json{{"complex", io::complex_to_json(c)}, {"betti", io::betti_to_json(t)}}.dump(1) << "\n";
  } else {
    std::cout << io::betti_summary(t) << "\n";
    std::cout << "resolution: " << yes(is_resolution(c).ok) << "\n";
  }
  return kOk;
}

int cmd_betti(const Options& o) {
  auto t = betti_table(resolution_of(load(o), o));
  if (o.json) {
    std::cout << io::betti_to_json(t).dump(1) << "\n";
    return kOk;
  }
  std::cout << io::betti_summary(t) << "\n";
  for (const auto& [key, beta] : t) {
    std::cout << "beta_" << key.first << " " << format_degree(key.second) << " = " << beta << "\n";
  }
  return kOk;
}

int cmd_minbasis(const Options& o) {
  auto [c, log] = make_minimal_support_basis(resolution_of(load(o), o));
  if (o.json) {
    std::cout << json{{"complex", io::complex_to_json(c)}, {"changes", io::change_log_to_json(log)}}.dump(1) << "\n";
  } else {
    std::cout << "changes: " << log.size() << "\n";
    std::cout << "minimal_support: " << yes(has_minimal_support_basis(c)) << "\n";
  }
  return kOk;
}

Poset incidence_of(const Input& in, const Options& o) {
  if (in.poset) return *in.poset;
  return incidence_poset(make_minimal_support_basis(resolution_of(in, o)).first);
}

int cmd_incidence(const Options& o) {
  auto p = incidence_of(load(o), o);
  if (o.dot) {
    std::cout << io::poset_to_dot(p);
  } else if (o.json) {
    std::cout << io::poset_to_json(p).dump(1) << "\n";
  } else {
    std::cout << "elements: " << p.size() << "\n";
    std::cout << "covers: " << p.covers().size() << "\n";
    std::cout << "hcw: " << yes(is_hcw(p, field_of(o))) << "\n";
  }
  return kOk;
}

int cmd_conic(const Options& o) {
  auto p = incidence_of(load(o), o);
  auto f = field_of(o);
  auto c = conic_complex(p, f);
  if (o.json) {
    std::cout << io::conic_to_json(c).dump(1) << "\n";
    return kOk;
  }
  std::cout << "conic: " << join(c.ranks()) << "\n";
  std::cout << "exact: " << yes(conic_is_exact(c)) << "\n";
  if (p.has_degrees()) std::cout << "supports_resolution: " << yes(supports_resolution(p, f).ok) << "\n";
  return kOk;
}

int cmd_hcwify(const Options& o) {
  auto p = incidence_of(load(o), o);
  auto r = hcwify(p, field_of(o));
  if (o.dot) {
    std::cout << io::poset_to_dot(r.output, r.added);
  } else if (o.json) {
    std::cout << io::hcw_report_to_json(r).dump(1) << "\n";
  } else {
    std::cout << "added_relations: " << r.added.size() << "\n";
    for (const auto& [c, a] : r.added) std::cout << "added: " << c << " < " << a << "\n";
    std::cout << "hcw: " << yes(is_hcw(r.output, field_of(o))) << "\n";
  }
  return kOk;
}

int cmd_rigid(const Options& o) {
  auto t = betti_table(resolution_of(load(o), o));
  auto r = is_rigid(t);
  bool hcw = is_hcw(betti_poset(t), field_of(o));
  if (o.json) {
    std::cout << json{{"rigid", r.rigid}, {"witness", r.describe()}, {"betti_poset_hcw", hcw}}.dump(1) << "\n";
  } else {
    std::cout << "rigid: " << yes(r.rigid) << "\n";
    if (!r.rigid) std::cout << "witness: " << r.describe() << "\n";
    std::cout << "betti_poset_hcw: " << yes(hcw) << "\n";
  }
  return r.rigid == hcw ? kOk : kVerification;
}

int cmd_betti_poset(const Options& o) {
  auto p = betti_poset(betti_table(resolution_of(load(o), o)));
  if (o.dot) {
    std::cout << io::poset_to_dot(p);
  } else if (o.json) {
    std::cout << io::poset_to_json(p).dump(1) << "\n";
  } else {
    std::cout << "elements: " << p.size() << "\n";
    std::cout << "hcw: " << yes(is_hcw(p, field_of(o))) << "\n";
  }
  return kOk;
}

/// Runs every check in order; a check that throws counts as failed, and a
/// broken complex stops the later checks.
int cmd_verify(const Options& o) {
  auto in = load(o);
  auto f = field_of(o);
  int failed = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << name << ": " << (ok ? "pass" : "fail") << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    if (!ok) ++failed;
  };
  auto guarded = [&](const std::string& name, const std::function<bool()>& check) {
    try {
      report(name, check());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::TooLarge) throw;
      report(name, false, e.what());
    }
  };

  auto c = resolution_of(in, o);
  try {
    c.check_complex();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAComplex) throw;
    std::cout << "complex: ∂∘∂ ≠ 0\n";
    std::cout << "failed: 1\n";
    return kVerification;
  }
  std::cout << "complex: ∂∘∂ = 0\n";
  const auto ideal = ideal_of(in);
  std::cout << io::betti_summary(betti_table(c)) << "\n";
  guarded("resolution", [&] { return c.is_minimal() && is_resolution(c).ok; });

  std::optional<GradedFreeComplex> basis;
  guarded("minimal_support", [&] {
    basis = make_minimal_support_basis(c).first;
    return has_minimal_support_basis(*basis) && noncomparable_supports(*basis);
  });
  if (basis) {
    guarded("conic_iso", [&] {
      conic_iso_check(*basis);
      return true;
    });
    auto p = incidence_poset(*basis);
    guarded("support", [&] { return verify_mfr_support(ideal, *basis, f) && supports_resolution(p, f).ok; });
    guarded("conic_invariants", [&] {
      auto cc = conic_complex(p, f);
      return conic_kernel_matches_skeleta(cc, p) && conic_embeds_in_simplicial(cc) &&
             bar_reduce(homogenize(cc, p)).d == cc.d;
    });
    guarded("hcw", [&] {
      auto r = hcwify(p, f);
      std::cout << "added_relations: " << r.added.size() << "\n";
      bool hcw = is_hcw(r.output, f);
      std::cout << "hcw: " << yes(hcw) << "\n";
      auto h = homogenize(conic_complex(r.output, f), r.output);
      return hcw && betti_table(h) == betti_table(c) && conic_vs_simplicial(r.output, f);
    });
  }
  guarded("rigid_iff_hcw", [&] {
    auto t = betti_table(c);
    auto r = is_rigid(t);
    bool hcw = is_hcw(betti_poset(t), f);
    std::cout << "rigid: " << yes(r.rigid) << "\n";
    std::cout << "betti_poset_hcw: " << yes(hcw) << "\n";
    return r.rigid == hcw;
  });
  std::cout << "failed: " << failed << "\n";
  return failed ? kVerification : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal free resolutions of monomial ideals and the posets supporting them"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> run;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
    bool dot;
  };
  const Command commands[] = {
      {"resolve", "minimal free resolution of an ideal", cmd_resolve, false},
      {"betti", "multigraded Betti table", cmd_betti, false},
      {"minbasis", "basis with minimal boundary support", cmd_minbasis, false},
      {"incidence", "incidence poset of a minimal-support basis", cmd_incidence, true},
      {"conic", "conic chain complex of an incidence poset", cmd_conic, false},
      {"hcwify", "extend the incidence poset to an hcw-poset", cmd_hcwify, true},
      {"verify", "run the full invariant suite", cmd_verify, false},
      {"rigid", "rigidity test and Betti poset comparison", cmd_rigid, false},
      {"betti-poset", "poset of Betti degrees", cmd_betti_poset, true},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", o.input, "ideal file, complex JSON or poset JSON")->required();
    sub->add_option("--char", o.characteristic, "field characteristic (0 or a prime)");
    sub->add_option("--cap", o.cap, "maximum number of ideal generators");
    auto* j = sub->add_flag("--json", o.json, "emit JSON");
    sub->add_flag("--summary", "emit summary lines (default)")->excludes(j);
    if (c.dot) sub->add_flag("--dot", o.dot, "emit a DOT diagram")->excludes(j);
    auto fn = c.fn;
    sub->callback([&run, fn] { run = fn; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  try {
    return run(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
