#include <gtest/gtest.h>

#include "common.hpp"

using namespace monores;
using namespace testing_support;

namespace {

ErrorKind parse_error_kind(const std::string& text) {
  try {
    io::parse_ideal_string(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::VerificationFailed;
}

}  // namespace

TEST(IdealParser, ProductsWithHeader) {
  auto f = io::parse_ideal_string("vars: x y z\nx*y^2\n  z # trailing comment\n");
  EXPECT_EQ(f.vars, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(f.monomials, (std::vector<Multidegree>{{1, 2, 0}, {0, 0, 1}}));
}

TEST(IdealParser, ProductsWithoutHeaderCollectVariables) {
  auto f = io::parse_ideal_string("b * a\nc^2\n");
  EXPECT_EQ(f.vars, (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_EQ(f.monomials, (std::vector<Multidegree>{{1, 1, 0}, {0, 0, 2}}));
}

TEST(IdealParser, ExponentRows) {
  auto f = io::parse_ideal_string(io::read_file(fixture("rows.ideal")));
  EXPECT_EQ(f.vars, (std::vector<std::string>{"x1", "x2", "x3"}));
  EXPECT_EQ(f.monomials.size(), 3u);
  EXPECT_EQ(f.monomials[0], (Multidegree{2, 0, 1}));
}

TEST(IdealParser, RepeatedFactorsAdd) {
  EXPECT_EQ(io::parse_ideal_string("vars: x\nx*x^2\n").monomials[0], (Multidegree{3}));
}

TEST(IdealParser, Errors) {
  EXPECT_EQ(parse_error_kind(""), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("# only a comment\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("vars: x\ny\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("1 0\n1 0 1\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("x\nvars: x\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("1 0\nx*y\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("vars: x y\n1 0 1\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("vars: x\nx^a\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("x**y\n"), ErrorKind::ParseError);
  EXPECT_THROW(io::read_file(fixture("missing.ideal")), Error);
}

TEST(IdealParser, FixturesAgreeWithHandWrittenIdeals) {
  EXPECT_EQ(load_ideal("triangle.ideal"), minimalize({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(load_ideal("xy.ideal"), minimalize({{1, 1}}));
  EXPECT_EQ(rp2().size(), 10u);
  EXPECT_EQ(rp2().num_vars(), 6u);
  EXPECT_EQ(ideal_M().size(), 5u);
  EXPECT_EQ(ideal_M().num_vars(), 7u);
}

TEST(FormatMonomial, Examples) {
  EXPECT_EQ(io::format_monomial({1, 0, 2}, {"x", "y", "z"}), "x*z^2");
  EXPECT_EQ(io::format_monomial({0, 0}, {"x", "y"}), "1");
}

TEST(ScalarJson, RoundTrip) {
  auto q = rationals();
  for (const auto& s : {Scalar(3), Scalar(-7), Scalar(mpq_class(2, 3))}) {
    EXPECT_EQ(io::scalar_from_json(io::scalar_to_json(s), q), s);
  }
  auto f = prime_field(5);
  EXPECT_EQ(io::scalar_to_json(f.from_int(-1)), io::json(4));
  EXPECT_EQ(io::scalar_from_json(io::json("1/2"), f), f.from_int(3));
  EXPECT_THROW(io::scalar_from_json(io::json("abc"), q), Error);
  EXPECT_THROW(io::scalar_from_json(io::json(1.5), q), Error);
}

TEST(ComplexJson, RoundTrip) {
  for (const auto* name : {"rp2_basis.json", "M_basis1.json", "M_basis2.json"}) {
    auto c = load_complex(name);
    auto j = io::complex_to_json(c);
    auto back = io::complex_from_json(j);
    EXPECT_EQ(back.ranks(), c.ranks()) << name;
    EXPECT_EQ(back.field(), c.field()) << name;
    for (std::size_t n = 0; n < c.num_degrees(); ++n) {
      EXPECT_EQ(back.basis(n), c.basis(n));
      EXPECT_EQ(back.differential(n), c.differential(n));
    }
    EXPECT_EQ(io::complex_to_json(back).dump(), j.dump()) << name;
  }
}

TEST(ComplexJson, FieldOverride) {
  auto j = io::complex_to_json(load_complex("M_basis1.json"));
  auto c = io::complex_from_json(j, prime_field(3));
  EXPECT_EQ(c.field(), prime_field(3));
  c.check_complex();
}

TEST(ComplexJson, RejectsWrongExponent) {
  auto j = io::complex_to_json(load_complex("M_basis1.json"));
  j["differentials"][0]["entries"][0]["exponent"][0] = 5;
  EXPECT_THROW(io::complex_from_json(j), Error);
  auto k = io::complex_to_json(load_complex("M_basis1.json"));
  k.erase("degrees");
  EXPECT_THROW(io::complex_from_json(k), Error);
}

TEST(BettiJson, Entries) {
  auto t = betti_table(minimal_resolution(load_ideal("koszul2.ideal"), rationals()));
  auto j = io::betti_to_json(t);
  ASSERT_EQ(j["entries"].size(), 3u);
  EXPECT_EQ(j["entries"][2]["i"], 1);
  EXPECT_EQ(j["entries"][2]["deg"], io::json({1, 1}));
  EXPECT_EQ(io::betti_summary(t), "betti: 2 1");
}

TEST(PosetJson, RoundTripAndDot) {
  auto p = incidence_poset(load_complex("M_basis2.json"));
  auto back = io::poset_from_json(io::poset_to_json(p));
  EXPECT_EQ(back, p);
  auto plain = make_poset(3, {{0, 2}, {1, 2}});
  EXPECT_EQ(io::poset_from_json(io::poset_to_json(plain)), plain);
  EXPECT_THROW(io::poset_from_json(io::json{{"elements", 3}}), Error);

  auto dot = io::poset_to_dot(plain, {{1, 2}});
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("0 -> 2;"), std::string::npos);
  EXPECT_NE(dot.find("1 -> 2 [style=dashed];"), std::string::npos);
}

TEST(ReportJson, HcwReport) {
  auto r = hcwify(incidence_poset(load_complex("rp2_basis.json")), prime_field(2));
  auto j = io::hcw_report_to_json(r);
  EXPECT_EQ(j["added_relations"], io::json::parse("[[31, 32]]"));
  EXPECT_EQ(j["sphere_before"].back(), io::json({{"id", 32}, {"sphere", false}}));
  EXPECT_EQ(j["sphere_after"].back(), io::json({{"id", 32}, {"sphere", true}}));
  EXPECT_EQ(io::poset_from_json(j["output"]), r.output);
}
