#include "doctest.h"

#include <random>
#include <string>

#include "generators.h"
#include "milnor/parse.h"

using namespace milnor;

namespace {

std::size_t error_position(const std::string& text) {
  try {
    parse_mixed(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error for " << text);
  return 0;
}

std::string real_map_error(const std::string& text) {
  try {
    parse_real_map(text);
  } catch (const ParseError& e) {
    return e.detail();
  }
  FAIL("expected a parse error for " << text);
  return {};
}

}  // namespace

TEST_CASE("parse_mixed reads the worked example") {
  auto psi = parse_mixed("(1+i) z1 z1~ + (-2-i) z2^2 z2~^2 + i z3^2 z3~");
  CHECK(psi.n() == 3);
  REQUIRE(psi.terms().size() == 3);
  CHECK(psi.terms()[0] == MixedTerm{1, ComplexRational(1, 1), 1, 1});
  CHECK(psi.terms()[1] == MixedTerm{2, ComplexRational(-2, -1), 2, 2});
  CHECK(psi.terms()[2] == MixedTerm{3, ComplexRational(0, 1), 2, 1});
}

TEST_CASE("parse_mixed minimal and alternative syntax") {
  auto one = parse_mixed("z1 z1~");
  CHECK(one.n() == 1);
  CHECK(one.terms()[0] == MixedTerm{1, ComplexRational(1), 1, 1});

  CHECK(parse_mixed("z1*conj(z1)") == one);
  CHECK(parse_mixed("z1 conj(z1)^1") == one);
  CHECK(parse_mixed("z1 z1 z1~") == parse_mixed("z1^2 z1~"));

  auto h = parse_mixed("z1 z1~ - z2 z2~ + z3^2 z3~");
  CHECK(h.terms()[1].coeff == ComplexRational(-1));

  auto frac = parse_mixed("3/2 z1 z1~ - 1/2i z2^2 z2~ + (0.5-2i) z3");
  CHECK(frac.terms()[0].coeff == ComplexRational(Rational(3, 2)));
  CHECK(frac.terms()[1].coeff == ComplexRational(0, Rational(-1, 2)));
  CHECK(frac.terms()[2].coeff == ComplexRational(Rational(1, 2), -2));

  CHECK(parse_mixed("vars=4; z1 z1~").n() == 4);
  CHECK(parse_mixed("z2 z2~; vars=3").n() == 3);
  CHECK(parse_mixed("z2 z2~").n() == 2);
  CHECK(parse_mixed("z2 z2~").term(1) == nullptr);
  CHECK(parse_mixed("z1~").terms()[0] == MixedTerm{1, ComplexRational(1), 0, 1});
}

TEST_CASE("parse_mixed errors") {
  CHECK_THROWS_AS(parse_mixed("z1 z1~ + z1^2 z1~"), ParseError);
  CHECK(error_position("z1 z1~ + z1^2 z1~") >= 7);
  CHECK_THROWS_AS(parse_mixed("0 z1 z1~"), ParseError);
  CHECK_THROWS_AS(parse_mixed("z1^0"), ParseError);
  CHECK_THROWS_AS(parse_mixed("z0 z0~"), ParseError);
  CHECK_THROWS_AS(parse_mixed("z1 z2"), ParseError);
  CHECK_THROWS_AS(parse_mixed(""), ParseError);
  CHECK_THROWS_AS(parse_mixed("vars=1; z2 z2~"), ParseError);
  CHECK(error_position("z1 z1~ + w") == 9);
  CHECK(error_position("z1 z1~ +") == 8);
  CHECK_THROWS_AS(parse_mixed("(1+i z1"), ParseError);
  CHECK_THROWS_AS(parse_mixed("z1^-1"), ParseError);
}

TEST_CASE("parse errors carry a readable message") {
  try {
    parse_mixed("z1 z1~ + $");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
    CHECK(std::string(e.what()).find("column 10") != std::string::npos);
  }
}

TEST_CASE("render round-trips") {
  for (const char* text : {"(1+i) z1 z1~ + (-2-i) z2^2 z2~^2 + i z3^2 z3~", "z1 z1~ - z2 z2~ + z3^2 z3~",
                           "z1 z1~ + z2^2 z2~", "z1^2 z1~", "-3/4 z2^3; vars=4", "i z1"}) {
    auto psi = parse_mixed(text);
    CHECK(parse_mixed(render(psi)) == psi);
  }
  CHECK(render(parse_mixed("z1 z1~ - z2 z2~ + z3^2 z3~")) == "z1 z1~ - z2 z2~ + z3^2 z3~");

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto psi = testgen::random_psi(rng, 1 + trial % 5);
    CHECK(parse_mixed(render(psi)) == psi);
  }
}

TEST_CASE("parse_real_map examples") {
  auto f = parse_real_map("(x*y + z^2, x) vars x,y,z");
  CHECK(f.n() == 3);
  CHECK(f.p() == 2);
  CHECK(f.var_names() == std::vector<std::string>{"x", "y", "z"});

  auto id = parse_real_map("(x1) vars x1");
  CHECK(id.n() == 1);
  CHECK(id.p() == 1);
  CHECK(id.evaluate(RealPoint::Constant(1, 2.5))[0] == 2.5);

  auto g = parse_real_map("(x^2+y^2+z^3+z*w^2, w^3+w*z^2) vars x,y,z,w");
  CHECK(g.n() == 4);
  CHECK(g.p() == 2);

  // Declared order fixes the coordinates.
  auto swapped = parse_real_map("(x) vars y,x");
  RealPoint p(2);
  p << 1, 7;
  CHECK(swapped.evaluate(p)[0] == 7);
}

TEST_CASE("parse_real_map arithmetic") {
  auto f = parse_real_map("(2x(y+1) - (x-y)^2/4, -x) vars x, y");
  auto g = parse_real_map("(2*x*y + 2*x - x^2/4 + x*y/2 - y^2/4, -x) vars x,y");
  CHECK(f == g);
  CHECK(parse_real_map("(x^2 - x^2 + 1) vars x").component(0).total_degree() == 0);
}

TEST_CASE("parse_real_map errors") {
  CHECK(real_map_error("(x*q) vars x").find("unknown variable") != std::string::npos);
  CHECK(real_map_error("(x/y) vars x,y").find("constant") != std::string::npos);
  CHECK_THROWS_AS(parse_real_map("(x, ) vars x"), ParseError);
  CHECK_THROWS_AS(parse_real_map("(x) x"), ParseError);
  CHECK_THROWS_AS(parse_real_map("(x) vars x,x"), ParseError);
  CHECK_THROWS_AS(parse_real_map("(x^y) vars x,y"), ParseError);
  CHECK_THROWS_AS(parse_real_map("((x) vars x"), ParseError);
  CHECK_THROWS_AS(parse_real_map("(x/0) vars x"), ParseError);
}

TEST_CASE("input kind detection") {
  CHECK(looks_like_real_map("(x*y + z^2, x) vars x,y,z"));
  CHECK_FALSE(looks_like_real_map("z1 z1~ + z2^2 z2~"));
  CHECK_FALSE(looks_like_real_map("vars=3; z1 z1~"));
}
