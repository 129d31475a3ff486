#include "doctest.h"
#include "ucnet/error.hpp"
#include "ucnet/expr.hpp"

using namespace ucnet;

TEST_CASE("affine expressions parse and print") {
  auto e = parse_affine("2*C4 + Hx|y - 0.5");
  CHECK(e.cap_coef("4") == 2);
  CHECK(e.hxy == 1);
  CHECK(e.hy == -1);
  CHECK(e.constant == doctest::Approx(-0.5));

  auto i = parse_affine("Ixy");
  CHECK(i.hx == 1);
  CHECK(i.hy == 1);
  CHECK(i.hxy == -1);

  auto t = parse_tie("C1+C2+C3=Hxy");
  CHECK(t.cap_coef("1") == 1);
  CHECK(t.cap_coef("3") == 1);
  CHECK(t.hxy == -1);

  auto z = parse_affine("C2 + C2 - C2");
  CHECK(z.cap_coef("2") == 1);
  CHECK(parse_affine("C3 - C3").caps.empty());

  CHECK(parse_affine("C10 + C9 + C2").to_string() == "C2 + C9 + C10");
  CHECK(parse_affine("C4 - Hx").to_string() == "C4 - H(X)");
}

TEST_CASE("named measure terms") {
  CHECK(measure_terms(1, 1, -1) == "I(X;Y)");
  CHECK(measure_terms(0, -1, 1) == "H(X|Y)");
  CHECK(measure_terms(-1, 0, 1) == "H(Y|X)");
  CHECK(measure_terms(0, 0, 1) == "H(X,Y)");
  CHECK(measure_terms(0, 0, 0).empty());
}

TEST_CASE("measure evaluation") {
  MeasureSet m;
  m.h_x = 1;
  m.h_y = 1;
  m.h_xy = 1.5;
  CHECK(parse_affine("Ixy").measure_value(m) == doctest::Approx(0.5));
  CHECK(parse_affine("Hx|y + 1").measure_value(m) == doctest::Approx(1.5));
}

TEST_CASE("malformed expressions") {
  for (const char* bad : {"Hq", "C", "1=2=3", "2*", "C1 +", "", "C1 C2"}) {
    CAPTURE(bad);
    try {
      std::string s(bad);
      if (s.find('=') != std::string::npos) (void)parse_tie(s);
      else (void)parse_affine(s);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  CHECK_THROWS_AS(parse_tie("C1 + C2"), Error);
}

TEST_CASE("natural ordering of ids") {
  CHECK(natural_less("2", "10"));
  CHECK_FALSE(natural_less("10", "2"));
  CHECK(natural_less("a", "b"));
}
