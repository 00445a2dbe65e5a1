#include "doctest.h"
#include "support/random.hpp"
#include "versal/errors.hpp"
#include "versal/parse.hpp"

using namespace versal;

namespace {

RingPtr xy(Field f = Field::rationals()) { return make_ring({"x", "y"}, f); }

}  // namespace

TEST_CASE("field elements stay normalized") {
  Field q = Field::rationals();
  FieldElem a(q, mpq_class(6, -4));
  CHECK(a.to_string() == "-3/2");
  Field f5 = Field::prime(5);
  CHECK(FieldElem(f5, -1).to_string() == "4");
  CHECK(FieldElem(f5, 3).inverse() == FieldElem(f5, 2));
  CHECK(FieldElem::parse(f5, "1/2") == FieldElem(f5, 3));
  CHECK_THROWS_AS(FieldElem(q, 0).inverse(), std::domain_error);
  CHECK_THROWS(Field::prime(9));
  CHECK(Field::parse("Fp:7").characteristic() == 7);
  CHECK(Field::parse("Fp 7") == Field::prime(7));
}

TEST_CASE("poly_add") {
  auto r = xy();
  auto x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  CHECK(poly_add(x, -x).is_zero());
  CHECK(poly_add(parse_poly(r, "x^2+1"), y) == parse_poly(r, "x^2 + y + 1"));
  auto r2 = xy(Field::prime(2));
  auto x2 = Poly::variable(r2, 0);
  CHECK(poly_add(x2, x2).is_zero());
  CHECK_THROWS_AS(poly_add(x, x2), RingMismatch);
}

TEST_CASE("poly_mul") {
  auto r = xy();
  auto x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  CHECK(poly_mul(x + y, x - y) == parse_poly(r, "x^2 - y^2"));
  auto p = parse_poly(r, "3x^2y - 1/2 y + 7");
  CHECK(poly_mul(p, Poly::constant(r, 1)) == p);
  CHECK(poly_mul(p, Poly(r)).is_zero());
}

TEST_CASE("partial_derivative") {
  auto r = xy();
  auto f = parse_poly(r, "x^3 + y^2");
  CHECK(partial_derivative(f, 0) == parse_poly(r, "3x^2"));
  CHECK(partial_derivative(f, 1) == parse_poly(r, "2y"));
  auto r3 = xy(Field::prime(3));
  CHECK(partial_derivative(parse_poly(r3, "x^3"), 0).is_zero());
  CHECK_THROWS_AS(partial_derivative(f, 2), std::out_of_range);
}

TEST_CASE("printing and parsing") {
  auto r = xy();
  auto p = parse_poly(r, "x^3 + y^2 - 3/2*x*y");
  CHECK(p.to_string() == "x^3 - 3/2*x*y + y^2");
  CHECK(parse_poly(r, p.to_string()) == p);
  CHECK(parse_poly(r, "-(x - y)^2") == parse_poly(r, "-x^2 + 2x y - y^2"));
  CHECK_THROWS_AS(parse_poly(r, "x + z"), ParseError);
  CHECK_THROWS_AS(parse_poly(r, "x / y"), ParseError);
  CHECK_THROWS_AS(parse_poly(r, "(x + 1"), ParseError);
  CHECK_THROWS_AS(parse_poly(r, ""), ParseError);
}

TEST_CASE("orders") {
  Monomial one{0, 0}, x{1, 0}, y{0, 1}, x2{2, 0}, xy{1, 1};
  CHECK(compare(MonomialOrder::DegRevLex, x, one) > 0);
  CHECK(compare(MonomialOrder::NegDegRevLex, x, one) < 0);
  CHECK(compare(MonomialOrder::DegRevLex, x, y) > 0);
  CHECK(compare(MonomialOrder::NegDegRevLex, x, y) > 0);
  CHECK(compare(MonomialOrder::Lex, x, xy) < 0);
  CHECK(compare(MonomialOrder::NegDegRevLex, xy, x2) < 0);
}

TEST_CASE("ring axioms on random triples") {
  testsupport::Gen gen(1);
  for (auto order : {MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::NegDegRevLex}) {
    auto r = make_ring({"x", "y", "z"}, Field::rationals(), order);
    for (int it = 0; it < 30; ++it) {
      auto a = gen.poly(r, 4, 3), b = gen.poly(r, 4, 3), c = gen.poly(r, 4, 3);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      for (std::size_t v = 0; v < 3; ++v)
        CHECK(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v));
      auto prod = a * b;
      for (std::size_t i = 1; i < prod.size(); ++i)
        CHECK(compare(order, prod.terms()[i - 1].mono, prod.terms()[i].mono) > 0);
    }
  }
}

TEST_CASE("substitution") {
  auto r = xy();
  auto t = make_ring({"t"});
  auto p = parse_poly(r, "x^2 + x*y");
  std::vector<Poly> images{parse_poly(t, "t + 1"), parse_poly(t, "2")};
  CHECK(substitute(p, t, images) == parse_poly(t, "t^2 + 4t + 3"));
}
