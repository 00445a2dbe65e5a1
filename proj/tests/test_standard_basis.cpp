#include "doctest.h"
#include "support/oracle.hpp"
#include "support/random.hpp"
#include "versal/parse.hpp"
#include "versal/standard_basis.hpp"

using namespace versal;

namespace {

RingPtr ring2(MonomialOrder o = MonomialOrder::DegRevLex) { return make_ring({"x", "y"}, Field::rationals(), o); }

Ideal ideal(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Poly> ps;
  for (auto g : gens) ps.push_back(parse_poly(r, g));
  return Ideal(r, ps);
}

Poly combo(const std::vector<Poly>& gens, testsupport::Gen& gen) {
  Poly s(gens.front().ring());
  for (const auto& g : gens) s += g * gen.poly(g.ring(), 3, 2);
  return s;
}

}  // namespace

TEST_CASE("compute_standard_basis examples") {
  auto r = ring2();
  auto b = compute_standard_basis(ideal(r, {"x", "y"}));
  CHECK(b.elements().size() == 2);

  auto I = ideal(r, {"x^2 - y", "y^2"});
  auto sb = compute_standard_basis(I);
  // Under degrevlex x^2 leads x^2 - y, so the leading ideal is (x^2, y^2).
  std::vector<Monomial> lead;
  for (const auto& e : sb.elements()) lead.push_back(e.leading_monomial());
  CHECK(lead == std::vector<Monomial>{Monomial{2, 0}, Monomial{0, 2}});
  auto st = staircase(sb);
  CHECK(st.finite);
  CHECK(st.size() == 4);
  CHECK(ideal_member(parse_poly(r, "x^4"), I));

  auto rl = ring2(MonomialOrder::NegDegRevLex);
  auto sl = compute_standard_basis(ideal(rl, {"x + x^2"}));
  CHECK(sl.elements().front().leading_monomial() == Monomial{1, 0});
}

TEST_CASE("normal_form examples") {
  auto r = ring2();
  auto b = compute_standard_basis(ideal(r, {"x"}));
  CHECK(normal_form(parse_poly(r, "x^2"), b).is_zero());
  CHECK(normal_form(parse_poly(r, "x^2 + y"), b) == parse_poly(r, "y"));
}

TEST_CASE("ideal_member examples") {
  auto r = ring2();
  CHECK(ideal_member(parse_poly(r, "x*y"), ideal(r, {"x"})));
  CHECK_FALSE(ideal_member(parse_poly(r, "1"), ideal(r, {"x", "y"})));
  auto rl = ring2(MonomialOrder::NegDegRevLex);
  auto unit_ideal = ideal(rl, {"1 + x"});
  CHECK(ideal_member(parse_poly(rl, "1"), unit_ideal));
  CHECK_FALSE(ideal_member(parse_poly(r, "1"), ideal(r, {"x + x^2"})));
}

TEST_CASE("quotient_staircase examples") {
  auto r = ring2();
  auto s1 = quotient_staircase(ideal(r, {"x", "y"}));
  CHECK(s1.finite);
  CHECK(s1.monomials() == std::vector<Monomial>{Monomial{0, 0}});
  auto s2 = quotient_staircase(ideal(r, {"x^2", "y"}));
  CHECK(s2.monomials() == std::vector<Monomial>{Monomial{0, 0}, Monomial{1, 0}});
  CHECK_FALSE(quotient_staircase(ideal(r, {"x"})).finite);
}

TEST_CASE("syzygies examples") {
  auto r = make_ring({"x", "y", "z"});
  auto check_zero = [](const SyzygyModule& s, const std::vector<Poly>& f) {
    for (const auto& col : s.columns) {
      Poly sum(f.front().ring());
      for (std::size_t j = 0; j < f.size(); ++j) sum += col[j] * f[j];
      CHECK(sum.is_zero());
    }
  };
  std::vector<Poly> f1{parse_poly(r, "x"), parse_poly(r, "y")};
  auto s1 = syzygies(f1);
  REQUIRE(s1.columns.size() == 1);
  auto c = s1.columns[0];
  CHECK(((c[0] == parse_poly(r, "y") && c[1] == parse_poly(r, "-x")) ||
         (c[0] == parse_poly(r, "-y") && c[1] == parse_poly(r, "x"))));
  std::vector<Poly> f2{parse_poly(r, "x"), parse_poly(r, "x")};
  auto s2 = syzygies(f2);
  REQUIRE(s2.columns.size() == 1);
  CHECK(s2.columns[0][0] == -s2.columns[0][1]);
  CHECK(s2.columns[0][0].is_constant());
  std::vector<Poly> f3{parse_poly(r, "x*y"), parse_poly(r, "x*z"), parse_poly(r, "y*z")};
  auto s3 = syzygies(f3);
  CHECK(s3.columns.size() == 2);
  check_zero(s1, f1);
  check_zero(s2, f2);
  check_zero(s3, f3);
}

TEST_CASE("global basis properties on random ideals") {
  testsupport::Gen gen(7);
  for (auto order : {MonomialOrder::DegRevLex, MonomialOrder::Lex}) {
    auto r = make_ring({"x", "y", "z"}, Field::rationals(), order);
    const unsigned deg = order == MonomialOrder::Lex ? 2 : 3;
    for (int it = 0; it < 8; ++it) {
      std::vector<Poly> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(gen.poly(r, 3, deg, 1));
      auto sb = compute_standard_basis(Ideal(r, gens));
      std::vector<FreeVec> gv;
      for (const auto& g : gens) gv.push_back(FreeVec::from_poly(g));
      Lifter lifter(r, 1, gv);
      for (const auto& g : gens) CHECK(normal_form(g, sb).is_zero());
      for (const auto& e : sb.elements()) {
        auto cof = lifter.lift(FreeVec::from_poly(e));
        REQUIRE(cof.has_value());
        Poly sum(r);
        for (std::size_t i = 0; i < gens.size(); ++i) sum += (*cof)[i] * gens[i];
        CHECK(sum == e);
      }
      for (int k = 0; k < 4; ++k) {
        Poly p = gen.poly(r, 4, 4);
        Poly nf = normal_form(p, sb);
        CHECK(normal_form(nf, sb) == nf);
        CHECK(lifter.contains(FreeVec::from_poly(p - nf)));
        for (const auto& t : nf.terms()) CHECK(sb.is_standard(t.mono, 0));
        Poly c = combo(gens, gen);
        CHECK(normal_form(c, sb).is_zero());
        CHECK(lifter.contains(FreeVec::from_poly(c)));
      }
    }
  }
}

TEST_CASE("local basis properties on random finite-colength ideals") {
  testsupport::Gen gen(8);
  auto r = make_ring({"x", "y", "z"}, Field::rationals(), MonomialOrder::NegDegRevLex);
  for (int it = 0; it < 8; ++it) {
    std::vector<Poly> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(gen.poly(r, 3, 3, 1));
    for (const char* pw : {"x^5", "y^5", "z^5"}) gens.push_back(parse_poly(r, pw));
    auto sb = compute_standard_basis(Ideal(r, gens));
    auto st = staircase(sb);
    REQUIRE(st.finite);
    auto oracle = testsupport::local_colength(gens);
    REQUIRE(oracle.has_value());
    CHECK(st.size() == *oracle);
    for (const auto& g : gens) CHECK(normal_form(g, sb).is_zero());
    for (const auto& e : sb.elements()) {
      auto extended = gens;
      extended.push_back(e);
      CHECK(testsupport::local_colength(extended) == oracle);
    }
    for (int k = 0; k < 4; ++k) {
      Poly p = gen.poly(r, 4, 4);
      Poly nf = normal_form(p, sb);
      CHECK(normal_form(nf, sb) == nf);
      auto with_p = gens;
      with_p.push_back(p - nf);
      CHECK(testsupport::local_colength(with_p) == oracle);
      CHECK(normal_form(combo(gens, gen), sb).is_zero());
    }
  }
}

TEST_CASE("Mora normal form without a corner") {
  auto r = make_ring({"x", "y"}, Field::rationals(), MonomialOrder::NegDegRevLex);
  std::vector<std::pair<std::vector<const char*>, const char*>> cases{
      {{"x + x^2*y"}, "x*y + y^3"}, {{"x - y^2*x"}, "x^2"}, {{"x^2 + x*y^3", "x*y - x^3"}, "y^2*x^3 + x^2*y"}};
  for (const auto& [gs, ps] : cases) {
    std::vector<Poly> gens;
    for (auto g : gs) gens.push_back(parse_poly(r, g));
    auto sb = compute_standard_basis(Ideal(r, gens));
    CHECK_FALSE(sb.corner().has_value());
    Poly p = parse_poly(r, ps);
    auto [rem, unit] = sb.normal_form_with_unit(FreeVec::from_poly(p));
    CHECK_FALSE(unit.constant_coeff().is_zero());
    // unit * p - rem lies in the ideal: its weak normal form vanishes
    CHECK(normal_form(unit * p - rem.component(0), sb).is_zero());
    if (!rem.is_zero()) CHECK(sb.is_standard(rem.leading().mono, 0));
  }
  // x*y + y^3 = y*(x + y^2) is not in (x + x^2*y) = (x)
  auto sb = compute_standard_basis(Ideal(r, {parse_poly(r, "x + x^2*y")}));
  CHECK(normal_form(parse_poly(r, "x*y"), sb).is_zero());
  CHECK_FALSE(normal_form(parse_poly(r, "y^3"), sb).is_zero());
}

TEST_CASE("staircase matches the elimination oracle") {
  testsupport::Gen gen(11);
  auto rl = ring2(MonomialOrder::NegDegRevLex);
  std::vector<std::vector<const char*>> fixtures{
      {"x^3 + y^2", "3x^2", "2y"}, {"x^2 + y^2"}, {"x^2 - y + x*y", "y^3 + x^4"}, {"x*y", "x^3 + y^4"}, {"x^5 + y^3 + x^2*y^2", "x^4 + y^2"}};
  for (const auto& f : fixtures) {
    std::vector<Poly> gens;
    for (auto s : f) gens.push_back(parse_poly(rl, s));
    auto st = quotient_staircase(Ideal(rl, gens));
    if (!st.finite) {
      CHECK(f.size() == 1);
      continue;
    }
    auto oracle = testsupport::local_colength(gens);
    REQUIRE(oracle.has_value());
    CHECK(st.size() == *oracle);
  }
}

TEST_CASE("finite quotient coordinates") {
  auto rl = ring2(MonomialOrder::NegDegRevLex);
  auto I = Ideal(rl, {parse_poly(rl, "x^3 + y^2"), parse_poly(rl, "3x^2"), parse_poly(rl, "2y")});
  FiniteQuotient q(I.basis());
  CHECK(q.dimension() == 2);
  auto c = q.coordinates(parse_poly(rl, "2 + 3x + x^2 + y + x*y^7"));
  CHECK(c[0] == FieldElem(rl->field, 2));
  CHECK(c[1] == FieldElem(rl->field, 3));
  // unit multiples: (1+x)*x^2 is in the ideal
  CHECK(q.reduce(parse_poly(rl, "x^2 + x^3")).is_zero());
}
