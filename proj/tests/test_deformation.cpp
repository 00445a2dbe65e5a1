#include "doctest.h"
#include "support/random.hpp"
#include "versal/deformation.hpp"
#include "versal/errors.hpp"
#include "versal/parse.hpp"

using namespace versal;

namespace {

Singularity sing(const std::vector<std::string>& vars, std::initializer_list<const char*> eqs) {
  auto r = make_ring(vars);
  std::vector<Poly> ps;
  for (auto e : eqs) ps.push_back(parse_poly(r, e));
  return Singularity(ps);
}

EmbeddedLifting lift(const ArtinianAlgebra& base, const Singularity& s, std::initializer_list<const char*> eqs) {
  RingPtr fam = family_ring(s, base);
  std::vector<Poly> ps;
  for (auto e : eqs) ps.push_back(parse_poly(fam, e));
  return EmbeddedLifting(base, ps, s);
}

ArtinianAlgebra algebra(const std::vector<std::string>& vars, std::initializer_list<const char*> rel) {
  auto r = make_ring(vars);
  std::vector<Poly> ps;
  for (auto e : rel) ps.push_back(parse_poly(r, e));
  return ArtinianAlgebra(r, ps);
}

SmallExtensionStep last_step(const ArtinianAlgebra& a) { return filtration(a).back(); }

/// Random family polynomial with every term divisible by a parameter.
Poly random_deformation_term(testsupport::Gen& gen, const EmbeddedLifting& l, int terms = 3) {
  const RingPtr& fam = l.ring();
  const std::size_t n = l.reference().nvars(), r = l.base().nparams();
  Poly p(fam);
  for (int i = 0; i < terms; ++i) {
    std::vector<Exponent> e(n + r, 0);
    for (int k = gen.integer(0, 2); k > 0; --k) ++e[static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1))];
    for (int k = gen.integer(1, static_cast<int>(l.base().order())); k > 0; --k)
      ++e[n + static_cast<std::size_t>(gen.integer(0, static_cast<int>(r) - 1))];
    p += Poly::term(fam, Monomial(e), gen.scalar(fam->field));
  }
  return p;
}

EmbeddedLifting perturb(testsupport::Gen& gen, const EmbeddedLifting& l) {
  std::vector<Poly> eqs = l.equations();
  for (auto& f : eqs) f += random_deformation_term(gen, l);
  return EmbeddedLifting(l.base(), eqs, l.reference());
}

/// Adds q-multiples of elements of I' to every equation.
EmbeddedLifting relift(testsupport::Gen& gen, const EmbeddedLifting& l, const SmallExtensionStep& step) {
  const RingPtr& fam = l.ring();
  std::vector<Poly> eqs = l.equations();
  for (auto& f : eqs)
    for (const auto& q : step.q_basis)
      for (const auto& g : l.equations()) {
        Poly h = gen.poly(fam, 2, 2) + Poly::constant(fam, gen.scalar(fam->field));
        f += map_by_name(q, fam) * h * g;
      }
  return EmbeddedLifting(l.base(), eqs, l.reference());
}

}  // namespace

TEST_CASE("make_truncation examples") {
  auto dual = make_truncation(1, 1);
  CHECK(dual.dimension() == 2);
  CHECK(dual.order() == 1);
  CHECK(make_truncation(0, 4).dimension() == 1);
  CHECK(make_truncation(0, 4).order() == 0);
  auto a = make_truncation(2, 2);
  CHECK(a.dimension() == 6);
  CHECK(a.order() == 2);
  CHECK(make_truncation(3, 2).dimension() == 10);
  CHECK(a.t_vars() == std::vector<std::string>{"t1", "t2"});
}

TEST_CASE("ArtinianAlgebra arithmetic and validation") {
  auto a = algebra({"t"}, {"t^3"});
  CHECK(a.order() == 2);
  CHECK(a.is_zero(parse_poly(a.ring(), "t^4 + t^3")));
  CHECK(a.reduce(parse_poly(a.ring(), "(1 + t)^3")) == parse_poly(a.ring(), "1 + 3t + 3t^2"));
  auto v = a.coordinates(parse_poly(a.ring(), "2 - t^2"));
  CHECK(a.element(v) == parse_poly(a.ring(), "2 - t^2"));
  CHECK_THROWS_AS(algebra({"t"}, {"t^2 - t"}), std::invalid_argument);
  CHECK_THROWS_AS(algebra({"t", "s"}, {"t^2"}), std::invalid_argument);
  CHECK_THROWS_AS(algebra({"t"}, {"1 + t"}), std::invalid_argument);
  // order is governed by the maximal ideal, not the generators
  auto b = algebra({"t", "s"}, {"t^2 - s^3", "t*s"});
  CHECK(b.dimension() == 5);
  CHECK(b.order() == 3);
  CHECK(b.quotient({parse_poly(b.ring(), "s^2")}) == algebra({"t", "s"}, {"t^2", "t*s", "s^2"}));
}

TEST_CASE("small extensions and filtrations") {
  auto a = make_truncation(2, 2);
  auto steps = filtration(a);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].total.dimension() == 3);
  CHECK(steps[0].quotient.dimension() == 1);
  CHECK(steps[0].q_basis.size() == 2);
  CHECK(steps[1].total == a);
  CHECK(steps[1].q_basis.size() == 3);
  CHECK(steps[1].quotient == steps[0].total);
  auto t3 = algebra({"t"}, {"t^3"});
  CHECK_THROWS_AS(make_small_extension(t3, {parse_poly(t3.ring(), "t")}), std::invalid_argument);
  auto s = make_small_extension(t3, {parse_poly(t3.ring(), "t^2"), parse_poly(t3.ring(), "3t^2")});
  CHECK(s.q_basis.size() == 1);
  CHECK(s.q_coordinates(parse_poly(t3.ring(), "5t^2")) == Vec{FieldElem(Field::rationals(), 5)});
  CHECK_FALSE(s.q_coordinates(parse_poly(t3.ring(), "t")).has_value());
  CHECK(filtration(make_truncation(0, 3)).empty());
}

TEST_CASE("EmbeddedLifting validation") {
  auto s = sing({"x", "y"}, {"x^3 + y^2"});
  auto dual = algebra({"t"}, {"t^2"});
  auto l = lift(dual, s, {"x^3 + y^2 + t*x + t^2*y + t^3"});
  CHECK(l.equations()[0] == parse_poly(l.ring(), "x^3 + y^2 + t*x"));
  CHECK_THROWS_AS(lift(dual, s, {"x^3 + y^2 + x"}), std::invalid_argument);
  CHECK_THROWS_AS(lift(dual, s, {"x^3 + y^2", "x"}), std::invalid_argument);
  CHECK_THROWS_AS(lift(algebra({"x"}, {"x^2"}), s, {"x^3 + y^2"}), std::invalid_argument);
  CHECK(l.restrict_to(dual.quotient({parse_poly(dual.ring(), "t")})).equations()[0] ==
        parse_poly(family_ring(s, dual), "x^3 + y^2"));
}

TEST_CASE("check_flatness examples") {
  auto dual = algebra({"t"}, {"t^2"});
  auto step = last_step(dual);
  auto hyp = sing({"x", "y"}, {"x^3 + y^2"});
  auto c1 = check_flatness(lift(dual, hyp, {"x^3 + y^2 + t*(x*y + 1)"}), step);
  CHECK(c1.flat);
  CHECK(c1.syzygies.empty());

  auto smooth = sing({"x", "y"}, {"x", "y"});
  auto l2 = lift(dual, smooth, {"x", "y + t*(x^2 + 3)"});
  for (auto src : {SyzygySource::Koszul, SyzygySource::General}) {
    auto c = check_flatness(l2, step, src);
    CHECK(c.flat);
    CHECK(verify_certificate(l2, c));
  }

  // (x, x) is not a regular sequence; the criterion still applies
  auto twice = sing({"x", "y"}, {"x", "x"});
  auto bad = lift(dual, twice, {"x", "x + t"});
  auto c3 = check_flatness(bad, step);
  CHECK_FALSE(c3.flat);
  CHECK_FALSE(c3.used_koszul);
  REQUIRE(c3.offending_syzygy.has_value());
  const auto& a = *c3.offending_syzygy;
  REQUIRE(a.size() == 2);
  CHECK(a[0].is_constant());
  CHECK(a[0] + a[1] == Poly(bad.ring()));
  CHECK(*c3.residue == a[0] * parse_poly(bad.ring(), "-t"));
  CHECK(check_flatness(lift(dual, twice, {"x", "x"}), step).flat);

  CHECK_THROWS_AS(check_flatness(lift(make_truncation(1, 2), hyp, {"x^3 + y^2"}), step), EndpointMismatch);
}

TEST_CASE("ICIS lifts are flat along the filtration and certificates verify") {
  auto s = sing({"x", "y", "z"}, {"x^2 + y^2 + z^2", "x*y"});
  auto base = make_truncation(1, 2);
  auto l = lift(base, s, {"x^2 + y^2 + z^2 + t1*z + t1^2*x", "x*y + t1*(1 + z^2)"});
  for (const auto& step : filtration(base)) {
    auto r = l.restrict_to(step.total);
    auto k = check_flatness(r, step, SyzygySource::Koszul);
    auto g = check_flatness(r, step, SyzygySource::General);
    CHECK(k.flat);
    CHECK(g.flat);
    CHECK(verify_certificate(r, k));
    CHECK(verify_certificate(r, g));
  }
  CHECK(is_flat(l));
}

TEST_CASE("flatness is invariant under multiplication by units") {
  testsupport::Gen gen(301);
  auto s = sing({"x", "y", "z"}, {"x*y + z^2", "x^2 + y^3 + z^3"});
  auto dual = make_truncation(1, 1);
  auto step = last_step(dual);
  auto base = EmbeddedLifting::trivial(dual, s);
  for (int it = 0; it < 5; ++it) {
    auto l = perturb(gen, base);
    std::vector<Poly> eqs = l.equations(), fibre;
    for (auto& f : eqs) {
      f = f * (Poly::constant(l.ring(), gen.nonzero_scalar(l.ring()->field)) + gen.poly(l.ring(), 2, 2, 1));
      fibre.push_back(special_fiber(f, s));
    }
    Singularity s2(fibre);
    EmbeddedLifting u(dual, eqs, s2);
    auto before = check_flatness(l, step, SyzygySource::General);
    auto after = check_flatness(u, step, SyzygySource::General);
    CHECK(before.flat);
    CHECK(after.flat);
    CHECK(verify_certificate(u, after));
  }
}

TEST_CASE("nu_difference laws") {
  testsupport::Gen gen(302);
  std::vector<std::pair<Singularity, ArtinianAlgebra>> fixtures{
      {sing({"x", "y"}, {"x^3 + y^2"}), make_truncation(1, 1)},
      {sing({"x", "y"}, {"x^2*y + y^4"}), make_truncation(2, 1)},
      {sing({"x", "y", "z"}, {"x^2 + y^2 + z^2", "x*y"}), make_truncation(2, 1)},
  };
  for (const auto& [s, base] : fixtures) {
    CAPTURE(s.to_string());
    auto step = last_step(base);
    auto triv = EmbeddedLifting::trivial(base, s);
    auto x1 = perturb(gen, triv), x2 = perturb(gen, triv), x3 = perturb(gen, triv);
    CHECK(nu_difference(x1, x1, step).is_zero());
    CHECK(nu_difference(x1, x3, step) == nu_difference(x1, x2, step) + nu_difference(x2, x3, step));
    CHECK(nu_difference(x2, x1, step) == -nu_difference(x1, x2, step));
    CHECK(nu_difference(x1, x2, step).is_zero() == (x1 == x2));
    // independence of the chosen lifts of the generators
    auto reference = nu_difference(x1, x2, step);
    for (int it = 0; it < 100; ++it) {
      auto y1 = relift(gen, x1, step);
      CHECK(nu_difference(y1, x2, step) == reference);
    }
  }
}

TEST_CASE("nu of a first-order family against the trivial one") {
  auto s = sing({"x", "y"}, {"x^3 + y^2"});
  auto base = make_truncation(2, 1);
  auto step = last_step(base);
  auto l = lift(base, s, {"x^3 + y^2 + t1*(x + 1) + t2*(x*y - 2)"});
  auto nu = nu_difference(l, EmbeddedLifting::trivial(base, s), step);
  REQUIRE(nu.q_basis.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const Poly& q = nu.q_basis[k];
    Poly expected = q == parse_poly(base.ring(), "t1") ? parse_poly(s.ring(), "x + 1") : parse_poly(s.ring(), "x*y - 2");
    CHECK(nu.components[k][0] == expected);
  }
  // reduction modulo F: adding t*F changes nothing
  auto l2 = lift(base, s, {"x^3 + y^2 + t1*(x + 1 + x^3 + y^2) + t2*(x*y - 2)"});
  CHECK(nu_difference(l, l2, step).is_zero());
}

TEST_CASE("nu_difference errors") {
  auto s = sing({"x", "y"}, {"x^3 + y^2"});
  auto t3 = algebra({"t"}, {"t^3"});
  auto step = last_step(t3);
  auto a = lift(t3, s, {"x^3 + y^2 + t*x"});
  auto b = lift(t3, s, {"x^3 + y^2 + t*y"});
  CHECK_THROWS_AS(nu_difference(a, b, step), ReductionMismatch);
  CHECK_THROWS_AS(nu_difference(a, b, last_step(make_truncation(1, 1))), EndpointMismatch);
  auto c = lift(t3, s, {"x^3 + y^2 + t*x + t^2*y"});
  auto nu = nu_difference(c, a, step);
  REQUIRE(nu.q_basis.size() == 1);
  CHECK(nu.q_basis[0] == parse_poly(t3.ring(), "t^2"));
  CHECK(nu.components[0][0] == parse_poly(s.ring(), "y"));
}

TEST_CASE("e_class and liftings_isomorphic examples") {
  auto s = sing({"x", "y"}, {"x^3 + y^2"});
  auto dual = algebra({"t"}, {"t^2"});
  auto step = last_step(dual);
  auto triv = EmbeddedLifting::trivial(dual, s);
  auto lx2 = lift(dual, s, {"x^3 + y^2 + t*x^2"});
  auto lx = lift(dual, s, {"x^3 + y^2 + t*x"});
  CHECK(e_class(lx, lx, step).is_zero());
  CHECK(liftings_isomorphic(triv, triv, step));
  CHECK(liftings_isomorphic(lx2, triv, step));
  CHECK_FALSE(nu_difference(lx2, triv, step).is_zero());
  CHECK_FALSE(liftings_isomorphic(lx, triv, step));

  auto base = make_truncation(2, 1);
  auto st2 = last_step(base);
  auto g = lift(base, s, {"x^3 + y^2 + t1 + t2*x"});
  auto e = e_class(g, EmbeddedLifting::trivial(base, s), st2);
  REQUIRE(e.coords.size() == 2);
  const Field q = Field::rationals();
  for (std::size_t k = 0; k < 2; ++k) {
    Vec expected = e.q_basis[k] == parse_poly(base.ring(), "t1") ? Vec{FieldElem(q, 1), FieldElem(q, 0)}
                                                                 : Vec{FieldElem(q, 0), FieldElem(q, 1)};
    CHECK(e.coords[k] == expected);
  }
}

TEST_CASE("e_class is functorial under base change") {
  testsupport::Gen gen(303);
  auto s = sing({"x", "y"}, {"x^2*y + y^3"});
  auto big = make_truncation(2, 1);
  auto big_step = last_step(big);
  auto small = algebra({"t1"}, {"t1^2"});
  auto small_step = last_step(small);
  auto t1 = t1_quotient(s);
  std::vector<Poly> images{parse_poly(small.ring(), "t1"), Poly(small.ring())};
  for (int it = 0; it < 10; ++it) {
    auto triv = EmbeddedLifting::trivial(big, s);
    auto x1 = perturb(gen, triv), x2 = perturb(gen, triv);
    auto e = e_class(x1, x2, big_step, *t1);
    auto pushed = e_class(base_change(x1, small, images), base_change(x2, small, images), small_step, *t1);
    // (g (x) id)(e): send each q-basis element to its image in the small q
    Vec expected = zero_vec(Field::rationals(), t1->dimension());
    for (std::size_t k = 0; k < e.q_basis.size(); ++k) {
      auto img = substitute(e.q_basis[k], small.ring(), images);
      auto coords = small_step.q_coordinates(img);
      REQUIRE(coords.has_value());
      for (std::size_t i = 0; i < t1->dimension(); ++i) expected[i] += (*coords)[0] * e.coords[k][i];
    }
    REQUIRE(pushed.coords.size() == 1);
    CHECK(pushed.coords[0] == expected);
  }
}

TEST_CASE("base_change validation") {
  auto s = sing({"x", "y"}, {"x^3 + y^2"});
  auto dual = algebra({"t"}, {"t^2"});
  auto l = lift(dual, s, {"x^3 + y^2 + t*x"});
  auto e = algebra({"e"}, {"e^3"});
  CHECK_THROWS_AS(base_change(l, e, {parse_poly(e.ring(), "1 + e")}), std::invalid_argument);
  CHECK_THROWS_AS(base_change(l, e, {parse_poly(e.ring(), "e")}), std::invalid_argument);
  auto ok = base_change(l, e, {parse_poly(e.ring(), "2e^2")});
  CHECK(ok.equations()[0] == parse_poly(ok.ring(), "x^3 + y^2 + 2e^2*x"));
}

TEST_CASE("glue_over_fiber_product examples") {
  auto s = sing({"x", "y"}, {"x^3 + y^2"});
  auto dual = algebra({"t"}, {"t^2"});
  auto m = lift(dual, s, {"x^3 + y^2 + t*(x + y)"});
  auto t = parse_poly(dual.ring(), "t");
  auto kappa = dual.quotient({t});
  auto g1 = glue_over_fiber_product(dual, {}, {t}, m, EmbeddedLifting::trivial(kappa, s));
  CHECK(g1 == m);
  CHECK(glue_over_fiber_product(dual, {}, {}, m, m) == m);

  auto a = algebra({"t", "s"}, {"t^2", "t*s", "s^2"});
  auto tt = parse_poly(a.ring(), "t"), ss = parse_poly(a.ring(), "s");
  auto at = a.quotient({ss}), as = a.quotient({tt});
  auto m1 = lift(at, s, {"x^3 + y^2 + t*x"});
  auto m2 = lift(as, s, {"x^3 + y^2 + s*y^3"});
  auto glued = glue_over_fiber_product(a, {ss}, {tt}, m1, m2);
  CHECK(glued.equations()[0] == parse_poly(glued.ring(), "x^3 + y^2 + t*x + s*y^3"));
  CHECK(glued.restrict_to(at) == m1);
  CHECK(glued.restrict_to(as) == m2);
  CHECK(is_flat(glued));

  CHECK_THROWS_AS(glue_over_fiber_product(dual, {}, {}, m, EmbeddedLifting::trivial(dual, s)), RestrictionMismatch);
  CHECK_THROWS_AS(glue_over_fiber_product(dual, {t}, {t}, EmbeddedLifting::trivial(kappa, s),
                                          EmbeddedLifting::trivial(kappa, s)),
                  std::invalid_argument);
}

TEST_CASE("randomized gluing round-trip") {
  testsupport::Gen gen(304);
  auto s = sing({"x", "y"}, {"x^2*y + y^4"});
  auto a = make_truncation(2, 2);
  auto t = parse_poly(a.ring(), "t1"), u = parse_poly(a.ring(), "t2");
  // A/(t1) x_{A/(t1, t2)} A/(t2) with (t1) meeting (t2) in zero requires
  // killing t1*t2
  auto ab = a.quotient({t * u});
  auto triv = EmbeddedLifting::trivial(ab, s);
  for (int it = 0; it < 20; ++it) {
    auto whole = perturb(gen, triv);
    auto m1 = whole.restrict_to(ab.quotient({u}));
    auto m2 = whole.restrict_to(ab.quotient({t}));
    auto g = glue_over_fiber_product(ab, {u}, {t}, m1, m2);
    CHECK(g == whole);
    CHECK(g.restrict_to(ab.quotient({u})) == m1);
    CHECK(g.restrict_to(ab.quotient({t})) == m2);
  }
}
