#include "doctest.h"
#include "support/random.hpp"
#include "versal/errors.hpp"
#include "versal/extension.hpp"
#include "versal/parse.hpp"

using namespace versal;

namespace {

RingPtr qx() { return make_ring({"x"}); }
RingPtr qxy() { return make_ring({"x", "y"}); }

PresentedModule cyc(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Poly> ps;
  for (auto g : gens) ps.push_back(parse_poly(r, g));
  return PresentedModule::cyclic(r, ps);
}

FreeVec vec(const PresentedModule& m, std::initializer_list<const char*> entries) {
  std::vector<Poly> ps;
  for (auto e : entries) ps.push_back(parse_poly(m.ring(), e));
  return m.cover(ps);
}

/// 0 -> G --(1 -> t)--> E --(1 -> 1)--> F -> 0 for cyclic modules.
Extension cyclic_extension(const PresentedModule& g, const PresentedModule& e, const PresentedModule& f,
                           const char* t) {
  return make_extension(ModuleHom(g, e, {vec(e, {t})}), ModuleHom(e, f, {vec(f, {"1"})}));
}

/// kappa[x]/(x^2) as an extension of kappa[x]/(x) by itself.
Extension dual_numbers(const RingPtr& r) {
  auto k = cyc(r, {"x"});
  return cyclic_extension(k, cyc(r, {"x^2"}), k, "x");
}

bool iso(const Extension& a, const Extension& b) {
  auto f = extensions_isomorphic(a, b);
  if (f) CHECK(is_isomorphism(*f));
  return f.has_value();
}

}  // namespace

TEST_CASE("hom_space examples") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto h1 = hom_space(k, k);
  CHECK(h1.finite);
  CHECK(h1.dimension == Dimension::finite(1));
  REQUIRE(h1.generators.size() == 1);
  CHECK_FALSE(h1.generators[0].is_zero());
  CHECK(is_isomorphism(h1.generators[0]));

  auto h2 = hom_space(k, PresentedModule::free(r, 1));
  CHECK(h2.dimension == Dimension::finite(0));
  CHECK((h2.generators.empty() || h2.generators[0].is_zero()));

  auto h3 = hom_space(cyc(r, {"x^2"}), k);
  CHECK(h3.dimension == Dimension::finite(1));

  // Hom(R, R) = R is a free module: infinite-dimensional
  auto h4 = hom_space(PresentedModule::free(r, 1), PresentedModule::free(r, 1));
  CHECK(h4.dimension.infinite);
  REQUIRE(h4.presentation.has_value());
  CHECK(h4.presentation->rank() == 1);
}

TEST_CASE("hom_space basis elements are independent homomorphisms") {
  auto r = qxy();
  auto m = cyc(r, {"x^2", "y^2"});
  auto n = cyc(r, {"x^2", "x*y", "y^3"});
  auto hs = hom_space(m, n);
  REQUIRE(hs.finite);
  // a map is the image of 1, which x^2 and y^2 must kill in n
  FiniteModule rep(n);
  Matrix a(r->field, 2 * rep.dim(), rep.dim());
  auto mx = rep.mult(parse_poly(r, "x^2"));
  auto my = rep.mult(parse_poly(r, "y^2"));
  for (std::size_t i = 0; i < rep.dim(); ++i)
    for (std::size_t j = 0; j < rep.dim(); ++j) {
      a.at(i, j) = mx.at(i, j);
      a.at(rep.dim() + i, j) = my.at(i, j);
    }
  CHECK(hs.dimension == Dimension::finite(nullspace(a).size()));
  SpanBuilder span(r->field, rep.dim());
  for (const auto& h : hs.generators) CHECK(span.add(rep.coords(h.images()[0])));
}

TEST_CASE("ext_dimension examples") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  CHECK(ext_dimension(k, k, 0) == Dimension::finite(1));
  CHECK(ext_dimension(k, k, 1) == Dimension::finite(1));
  CHECK(ext_dimension(k, k, 2) == Dimension::finite(0));
  CHECK(ext_dimension(k, PresentedModule::free(r, 1), 1) == Dimension::finite(1));
  CHECK(ext_dimension(k, PresentedModule::free(r, 1), 0) == Dimension::finite(0));
  CHECK(ext_dimension(PresentedModule::free(r, 1), PresentedModule::free(r, 1), 0).infinite);

  // Koszul complex on kappa[x, y]: Ext^i(k, k) has dimension 1, 2, 1
  auto s = qxy();
  auto ks = cyc(s, {"x", "y"});
  CHECK(ext_dimension(ks, ks, 0) == Dimension::finite(1));
  CHECK(ext_dimension(ks, ks, 1) == Dimension::finite(2));
  CHECK(ext_dimension(ks, ks, 2) == Dimension::finite(1));
  CHECK_THROWS_AS(ext_dimension(ks, ks, 3), std::invalid_argument);
}

TEST_CASE("extension certification") {
  auto r = qx();
  auto e = dual_numbers(r);
  CHECK(certify(e).ok());
  auto k = cyc(r, {"x"});
  CHECK(certify(split_extension(k, k)).ok());
  // not exact: iota = 0
  Extension bad{ModuleHom::zero(k, cyc(r, {"x^2"})), ModuleHom(cyc(r, {"x^2"}), k, {vec(k, {"1"})})};
  auto rep = certify(bad);
  CHECK(rep.composite_zero);
  CHECK_FALSE(rep.iota_injective);
  CHECK_FALSE(rep.middle_exact);
  CHECK_THROWS_AS(make_extension(bad.iota, bad.kappa), std::invalid_argument);
  // a source relation that does not map into the target relations
  CHECK_THROWS_AS(ModuleHom(k, PresentedModule::free(r, 1), {vec(PresentedModule::free(r, 1), {"1"})}),
                  std::invalid_argument);
}

TEST_CASE("baer_sum examples") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto sp = split_extension(k, k);
  auto e = dual_numbers(r);

  auto ss = baer_sum(sp, sp);
  CHECK(certify(ss).ok());
  CHECK(is_split(ss).has_value());

  auto z = baer_sum(e, opposite(e));
  CHECK(certify(z).ok());
  auto s = is_split(z);
  REQUIRE(s.has_value());
  CHECK(compose(*s, z.iota).equals(ModuleHom::identity(k)));

  auto ee = baer_sum(e, e);
  CHECK(certify(ee).ok());
  CHECK_FALSE(is_split(ee).has_value());
  CHECK(extension_class(ee) == Vec{r->scalar(2) * extension_class(e)[0]});

  auto sq = cyc(r, {"x^2"});
  CHECK_THROWS_AS(baer_sum(e, split_extension(k, sq)), EndpointMismatch);
}

TEST_CASE("baer_sum in characteristic two") {
  auto r = make_ring({"x"}, Field::prime(2));
  auto e = dual_numbers(r);
  CHECK_FALSE(is_split(e).has_value());
  CHECK(is_split(baer_sum(e, e)).has_value());
}

TEST_CASE("opposite examples") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto e = dual_numbers(r);
  CHECK(is_split(opposite(split_extension(k, k))).has_value());
  auto oo = opposite(opposite(e));
  CHECK(oo.middle() == e.middle());
  CHECK(oo.iota.images() == e.iota.images());
  CHECK(oo.kappa.images() == e.kappa.images());
  auto c = extension_class(e);
  auto co = extension_class(opposite(e));
  REQUIRE(c.size() == 1);
  CHECK_FALSE(c[0].is_zero());
  CHECK(co[0] == -c[0]);
}

TEST_CASE("is_split and extensions_isomorphic examples") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto sp = split_extension(k, k);
  auto s = is_split(sp);
  REQUIRE(s.has_value());
  CHECK(compose(*s, sp.iota).equals(ModuleHom::identity(k)));
  // the projection onto the first summand
  CHECK(s->equals(ModuleHom(sp.middle(), k, {vec(k, {"1"}), vec(k, {"0"})})));

  auto e = dual_numbers(r);
  CHECK_FALSE(is_split(e).has_value());
  CHECK(iso(e, e));
  CHECK_FALSE(iso(sp, e));
  CHECK(iso(e, pushforward(ModuleHom::identity(k), e)));
}

TEST_CASE("splitting over an infinite-dimensional sub module") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto free = PresentedModule::free(r, 1);
  // 0 -> R --x--> R -> R/(x) -> 0
  auto e = make_extension(ModuleHom(free, free, {vec(free, {"x"})}), ModuleHom(free, k, {vec(k, {"1"})}));
  CHECK_FALSE(is_split(e).has_value());
  auto sp = split_extension(k, free);
  auto s = is_split(sp);
  REQUIRE(s.has_value());
  CHECK(compose(*s, sp.iota).equals(ModuleHom::identity(free)));
  auto z = baer_sum(e, opposite(e));
  CHECK(certify(z).ok());
  CHECK(is_split(z).has_value());
}

TEST_CASE("pushforward laws") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto e = dual_numbers(r);
  auto p0 = pushforward(ModuleHom::zero(k, k), e);
  CHECK(certify(p0).ok());
  CHECK(is_split(p0).has_value());
  auto pid = pushforward(ModuleHom::identity(k), e);
  CHECK(certify(pid).ok());
  CHECK(iso(pid, e));

  auto g2 = cyc(r, {"x^2"});
  ModuleHom g1(k, g2, {vec(g2, {"x"})});
  ModuleHom g3(k, g2, {vec(g2, {"3x"})});
  auto lhs = pushforward(g1 + g3, e);
  auto rhs = baer_sum(pushforward(g1, e), pushforward(g3, e));
  CHECK(certify(lhs).ok());
  CHECK(certify(rhs).ok());
  CHECK(iso(lhs, rhs));
  // Ext^1(k, N) = N/xN and g1 lands in xN, so this pushforward splits
  CHECK(is_split(pushforward(g1, e)).has_value());

  auto id = ModuleHom::identity(k);
  auto a = pushforward(id.scaled(r->scalar(2)) + id.scaled(r->scalar(-5)), e);
  auto b = baer_sum(pushforward(id.scaled(r->scalar(2)), e), pushforward(id.scaled(r->scalar(-5)), e));
  CHECK(iso(a, b));
  CHECK_FALSE(is_split(a).has_value());
  CHECK(extension_class(a)[0] == r->scalar(-3) * extension_class(e)[0]);
  CHECK_THROWS_AS(pushforward(g1, split_extension(g2, g2)), EndpointMismatch);
}

TEST_CASE("pullback laws") {
  auto r = qx();
  auto k = cyc(r, {"x"});
  auto e = dual_numbers(r);
  auto p0 = pullback(ModuleHom::zero(k, k), e);
  CHECK(certify(p0).ok());
  CHECK(is_split(p0).has_value());
  auto pid = pullback(ModuleHom::identity(k), e);
  CHECK(certify(pid).ok());
  CHECK(iso(pid, e));

  auto f2 = cyc(r, {"x^2"});
  ModuleHom f1(f2, k, {vec(k, {"1"})});
  ModuleHom f3(f2, k, {vec(k, {"-2"})});
  auto lhs = pullback(f1 + f3, e);
  auto rhs = baer_sum(pullback(f1, e), pullback(f3, e));
  CHECK(certify(lhs).ok());
  CHECK(certify(rhs).ok());
  CHECK(iso(lhs, rhs));
  // f1^* E is split: the generator of R/(x^2) lifts to E = R/(x^2) itself
  CHECK(is_split(pullback(f1, e)).has_value());
}

TEST_CASE("Baer sum group laws on fixtures over kappa[x, y]") {
  auto r = qxy();
  auto k = cyc(r, {"x", "y"});
  auto ex = cyclic_extension(k, cyc(r, {"x^2", "y"}), k, "x");
  auto ey = cyclic_extension(k, cyc(r, {"x", "y^2"}), k, "y");
  auto exy = cyclic_extension(k, cyc(r, {"x^2", "y^2", "x - y"}), k, "x");
  auto sp = split_extension(k, k);
  std::vector<Extension> fam{ex, ey, exy};
  for (const auto& e : fam) {
    CHECK(certify(e).ok());
    CHECK_FALSE(is_split(e).has_value());
    CHECK(iso(baer_sum(e, sp), e));
    CHECK(is_split(baer_sum(e, opposite(e))).has_value());
  }
  CHECK(iso(baer_sum(ex, ey), baer_sum(ey, ex)));
  CHECK(iso(baer_sum(baer_sum(ex, ey), exy), baer_sum(ex, baer_sum(ey, exy))));
  CHECK_FALSE(iso(ex, ey));
  CHECK_FALSE(iso(ex, exy));
  // x = y in the third fixture, so its class is the sum of the other two
  CHECK(iso(exy, baer_sum(ex, ey)));

  // the fixture classes span Ext^1(k, k)
  auto dim = ext_dimension(k, k, 1);
  REQUIRE_FALSE(dim.infinite);
  SpanBuilder span(r->field, dim.value);
  std::size_t independent = 0;
  for (const auto& e : fam) independent += span.add(extension_class(e)) ? 1 : 0;
  CHECK(independent == dim.value);
}

TEST_CASE("extension classes are additive on random combinations") {
  testsupport::Gen gen(31);
  auto r = qxy();
  auto k = cyc(r, {"x", "y"});
  auto ex = cyclic_extension(k, cyc(r, {"x^2", "y"}), k, "x");
  auto ey = cyclic_extension(k, cyc(r, {"x", "y^2"}), k, "y");
  auto cx = extension_class(ex);
  auto cy = extension_class(ey);
  for (int it = 0; it < 6; ++it) {
    FieldElem a = gen.coin() ? r->zero() : gen.scalar(r->field);
    FieldElem b = gen.coin() ? r->zero() : gen.scalar(r->field);
    auto e = baer_sum(pushforward(ModuleHom::identity(k).scaled(a), ex),
                      pushforward(ModuleHom::identity(k).scaled(b), ey));
    CHECK(certify(e).ok());
    auto c = extension_class(e);
    REQUIRE(c.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(c[i] == a * cx[i] + b * cy[i]);
    CHECK(is_split(e).has_value() == (a.is_zero() && b.is_zero()));
    auto pulled = pullback(ModuleHom::identity(k).scaled(a), ex);
    auto pc = extension_class(pulled);
    for (std::size_t i = 0; i < 2; ++i) CHECK(pc[i] == a * cx[i]);
  }
}
