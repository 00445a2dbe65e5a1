#include "versal/extension.hpp"

#include "versal/errors.hpp"

namespace versal {

namespace {

void check_same(const PresentedModule& a, const PresentedModule& b, const char* what) {
  if (!(a == b)) throw EndpointMismatch(what);
}

FreeVec unit(const PresentedModule& m, std::size_t i) { return m.generator(i); }

std::vector<FreeVec> shifted(const std::vector<FreeVec>& vs, std::size_t offset, std::size_t rank) {
  std::vector<FreeVec> out;
  for (const auto& v : vs) out.push_back(v.shifted(offset, rank));
  return out;
}

/// First `count` cofactors as a vector of rank `count`.
FreeVec head(const std::vector<Poly>& cof, std::size_t count, const RingPtr& ring) {
  if (count == 0) return FreeVec(ring, 0);
  std::vector<Poly> h(cof.begin(), cof.begin() + static_cast<std::ptrdiff_t>(count));
  for (auto& p : h) p = p.in_ring(ring);
  return FreeVec::from_polys(ring, h);
}

/// Lifting through a map given by images, modulo target relations.
class Preimage {
 public:
  Preimage(const std::vector<FreeVec>& images, const PresentedModule& target, std::size_t source_rank)
      : ring_(target.ring()), source_rank_(source_rank) {
    std::vector<FreeVec> all = images;
    all.insert(all.end(), target.relations().begin(), target.relations().end());
    if (!all.empty() && target.rank() > 0) lifter_ = std::make_shared<const Lifter>(ring_, target.rank(), all);
  }

  std::optional<FreeVec> operator()(const FreeVec& y) const {
    if (y.is_zero()) return FreeVec(ring_, source_rank_);
    if (!lifter_) return std::nullopt;
    auto cof = lifter_->lift(y);
    if (!cof) return std::nullopt;
    return head(*cof, source_rank_, ring_);
  }

 private:
  RingPtr ring_;
  std::size_t source_rank_;
  std::shared_ptr<const Lifter> lifter_;
};

struct BaerData {
  Extension ext;
  Subquotient sq;
};

BaerData baer_internal(const Extension& e1, const Extension& e2) {
  check_same(e1.sub(), e2.sub(), "baer_sum: sub modules differ");
  check_same(e1.quotient(), e2.quotient(), "baer_sum: quotient modules differ");
  const PresentedModule& E1 = e1.middle();
  const PresentedModule& E2 = e2.middle();
  const PresentedModule& G = e1.sub();
  const RingPtr& ring = E1.ring();
  const std::size_t n1 = E1.rank(), n = E1.rank() + E2.rank();
  PresentedModule sum = direct_sum(E1, E2);
  std::vector<FreeVec> images;
  for (const auto& v : e1.kappa.images()) images.push_back(v);
  for (const auto& v : e2.kappa.images()) images.push_back(-v);
  ModuleHom diff(sum, e1.quotient(), std::move(images));
  std::vector<FreeVec> gens = kernel_generators(diff);
  std::vector<FreeVec> zeros = sum.relations();
  for (std::size_t y = 0; y < G.rank(); ++y)
    zeros.push_back(e1.iota.images()[y].shifted(0, n) - e2.iota.images()[y].shifted(n1, n));
  Subquotient sq = make_subquotient(ring, n, std::move(gens), std::move(zeros));
  std::vector<FreeVec> iota_images;
  for (std::size_t y = 0; y < G.rank(); ++y) {
    auto c = sq.coordinates(e1.iota.images()[y].shifted(0, n));
    if (!c) throw InternalConsistency("baer_sum: iota image outside the fibre product");
    iota_images.push_back(*c);
  }
  std::vector<FreeVec> kappa_images;
  for (const auto& g : sq.gens) kappa_images.push_back(e1.kappa.apply(g.slice(0, n1)));
  Extension ext{ModuleHom(G, sq.module, std::move(iota_images)),
                ModuleHom(sq.module, e1.quotient(), std::move(kappa_images))};
  return BaerData{std::move(ext), std::move(sq)};
}

}  // namespace

ExactnessReport certify(const Extension& e) {
  ExactnessReport r;
  check_same(e.iota.target(), e.kappa.source(), "certify: middle modules differ");
  r.composite_zero = compose(e.kappa, e.iota).is_zero();
  r.iota_injective = is_injective(e.iota);
  r.kappa_surjective = is_surjective(e.kappa);
  const PresentedModule& E = e.middle();
  std::vector<FreeVec> span = e.iota.images();
  span.insert(span.end(), E.relations().begin(), E.relations().end());
  std::erase_if(span, [](const FreeVec& v) { return v.is_zero(); });
  r.middle_exact = true;
  auto ker = kernel_generators(e.kappa);
  if (!ker.empty()) {
    if (span.empty()) {
      for (const auto& v : ker) r.middle_exact = r.middle_exact && v.is_zero();
    } else {
      StandardBasis sb = compute_module_basis(E.ring(), E.rank(), ModuleScheme::TermOverPosition, span);
      for (const auto& v : ker) r.middle_exact = r.middle_exact && sb.contains(v);
    }
  }
  return r;
}

Extension make_extension(ModuleHom iota, ModuleHom kappa) {
  Extension e{std::move(iota), std::move(kappa)};
  if (!certify(e).ok()) throw std::invalid_argument("make_extension: sequence is not exact");
  return e;
}

Extension split_extension(const PresentedModule& f, const PresentedModule& g) {
  PresentedModule E = direct_sum(g, f);
  const std::size_t n = E.rank();
  std::vector<FreeVec> iota, kappa;
  for (std::size_t y = 0; y < g.rank(); ++y) iota.push_back(FreeVec::unit(E.ring(), n, y));
  for (std::size_t y = 0; y < g.rank(); ++y) kappa.push_back(f.zero_vector());
  for (std::size_t x = 0; x < f.rank(); ++x) kappa.push_back(unit(f, x));
  return Extension{ModuleHom(g, E, std::move(iota)), ModuleHom(E, f, std::move(kappa))};
}

Extension baer_sum(const Extension& e1, const Extension& e2) { return baer_internal(e1, e2).ext; }

Extension opposite(const Extension& e) { return Extension{-e.iota, e.kappa}; }

Extension pushforward(const ModuleHom& g, const Extension& e) {
  check_same(g.source(), e.sub(), "pushforward: hom source is not the sub module");
  const PresentedModule& Gp = g.target();
  const PresentedModule& E = e.middle();
  const std::size_t gp = Gp.rank(), n = Gp.rank() + E.rank();
  std::vector<FreeVec> rel = shifted(Gp.relations(), 0, n);
  auto re = shifted(E.relations(), gp, n);
  rel.insert(rel.end(), re.begin(), re.end());
  for (std::size_t y = 0; y < e.sub().rank(); ++y)
    rel.push_back(g.images()[y].shifted(0, n) - e.iota.images()[y].shifted(gp, n));
  Minimized m = minimize(E.ring(), n, std::move(rel));
  std::vector<FreeVec> iota, kappa;
  for (std::size_t y = 0; y < gp; ++y) iota.push_back(m.reduction.to_new(FreeVec::unit(E.ring(), n, y)));
  for (std::size_t k : m.reduction.kept)
    kappa.push_back(k < gp ? e.quotient().zero_vector() : e.kappa.images()[k - gp]);
  return Extension{ModuleHom(Gp, m.module, std::move(iota)), ModuleHom(m.module, e.quotient(), std::move(kappa))};
}

Extension pullback(const ModuleHom& f, const Extension& e) {
  check_same(f.target(), e.quotient(), "pullback: hom target is not the quotient module");
  const PresentedModule& Fp = f.source();
  const PresentedModule& E = e.middle();
  const std::size_t fp = Fp.rank(), n = Fp.rank() + E.rank();
  PresentedModule sum = direct_sum(Fp, E);
  std::vector<FreeVec> images = f.images();
  for (const auto& v : e.kappa.images()) images.push_back(-v);
  ModuleHom diff(sum, e.quotient(), std::move(images));
  Subquotient sq = make_subquotient(E.ring(), n, kernel_generators(diff), sum.relations());
  std::vector<FreeVec> iota, kappa;
  for (std::size_t y = 0; y < e.sub().rank(); ++y) {
    auto c = sq.coordinates(e.iota.images()[y].shifted(fp, n));
    if (!c) throw InternalConsistency("pullback: iota image outside the fibre product");
    iota.push_back(*c);
  }
  for (const auto& g : sq.gens) kappa.push_back(g.slice(0, fp));
  return Extension{ModuleHom(e.sub(), sq.module, std::move(iota)), ModuleHom(sq.module, Fp, std::move(kappa))};
}

std::optional<ModuleHom> is_split(const Extension& e) {
  const PresentedModule& E = e.middle();
  const PresentedModule& G = e.sub();
  const std::size_t en = E.rank(), gr = G.rank();
  if (gr == 0) return ModuleHom::zero(E, G);
  if (!G.dimension().infinite) {
    FiniteModule rep(G);
    const std::size_t d = rep.dim();
    Matrix rel = cochain_matrix(rep, en, E.relations());
    Matrix io = cochain_matrix(rep, en, e.iota.images());
    Matrix a(G.ring()->field, rel.rows() + io.rows(), en * d);
    Vec b = zero_vec(G.ring()->field, a.rows());
    for (std::size_t i = 0; i < rel.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = rel.at(i, j);
    for (std::size_t i = 0; i < io.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(rel.rows() + i, j) = io.at(i, j);
    for (std::size_t y = 0; y < gr; ++y) {
      Vec c = rep.coords(unit(G, y));
      for (std::size_t t = 0; t < d; ++t) b[rel.rows() + y * d + t] = c[t];
    }
    auto sol = solve(a, b);
    if (!sol) return std::nullopt;
    std::vector<FreeVec> images;
    for (std::size_t i = 0; i < en; ++i)
      images.push_back(rep.element(Vec(sol->begin() + static_cast<std::ptrdiff_t>(i * d),
                                       sol->begin() + static_cast<std::ptrdiff_t>((i + 1) * d))));
    return ModuleHom(E, G, std::move(images));
  }
  // Module path: find polynomial coefficients p_t with sum p_t (h_t o iota) = id_G.
  HomSpace hs = hom_space(E, G);
  const std::size_t n = gr * gr;
  auto flatten = [&](const std::vector<FreeVec>& cols) {
    FreeVec v(G.ring(), n);
    for (std::size_t y = 0; y < gr; ++y) v = v + cols[y].shifted(y * gr, n);
    return v;
  };
  std::vector<FreeVec> span;
  for (const auto& h : hs.generators) {
    std::vector<FreeVec> cols;
    for (const auto& img : e.iota.images()) cols.push_back(h.apply(img));
    span.push_back(flatten(cols));
  }
  for (std::size_t y = 0; y < gr; ++y) {
    auto r = shifted(G.relations(), y * gr, n);
    span.insert(span.end(), r.begin(), r.end());
  }
  std::vector<FreeVec> ids;
  for (std::size_t y = 0; y < gr; ++y) ids.push_back(unit(G, y));
  if (span.empty()) return std::nullopt;
  Lifter lifter(G.ring(), n, span);
  auto cof = lifter.lift(flatten(ids));
  if (!cof) return std::nullopt;
  std::vector<FreeVec> images(en, G.zero_vector());
  for (std::size_t t = 0; t < hs.generators.size(); ++t) {
    Poly p = (*cof)[t].in_ring(G.ring());
    if (p.is_zero()) continue;
    for (std::size_t i = 0; i < en; ++i) images[i] = images[i] + hs.generators[t].images()[i].mul_poly(p);
  }
  return ModuleHom(E, G, std::move(images));
}

bool is_extension_morphism(const ModuleHom& f, const Extension& e1, const Extension& e2) {
  return compose(f, e1.iota).equals(e2.iota) && compose(e2.kappa, f).equals(e1.kappa);
}

std::optional<ModuleHom> extensions_isomorphic(const Extension& e1, const Extension& e2) {
  BaerData d = baer_internal(e1, opposite(e2));
  auto s = is_split(d.ext);
  if (!s) return std::nullopt;
  const PresentedModule& E1 = e1.middle();
  const PresentedModule& E2 = e2.middle();
  const std::size_t n1 = E1.rank(), n = E1.rank() + E2.rank();
  Preimage lift_kappa(e2.kappa.images(), e2.quotient(), E2.rank());
  std::vector<FreeVec> images;
  for (std::size_t i = 0; i < n1; ++i) {
    auto e2v = lift_kappa(e1.kappa.images()[i]);
    if (!e2v) throw InternalConsistency("extensions_isomorphic: kappa is not surjective");
    FreeVec pair = FreeVec::unit(E1.ring(), n, i) + e2v->shifted(n1, n);
    auto c = d.sq.coordinates(pair);
    if (!c) throw InternalConsistency("extensions_isomorphic: element outside the fibre product");
    images.push_back(*e2v + e2.iota.apply(s->apply(*c)));
  }
  ModuleHom f(E1, E2, std::move(images));
  if (!is_extension_morphism(f, e1, e2) || !is_isomorphism(f))
    throw InternalConsistency("extensions_isomorphic: constructed map is not an isomorphism of extensions");
  return f;
}

Vec extension_class(const Extension& e) {
  const PresentedModule& F = e.quotient();
  const PresentedModule& G = e.sub();
  const PresentedModule& E = e.middle();
  if (G.dimension().infinite) throw std::invalid_argument("extension_class: sub module is not finite-dimensional");
  const auto& d1 = F.relations();
  if (d1.empty() || G.rank() == 0) return {};
  FiniteModule rep(G);
  const std::size_t d = rep.dim();
  const std::size_t dim = d1.size() * d;
  const Field& field = G.ring()->field;
  std::vector<FreeVec> d2 = module_syzygies(F.ring(), F.rank(), d1);
  Matrix D0 = cochain_matrix(rep, F.rank(), d1);
  std::vector<Vec> cocycles;
  if (d2.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      Vec v = zero_vec(field, dim);
      v[i] = G.ring()->one();
      cocycles.push_back(std::move(v));
    }
  } else {
    cocycles = nullspace(cochain_matrix(rep, d1.size(), d2));
  }
  SpanBuilder sb(field, dim);
  for (std::size_t c = 0; c < D0.cols(); ++c) sb.add(D0.column(c));
  std::vector<Vec> basis;
  for (auto& v : cocycles)
    if (sb.add(v)) basis.push_back(v);

  // Boundary cocycle: lift generators of F to E, push relations into G.
  Preimage lift_kappa(e.kappa.images(), F, E.rank());
  Preimage lift_iota(e.iota.images(), E, G.rank());
  std::vector<FreeVec> lifts;
  for (std::size_t j = 0; j < F.rank(); ++j) {
    auto s = lift_kappa(unit(F, j));
    if (!s) throw InternalConsistency("extension_class: kappa is not surjective");
    lifts.push_back(*s);
  }
  Vec cocycle;
  for (const auto& r : d1) {
    FreeVec w = E.zero_vector();
    for (std::size_t j = 0; j < F.rank(); ++j) {
      Poly c = r.component(j);
      if (!c.is_zero()) w = w + lifts[j].mul_poly(c.in_ring(E.ring()));
    }
    auto g = lift_iota(w);
    if (!g) throw InternalConsistency("extension_class: kernel of kappa not inside the image of iota");
    Vec c = rep.coords(*g);
    cocycle.insert(cocycle.end(), c.begin(), c.end());
  }
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < D0.cols(); ++c) cols.push_back(D0.column(c));
  cols.insert(cols.end(), basis.begin(), basis.end());
  Matrix a = Matrix::from_columns(field, dim, cols);
  auto sol = solve(a, cocycle);
  if (!sol) throw InternalConsistency("extension_class: boundary is not a cocycle");
  return Vec(sol->end() - static_cast<std::ptrdiff_t>(basis.size()), sol->end());
}

}  // namespace versal
