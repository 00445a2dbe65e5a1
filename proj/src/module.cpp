#include "versal/module.hpp"

#include <algorithm>
#include <sstream>

#include "versal/errors.hpp"

namespace versal {

namespace {

constexpr ModuleScheme kTop = ModuleScheme::TermOverPosition;

RingPtr global_of(const RingPtr& ring) {
  return is_local(ring->order) ? with_order(ring, MonomialOrder::DegRevLex) : ring;
}

FreeVec zero_vec(const RingPtr& ring, std::size_t rank) { return FreeVec(ring, rank, kTop); }

std::vector<FreeVec> shifted_all(const std::vector<FreeVec>& vs, std::size_t offset, std::size_t rank) {
  std::vector<FreeVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.shifted(offset, rank));
  return out;
}

bool in_span(const RingPtr& ring, std::size_t rank, const std::vector<FreeVec>& gens, const FreeVec& v) {
  if (v.is_zero()) return true;
  if (gens.empty()) return false;
  return compute_module_basis(ring, rank, kTop, gens).contains(v);
}

FreeVec single_term(const RingPtr& ring, std::size_t rank, const StandardTerm& t) {
  return FreeVec::from_terms(ring, rank, kTop, {VecTerm{t.mono, t.comp, ring->one()}});
}

void put_block(Matrix& big, std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) big.at(r0 + i, c0 + j) = b.at(i, j);
}

/// The same cochain map as a module homomorphism N^{src} -> N^{cols.size()}.
ModuleHom cochain_hom(const PresentedModule& n, std::size_t src, const std::vector<FreeVec>& cols) {
  PresentedModule from = PresentedModule::free(n.ring(), 0);
  PresentedModule to = PresentedModule::free(n.ring(), 0);
  std::vector<FreeVec> rel_src, rel_dst;
  for (std::size_t j = 0; j < src; ++j) {
    auto s = shifted_all(n.relations(), j * n.rank(), src * n.rank());
    rel_src.insert(rel_src.end(), s.begin(), s.end());
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto s = shifted_all(n.relations(), c * n.rank(), cols.size() * n.rank());
    rel_dst.insert(rel_dst.end(), s.begin(), s.end());
  }
  from = PresentedModule(n.ring(), src * n.rank(), rel_src);
  to = PresentedModule(n.ring(), cols.size() * n.rank(), rel_dst);
  std::vector<FreeVec> images;
  for (std::size_t j = 0; j < src; ++j)
    for (std::size_t a = 0; a < n.rank(); ++a) {
      FreeVec img = zero_vec(n.ring(), to.rank());
      for (std::size_t c = 0; c < cols.size(); ++c) {
        Poly e = cols[c].component(j).in_ring(n.ring());
        if (!e.is_zero()) img = img + FreeVec::unit(n.ring(), to.rank(), c * n.rank() + a).mul_poly(e);
      }
      images.push_back(std::move(img));
    }
  return ModuleHom(from, to, std::move(images));
}

}  // namespace

// ---------------------------------------------------------------- FiniteModule

FiniteModule::FiniteModule(const PresentedModule& n) : mod_(n), q_(n.finite_quotient()) {}

Vec FiniteModule::coords(const FreeVec& v) const { return q_->coordinates(v); }

FreeVec FiniteModule::element(const Vec& c) const { return q_->element(c).reorder(mod_.ring(), kTop); }

Matrix FiniteModule::mult(const Poly& p) const {
  const auto& st = q_->staircase().terms;
  Matrix m(mod_.ring()->field, st.size(), st.size());
  if (p.is_zero()) return m;
  Poly pp = p.in_ring(mod_.ring());
  for (std::size_t k = 0; k < st.size(); ++k) {
    Vec c = coords(single_term(mod_.ring(), mod_.rank(), st[k]).mul_poly(pp));
    for (std::size_t r = 0; r < st.size(); ++r) m.at(r, k) = c[r];
  }
  return m;
}

Matrix cochain_matrix(const FiniteModule& rep, std::size_t src, const std::vector<FreeVec>& cols) {
  const std::size_t d = rep.dim();
  Matrix big(rep.module().ring()->field, cols.size() * d, src * d);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t j = 0; j < src; ++j) {
      Poly e = cols[c].component(j);
      if (!e.is_zero()) put_block(big, c * d, j * d, rep.mult(e));
    }
  return big;
}

// ---------------------------------------------------------------- PresentedModule

PresentedModule::PresentedModule(RingPtr ring, std::size_t rank, std::vector<FreeVec> relations) {
  auto d = std::make_shared<Data>();
  d->ring = global_of(ring);
  d->rank = rank;
  for (auto& r : relations) {
    if (r.rank() != rank) throw std::invalid_argument("PresentedModule: relation rank");
    if (!same_variables(r.ring(), d->ring)) throw RingMismatch("PresentedModule relation");
    if (r.is_zero()) continue;
    FreeVec v = r.reorder(d->ring, kTop);
    if (std::find(d->relations.begin(), d->relations.end(), v) == d->relations.end())
      d->relations.push_back(std::move(v));
  }
  d->basis = std::make_shared<const StandardBasis>(compute_module_basis(d->ring, rank, kTop, d->relations));
  if (staircase(*d->basis).finite) d->quotient = std::make_shared<const FiniteQuotient>(d->basis);
  data_ = std::move(d);
}

PresentedModule PresentedModule::free(RingPtr ring, std::size_t rank) { return PresentedModule(ring, rank, {}); }

PresentedModule PresentedModule::cyclic(const RingPtr& ring, const std::vector<Poly>& gens) {
  std::vector<FreeVec> rel;
  for (const auto& g : gens) rel.push_back(FreeVec::from_poly(g.in_ring(global_of(ring))));
  return PresentedModule(ring, 1, std::move(rel));
}

PresentedModule PresentedModule::from_matrix(const RingPtr& ring, const std::vector<std::vector<Poly>>& rows) {
  const std::size_t rank = rows.size();
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  RingPtr g = global_of(ring);
  std::vector<FreeVec> rel;
  for (std::size_t c = 0; c < ncols; ++c) {
    std::vector<Poly> col;
    for (const auto& row : rows) {
      if (row.size() != ncols) throw std::invalid_argument("presentation matrix: ragged rows");
      col.push_back(row[c].in_ring(g));
    }
    rel.push_back(FreeVec::from_polys(g, col));
  }
  return PresentedModule(g, rank, std::move(rel));
}

std::vector<std::vector<Poly>> PresentedModule::matrix() const {
  std::vector<std::vector<Poly>> rows(rank());
  for (const auto& r : relations())
    for (std::size_t i = 0; i < rank(); ++i) rows[i].push_back(r.component(i));
  return rows;
}

FreeVec PresentedModule::cover(const std::vector<Poly>& entries) const {
  if (entries.size() != rank()) throw std::invalid_argument("PresentedModule::cover: size");
  std::vector<Poly> e;
  for (const auto& p : entries) e.push_back(p.in_ring(ring()));
  return FreeVec::from_polys(ring(), e);
}

FreeVec PresentedModule::generator(std::size_t i) const { return FreeVec::unit(ring(), rank(), i); }

FreeVec PresentedModule::zero_vector() const { return zero_vec(ring(), rank()); }

FreeVec PresentedModule::reduce(const FreeVec& v) const {
  if (v.rank() != rank()) throw std::invalid_argument("PresentedModule::reduce: rank");
  return data_->basis->normal_form(v.reorder(ring(), kTop));
}

bool PresentedModule::is_zero_module() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (!is_zero_element(generator(i))) return false;
  return true;
}

Dimension PresentedModule::dimension() const {
  if (rank() == 0) return Dimension::finite(0);
  if (!data_->quotient) return Dimension::unbounded();
  return Dimension::finite(data_->quotient->dimension());
}

std::shared_ptr<const FiniteQuotient> PresentedModule::finite_quotient() const {
  if (!data_->quotient) throw std::invalid_argument("module is not finite-dimensional");
  return data_->quotient;
}

bool PresentedModule::operator==(const PresentedModule& o) const {
  if (data_ == o.data_) return true;
  return same_variables(ring(), o.ring()) && rank() == o.rank() && relations() == o.relations();
}

std::string PresentedModule::to_string() const {
  std::ostringstream os;
  os << "R^" << rank() << " / <";
  for (std::size_t i = 0; i < relations().size(); ++i) os << (i ? ", " : "") << relations()[i].to_string();
  os << ">";
  return os.str();
}

// ---------------------------------------------------------------- ModuleHom

ModuleHom::ModuleHom(PresentedModule source, PresentedModule target, std::vector<FreeVec> images)
    : source_(std::move(source)), target_(std::move(target)) {
  if (images.size() != source_.rank()) throw std::invalid_argument("ModuleHom: one image per source generator");
  if (!same_variables(source_.ring(), target_.ring())) throw RingMismatch("ModuleHom");
  for (auto& v : images) {
    if (v.rank() != target_.rank()) throw std::invalid_argument("ModuleHom: image rank");
    images_.push_back(v.reorder(target_.ring(), kTop));
  }
  for (const auto& r : source_.relations())
    if (!target_.is_zero_element(apply(r)))
      throw std::invalid_argument("ModuleHom: a source relation does not map into the target relations");
}

ModuleHom ModuleHom::identity(const PresentedModule& m) {
  std::vector<FreeVec> im;
  for (std::size_t i = 0; i < m.rank(); ++i) im.push_back(m.generator(i));
  return ModuleHom(m, m, std::move(im));
}

ModuleHom ModuleHom::zero(const PresentedModule& source, const PresentedModule& target) {
  return ModuleHom(source, target, std::vector<FreeVec>(source.rank(), target.zero_vector()));
}

std::vector<std::vector<Poly>> ModuleHom::matrix() const {
  std::vector<std::vector<Poly>> rows(target_.rank());
  for (const auto& img : images_)
    for (std::size_t i = 0; i < target_.rank(); ++i) rows[i].push_back(img.component(i));
  return rows;
}

FreeVec ModuleHom::apply(const FreeVec& x) const {
  if (x.rank() != source_.rank()) throw std::invalid_argument("ModuleHom::apply: rank");
  FreeVec out = target_.zero_vector();
  for (std::size_t j = 0; j < source_.rank(); ++j) {
    Poly c = x.component(j);
    if (!c.is_zero()) out = out + images_[j].mul_poly(c.in_ring(target_.ring()));
  }
  return out;
}

bool ModuleHom::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [&](const FreeVec& v) { return target_.is_zero_element(v); });
}

bool ModuleHom::equals(const ModuleHom& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_)) return false;
  for (std::size_t j = 0; j < images_.size(); ++j)
    if (!target_.is_zero_element(images_[j] - o.images_[j])) return false;
  return true;
}

ModuleHom ModuleHom::operator+(const ModuleHom& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_)) throw EndpointMismatch("hom sum");
  std::vector<FreeVec> im;
  for (std::size_t j = 0; j < images_.size(); ++j) im.push_back(images_[j] + o.images_[j]);
  return ModuleHom(source_, target_, std::move(im));
}

ModuleHom ModuleHom::operator-(const ModuleHom& o) const { return *this + (-o); }

ModuleHom ModuleHom::operator-() const { return scaled(target_.ring()->scalar(-1)); }

ModuleHom ModuleHom::scaled(const FieldElem& c) const {
  std::vector<FreeVec> im;
  for (const auto& v : images_) im.push_back(v * c);
  return ModuleHom(source_, target_, std::move(im));
}

ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
  if (!(f.target() == g.source())) throw EndpointMismatch("compose");
  std::vector<FreeVec> im;
  for (const auto& v : f.images()) im.push_back(g.apply(v));
  return ModuleHom(f.source(), g.target(), std::move(im));
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  const std::size_t n = a.rank() + b.rank();
  auto rel = shifted_all(a.relations(), 0, n);
  auto rb = shifted_all(b.relations(), a.rank(), n);
  rel.insert(rel.end(), rb.begin(), rb.end());
  return PresentedModule(a.ring(), n, std::move(rel));
}

// ---------------------------------------------------------------- minimization

FreeVec Reduction::to_new(const FreeVec& v) const {
  if (v.rank() != original) throw std::invalid_argument("Reduction::to_new: rank");
  FreeVec cur = v;
  for (const auto& [idx, expr] : substitutions) {
    Poly c = cur.component(idx);
    if (c.is_zero()) continue;
    cur = cur - FreeVec::unit(cur.ring(), original, idx, cur.scheme()).mul_poly(c) + expr.mul_poly(c);
  }
  std::vector<Poly> entries;
  for (std::size_t k : kept) entries.push_back(cur.component(k));
  if (entries.empty()) return FreeVec(cur.ring(), 0, cur.scheme());
  return FreeVec::from_polys(cur.ring(), entries, cur.scheme());
}

Minimized minimize(const RingPtr& ring_in, std::size_t rank, std::vector<FreeVec> relations) {
  RingPtr ring = global_of(ring_in);
  Reduction red;
  red.original = rank;
  std::vector<FreeVec> rel;
  for (auto& r : relations)
    if (!r.is_zero()) rel.push_back(r.reorder(ring, kTop));
  std::vector<bool> gone(rank, false);
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;  // (relation, generator) with a constant entry
    for (std::size_t k = 0; k < rel.size() && !pick; ++k)
      for (std::size_t i = 0; i < rank; ++i) {
        if (gone[i]) continue;
        Poly e = rel[k].component(i);
        if (!e.is_zero() && e.is_constant()) {
          pick = {k, i};
          break;
        }
      }
    if (!pick) break;
    auto [k, i] = *pick;
    const FreeVec& r = rel[k];
    Poly ri = r.component(i);
    FieldElem c = ri.constant_coeff();
    // e_i = -(1/c) * (r - c e_i)
    FreeVec rest = r - FreeVec::unit(ring, rank, i).mul_poly(ri);
    FreeVec expr = rest * (-c.inverse());
    red.substitutions.emplace_back(i, expr);
    gone[i] = true;
    std::vector<FreeVec> next;
    for (std::size_t k2 = 0; k2 < rel.size(); ++k2) {
      if (k2 == k) continue;
      Poly e = rel[k2].component(i);
      FreeVec s = rel[k2];
      if (!e.is_zero()) s = s - FreeVec::unit(ring, rank, i).mul_poly(e) + expr.mul_poly(e);
      if (!s.is_zero() && std::find(next.begin(), next.end(), s) == next.end()) next.push_back(std::move(s));
    }
    rel = std::move(next);
  }
  for (std::size_t i = 0; i < rank; ++i)
    if (!gone[i]) red.kept.push_back(i);
  std::vector<FreeVec> out;
  for (const auto& r : rel) {
    FreeVec v = red.to_new(r);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  if (out.size() > 1 && out.size() <= 24) out = prune_generators(ring, red.kept.size(), std::move(out));
  return Minimized{PresentedModule(ring, red.kept.size(), std::move(out)), std::move(red)};
}

// ---------------------------------------------------------------- subquotients and kernels

std::optional<FreeVec> Subquotient::coordinates(const FreeVec& v) const {
  if (all_gens.empty()) {
    if (v.is_zero() || in_span(module.ring(), v.rank(), zeros, v)) return module.zero_vector();
    return std::nullopt;
  }
  auto cof = lifter->lift(v);
  if (!cof) return std::nullopt;
  std::vector<Poly> head(cof->begin(), cof->begin() + static_cast<std::ptrdiff_t>(all_gens.size()));
  return reduction.to_new(FreeVec::from_polys(module.ring(), head));
}

Subquotient make_subquotient(const RingPtr& ring_in, std::size_t cover_rank, std::vector<FreeVec> gens,
                             std::vector<FreeVec> zeros) {
  RingPtr ring = global_of(ring_in);
  for (auto& g : gens) g = g.reorder(ring, kTop);
  std::vector<FreeVec> z;
  for (auto& v : zeros)
    if (!v.is_zero()) z.push_back(v.reorder(ring, kTop));
  const std::size_t k = gens.size();
  if (k == 0) {
    return Subquotient{PresentedModule::free(ring, 0), {}, {}, z, nullptr, Reduction{0, {}, {}}};
  }
  std::vector<FreeVec> all = gens;
  all.insert(all.end(), z.begin(), z.end());
  auto lifter = std::make_shared<const Lifter>(ring, cover_rank, all);
  std::vector<FreeVec> rel;
  for (const auto& s : lifter->syzygies()) {
    FreeVec head = s.slice(0, k).reorder(ring, kTop);
    if (!head.is_zero()) rel.push_back(std::move(head));
  }
  Minimized m = minimize(ring, k, std::move(rel));
  std::vector<FreeVec> kept;
  for (std::size_t i : m.reduction.kept) kept.push_back(gens[i]);
  return Subquotient{m.module, std::move(kept), std::move(gens), std::move(z), std::move(lifter),
                     std::move(m.reduction)};
}

std::vector<FreeVec> kernel_generators(const ModuleHom& f) {
  const PresentedModule& m = f.source();
  const PresentedModule& n = f.target();
  const std::size_t k = m.rank();
  std::vector<FreeVec> out;
  if (k == 0) return out;
  if (n.rank() == 0) {
    for (std::size_t i = 0; i < k; ++i) out.push_back(m.generator(i));
    return out;
  }
  std::vector<FreeVec> all = f.images();
  all.insert(all.end(), n.relations().begin(), n.relations().end());
  Lifter lifter(n.ring(), n.rank(), all);
  for (const auto& s : lifter.syzygies()) {
    FreeVec head = s.slice(0, k).reorder(m.ring(), kTop);
    if (!head.is_zero()) out.push_back(std::move(head));
  }
  if (out.size() > 1 && out.size() <= 24) out = prune_generators(m.ring(), k, std::move(out));
  return out;
}

Subquotient kernel(const ModuleHom& f) {
  return make_subquotient(f.source().ring(), f.source().rank(), kernel_generators(f), f.source().relations());
}

bool is_injective(const ModuleHom& f) {
  for (const auto& v : kernel_generators(f))
    if (!f.source().is_zero_element(v)) return false;
  return true;
}

bool is_surjective(const ModuleHom& f) {
  const PresentedModule& n = f.target();
  if (n.rank() == 0) return true;
  std::vector<FreeVec> all = f.images();
  all.insert(all.end(), n.relations().begin(), n.relations().end());
  std::erase_if(all, [](const FreeVec& v) { return v.is_zero(); });
  if (all.empty()) return n.is_zero_module();
  StandardBasis sb = compute_module_basis(n.ring(), n.rank(), kTop, all);
  for (std::size_t i = 0; i < n.rank(); ++i)
    if (!sb.contains(n.generator(i))) return false;
  return true;
}

bool is_isomorphism(const ModuleHom& f) { return is_injective(f) && is_surjective(f); }

// ---------------------------------------------------------------- Hom and Ext

HomSpace hom_space(const PresentedModule& m, const PresentedModule& n) {
  if (!same_variables(m.ring(), n.ring())) throw RingMismatch("hom_space");
  HomSpace out;
  const std::size_t k = m.rank();
  if (k == 0 || n.rank() == 0) {
    out.finite = true;
    out.dimension = Dimension::finite(0);
    return out;
  }
  if (!n.dimension().infinite) {
    FiniteModule rep(n);
    const std::size_t d = rep.dim();
    Matrix big = cochain_matrix(rep, k, m.relations());
    if (m.relations().empty()) big = Matrix(n.ring()->field, 0, k * d);
    std::vector<Vec> ns;
    if (big.rows() == 0) {
      for (std::size_t i = 0; i < k * d; ++i) {
        Vec v = versal::zero_vec(n.ring()->field, k * d);
        v[i] = n.ring()->one();
        ns.push_back(std::move(v));
      }
    } else {
      ns = nullspace(big);
    }
    out.finite = true;
    out.dimension = Dimension::finite(ns.size());
    for (const auto& v : ns) {
      std::vector<FreeVec> images;
      for (std::size_t j = 0; j < k; ++j)
        images.push_back(rep.element(Vec(v.begin() + static_cast<std::ptrdiff_t>(j * d),
                                         v.begin() + static_cast<std::ptrdiff_t>((j + 1) * d))));
      out.generators.emplace_back(m, n, std::move(images));
    }
    return out;
  }
  // Hom(M, N) = ker(N^k -> N^{#relations}).
  std::vector<FreeVec> gens;
  std::vector<FreeVec> zeros;
  ModuleHom delta = cochain_hom(n, k, m.relations());
  if (m.relations().empty()) {
    for (std::size_t i = 0; i < delta.source().rank(); ++i) gens.push_back(delta.source().generator(i));
  } else {
    gens = kernel_generators(delta);
  }
  zeros = delta.source().relations();
  Subquotient sq = make_subquotient(n.ring(), delta.source().rank(), gens, zeros);
  out.dimension = sq.module.dimension();
  out.finite = !out.dimension.infinite;
  out.presentation = sq.module;
  for (const auto& g : sq.gens) {
    std::vector<FreeVec> images;
    for (std::size_t j = 0; j < k; ++j) images.push_back(g.slice(j * n.rank(), (j + 1) * n.rank()));
    out.generators.emplace_back(m, n, std::move(images));
  }
  return out;
}

FreeResolution free_resolution(const PresentedModule& m, std::size_t length) {
  FreeResolution res;
  res.ranks.push_back(m.rank());
  std::vector<FreeVec> cols = m.relations();
  for (std::size_t i = 0; i < length; ++i) {
    res.maps.push_back(cols);
    res.ranks.push_back(cols.size());
    if (cols.empty()) {
      cols.clear();
      continue;
    }
    cols = module_syzygies(m.ring(), res.ranks[i], cols);
  }
  return res;
}

Dimension ext_dimension(const PresentedModule& m, const PresentedModule& n, int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("ext_dimension: degree must be 0, 1 or 2");
  if (!same_variables(m.ring(), n.ring())) throw RingMismatch("ext_dimension");
  const auto ui = static_cast<std::size_t>(i);
  FreeResolution res = free_resolution(m, ui + 1);
  const std::size_t ri = res.ranks[ui];
  if (ri == 0 || n.rank() == 0) return Dimension::finite(0);
  const auto& next = res.maps[ui];  // d_{i+1}: F_{i+1} -> F_i
  if (!n.dimension().infinite) {
    FiniteModule rep(n);
    const std::size_t d = rep.dim();
    std::size_t ker = ri * d;
    if (!next.empty()) ker -= rank(cochain_matrix(rep, ri, next));
    std::size_t im = 0;
    if (ui > 0 && res.ranks[ui - 1] > 0 && !res.maps[ui - 1].empty())
      im = rank(cochain_matrix(rep, res.ranks[ui - 1], res.maps[ui - 1]));
    return Dimension::finite(ker - im);
  }
  ModuleHom delta = cochain_hom(n, ri, next);
  std::vector<FreeVec> gens;
  if (next.empty()) {
    for (std::size_t a = 0; a < delta.source().rank(); ++a) gens.push_back(delta.source().generator(a));
  } else {
    gens = kernel_generators(delta);
  }
  std::vector<FreeVec> zeros = delta.source().relations();
  if (ui > 0 && res.ranks[ui - 1] > 0) {
    ModuleHom prev = cochain_hom(n, res.ranks[ui - 1], res.maps[ui - 1]);
    zeros.insert(zeros.end(), prev.images().begin(), prev.images().end());
  }
  return make_subquotient(n.ring(), delta.source().rank(), gens, zeros).module.dimension();
}

}  // namespace versal
