#include "versal/standard_basis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "versal/errors.hpp"

namespace versal {
namespace {

std::optional<std::size_t> divisor_in(std::span<const FreeVec> elems, const Monomial& m, std::size_t comp) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto& lt = elems[i].leading();
    if (lt.comp == comp && lt.mono.divides(m)) return i;
  }
  return std::nullopt;
}

FreeVec reduce_global(FreeVec h, std::span<const FreeVec> elems) {
  std::vector<VecTerm> rem;
  while (!h.is_zero()) {
    const VecTerm& lt = h.leading();
    if (auto idx = divisor_in(elems, lt.mono, lt.comp)) {
      const FreeVec& g = elems[*idx];
      h = h.sub_mul(g, lt.mono / g.leading().mono, lt.coeff / g.leading().coeff);
    } else {
      rem.push_back(lt);
      h = h.tail();
    }
  }
  return FreeVec::from_terms(h.ring(), h.rank(), h.scheme(), std::move(rem));
}

struct MoraEntry {
  const FreeVec* vec;
  Poly unit;  // vec = unit * input - (element of the module)
  unsigned ecart;
};

std::pair<FreeVec, Poly> reduce_mora(FreeVec h, std::span<const FreeVec> elems, bool track_unit) {
  const RingPtr& ring = h.ring();
  std::vector<MoraEntry> table;
  table.reserve(elems.size() + 8);
  for (const auto& g : elems) table.push_back(MoraEntry{&g, Poly(ring), g.ecart()});
  std::vector<std::unique_ptr<FreeVec>> owned;
  Poly u = Poly::constant(ring, 1);
  while (!h.is_zero()) {
    const VecTerm lt = h.leading();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& glt = table[i].vec->leading();
      if (glt.comp != lt.comp || !glt.mono.divides(lt.mono)) continue;
      if (!best || table[i].ecart < table[*best].ecart) best = i;
    }
    if (!best) break;
    MoraEntry g = table[*best];
    unsigned eh = h.ecart();
    if (g.ecart > eh) {
      owned.push_back(std::make_unique<FreeVec>(h));
      table.push_back(MoraEntry{owned.back().get(), track_unit ? u : Poly(ring), eh});
    }
    Monomial m = lt.mono / g.vec->leading().mono;
    FieldElem c = lt.coeff / g.vec->leading().coeff;
    h = h.sub_mul(*g.vec, m, c);
    if (track_unit && !g.unit.is_zero()) u -= g.unit.mul_term(m, c);
  }
  return {std::move(h), std::move(u)};
}

// Reduction when every term of degree >= corner lies in the module. With
// `full` all terms are reduced, otherwise only the leading one.
FreeVec reduce_corner(FreeVec h, std::span<const FreeVec> elems, unsigned corner, bool full) {
  h = h.truncate_below(corner);
  std::size_t i = 0;
  while (i < h.size()) {
    const VecTerm& t = h.terms()[i];
    auto idx = divisor_in(elems, t.mono, t.comp);
    if (!idx) {
      if (!full) break;
      ++i;
      continue;
    }
    const FreeVec& g = elems[*idx];
    h = h.sub_mul(g, t.mono / g.leading().mono, t.coeff / g.leading().coeff).truncate_below(corner);
  }
  return h;
}

// Standard terms of the leading module of `elems`, or nullopt if infinite.
std::optional<std::vector<StandardTerm>> standard_terms(std::span<const FreeVec> elems, std::size_t rank,
                                                        std::size_t nvars) {
  for (std::size_t c = 0; c < rank; ++c) {
    for (std::size_t v = 0; v < nvars; ++v) {
      bool pure = false;
      for (const auto& e : elems) {
        const auto& lt = e.leading();
        if (lt.comp == c && lt.mono.degree() == lt.mono[v]) {
          pure = true;
          break;
        }
      }
      if (!pure) return std::nullopt;
    }
  }
  std::vector<StandardTerm> out;
  for (std::size_t c = 0; c < rank; ++c) {
    for (unsigned d = 0;; ++d) {
      bool any = false;
      for (auto& m : monomials_of_degree(nvars, d)) {
        if (!divisor_in(elems, m, c)) {
          out.push_back(StandardTerm{std::move(m), c});
          any = true;
        }
      }
      if (!any) break;
    }
  }
  return out;
}

struct PairKey {
  unsigned degree;
  std::size_t serial;
  std::size_t i, j;
  bool operator<(const PairKey& o) const {
    if (degree != o.degree) return degree < o.degree;
    return serial < o.serial;
  }
};

FreeVec spoly(const FreeVec& f, const FreeVec& g) {
  Monomial l = Monomial::lcm(f.leading().mono, g.leading().mono);
  FreeVec a = f.mul_term(l / f.leading().mono, f.leading().coeff.inverse());
  return a.sub_mul(g, l / g.leading().mono, g.leading().coeff.inverse());
}

}  // namespace

StandardBasis::StandardBasis(RingPtr ring, std::size_t rank, ModuleScheme scheme, std::vector<FreeVec> elements,
                             bool reduced, std::optional<unsigned> corner)
    : ring_(std::move(ring)),
      rank_(rank),
      scheme_(scheme),
      elems_(std::move(elements)),
      reduced_(reduced),
      corner_(corner) {
  for (const auto& e : elems_)
    if (e.is_zero() || e.rank() != rank_ || e.scheme() != scheme_ || !same_ring(e.ring(), ring_))
      throw std::invalid_argument("StandardBasis: inconsistent element");
}

std::vector<Poly> StandardBasis::elements() const {
  std::vector<Poly> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(e.component(0));
  return out;
}

std::optional<std::size_t> StandardBasis::find_divisor(const Monomial& m, std::size_t comp) const {
  return divisor_in(elems_, m, comp);
}

FreeVec StandardBasis::global_nf(FreeVec v) const { return reduce_global(std::move(v), elems_); }

std::pair<FreeVec, Poly> StandardBasis::mora_nf(FreeVec v) const { return reduce_mora(std::move(v), elems_, true); }

FreeVec StandardBasis::normal_form(const FreeVec& v) const {
  if (v.rank() != rank_) throw RingMismatch("normal_form: rank");
  FreeVec w = v.reorder(ring_, scheme_);
  if (is_local()) {
    if (corner_) return reduce_corner(std::move(w), elems_, *corner_, true);
    return reduce_mora(std::move(w), elems_, false).first;
  }
  return global_nf(std::move(w));
}

std::pair<FreeVec, Poly> StandardBasis::normal_form_with_unit(const FreeVec& v) const {
  if (v.rank() != rank_) throw RingMismatch("normal_form: rank");
  FreeVec w = v.reorder(ring_, scheme_);
  if (is_local() && corner_) return {reduce_corner(std::move(w), elems_, *corner_, true), Poly::constant(ring_, 1)};
  if (is_local()) return mora_nf(std::move(w));
  return {global_nf(std::move(w)), Poly::constant(ring_, 1)};
}

StandardBasis compute_module_basis(const RingPtr& ring, std::size_t rank, ModuleScheme scheme,
                                   std::span<const FreeVec> gens) {
  const bool local = is_local(ring->order);
  const std::size_t nvars = ring->nvars();
  std::vector<FreeVec> s;
  std::set<PairKey> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  std::size_t serial = 0;
  std::optional<unsigned> corner;

  auto add = [&](FreeVec h) {
    std::size_t k = s.size();
    s.push_back(h.monic());
    const auto& lk = s[k].leading();
    for (std::size_t i = 0; i < k; ++i) {
      const auto& li = s[i].leading();
      if (li.comp != lk.comp) continue;
      if (!local && rank == 1 && Monomial::coprime(li.mono, lk.mono)) continue;
      unsigned d = Monomial::lcm(li.mono, lk.mono).degree();
      if (corner && d >= *corner) continue;
      queue.insert(PairKey{d, serial++, i, k});
      pending.insert({i, k});
    }
  };

  // Local case: once the leading module has finite colength, everything of
  // degree >= corner lies in the module. Restart with truncated elements plus
  // those monomials; all later reductions truncate and stay small.
  auto detect_corner = [&]() {
    if (!local || corner) return;
    auto st = standard_terms(s, rank, nvars);
    if (!st) return;
    unsigned n = 0;
    for (const auto& t : *st) n = std::max(n, t.mono.degree() + 1);
    corner = n;
    std::vector<FreeVec> old;
    old.swap(s);
    queue.clear();
    pending.clear();
    std::vector<FreeVec> kept;
    for (auto& g : old) {
      FreeVec t = g.truncate_below(n);
      if (!t.is_zero()) kept.push_back(std::move(t));
    }
    for (auto& g : kept) add(std::move(g));
    for (std::size_t c = 0; c < rank; ++c)
      for (auto& m : monomials_of_degree(nvars, n))
        if (!divisor_in(s, m, c)) add(FreeVec::from_terms(ring, rank, scheme, {VecTerm{m, c, ring->one()}}));
  };

  auto reduce = [&](FreeVec v) {
    if (!local) return reduce_global(std::move(v), s);
    if (corner) return reduce_corner(std::move(v), s, *corner, false);
    return reduce_mora(std::move(v), s, false).first;
  };

  for (const auto& g : gens) {
    if (g.rank() != rank) throw RingMismatch("compute_module_basis: rank");
    FreeVec w = g.reorder(ring, scheme);
    if (w.is_zero()) continue;
    if (!local) {
      w = reduce_global(std::move(w), s);
      if (w.is_zero()) continue;
    }
    add(std::move(w));
  }
  detect_corner();

  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!queue.empty()) {
    PairKey p = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({p.i, p.j});
    const FreeVec& fi = s[p.i];
    const FreeVec& fj = s[p.j];
    if (!local) {
      Monomial l = Monomial::lcm(fi.leading().mono, fj.leading().mono);
      bool chain = false;
      for (std::size_t k = 0; k < s.size() && !chain; ++k) {
        if (k == p.i || k == p.j) continue;
        const auto& lk = s[k].leading();
        if (lk.comp != fi.leading().comp || !lk.mono.divides(l)) continue;
        if (!is_pending(p.i, k) && !is_pending(p.j, k)) chain = true;
      }
      if (chain) continue;
    }
    FreeVec h = reduce(spoly(fi, fj));
    if (!h.is_zero()) {
      add(std::move(h));
      detect_corner();
    }
  }

  // Minimalize.
  std::vector<FreeVec> minimal;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& li = s[i].leading();
    bool redundant = false;
    for (std::size_t j = 0; j < s.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& lj = s[j].leading();
      if (lj.comp != li.comp || !lj.mono.divides(li.mono)) continue;
      if (lj.mono != li.mono || j < i) redundant = true;
    }
    if (!redundant) minimal.push_back(s[i]);
  }
  if (!local || corner) {
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<FreeVec> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      FreeVec head = FreeVec::from_terms(ring, rank, scheme, {minimal[i].leading()});
      FreeVec rest = local ? reduce_corner(minimal[i].tail(), others, *corner, true)
                           : reduce_global(minimal[i].tail(), others);
      minimal[i] = (head + rest).monic();
    }
  }
  return StandardBasis(ring, rank, scheme, std::move(minimal), !local || corner.has_value(), corner);
}

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators) : ring_(std::move(ring)) {
  gens_.reserve(generators.size());
  for (auto& g : generators) {
    if (!same_variables(g.ring(), ring_)) throw RingMismatch("ideal generator");
    gens_.push_back(g.in_ring(ring_));
  }
}

Ideal Ideal::with_basis() const {
  Ideal copy = *this;
  if (!copy.cache_) copy.cache_ = std::make_shared<const StandardBasis>(compute_standard_basis(*this));
  return copy;
}

std::shared_ptr<const StandardBasis> Ideal::basis() const {
  if (cache_) return cache_;
  return std::make_shared<const StandardBasis>(compute_standard_basis(*this));
}

StandardBasis compute_standard_basis(const Ideal& ideal) {
  if (ideal.basis_cache()) return *ideal.basis_cache();
  std::vector<FreeVec> gens;
  for (const auto& g : ideal.generators()) gens.push_back(FreeVec::from_poly(g));
  return compute_module_basis(ideal.ring(), 1, ModuleScheme::TermOverPosition, gens);
}

Poly normal_form(const Poly& p, const StandardBasis& basis) {
  if (basis.rank() != 1) throw RingMismatch("normal_form: module basis given for a polynomial");
  return basis.normal_form(FreeVec::from_poly(p.in_ring(basis.ring()), basis.scheme())).component(0);
}

bool ideal_member(const Poly& p, const Ideal& ideal) {
  if (!same_variables(p.ring(), ideal.ring())) throw RingMismatch("ideal_member");
  return normal_form(p, *ideal.basis()).is_zero();
}

std::vector<Monomial> Staircase::monomials() const {
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.mono);
  return out;
}

Staircase staircase(const StandardBasis& basis) {
  Staircase st;
  auto terms = standard_terms(basis.vectors(), basis.rank(), basis.ring()->nvars());
  if (!terms) return st;
  st.finite = true;
  st.terms = std::move(*terms);
  std::stable_sort(st.terms.begin(), st.terms.end(), [](const StandardTerm& a, const StandardTerm& b) {
    int c = compare(MonomialOrder::NegDegRevLex, a.mono, b.mono);
    if (c != 0) return c > 0;
    return a.comp < b.comp;
  });
  return st;
}

Staircase quotient_staircase(const Ideal& ideal) { return staircase(*ideal.basis()); }

namespace {

RingPtr global_ring(const RingPtr& ring) {
  return is_local(ring->order) ? with_order(ring, MonomialOrder::DegRevLex) : ring;
}

}  // namespace

Lifter::Lifter(const RingPtr& ring, std::size_t rank, std::span<const FreeVec> gens)
    : ring_(global_ring(ring)), rank_(rank), ngens_(gens.size()) {
  const std::size_t total = rank + ngens_;
  std::vector<FreeVec> aug;
  aug.reserve(ngens_);
  for (std::size_t i = 0; i < ngens_; ++i) {
    if (gens[i].rank() != rank) throw RingMismatch("Lifter: generator rank");
    FreeVec top = gens[i].reorder(ring_, ModuleScheme::PositionOverTerm).shifted(0, total);
    aug.push_back(top + FreeVec::unit(ring_, total, rank + i, ModuleScheme::PositionOverTerm));
  }
  aug_ = std::make_shared<const StandardBasis>(
      compute_module_basis(ring_, total, ModuleScheme::PositionOverTerm, aug));
}

std::optional<std::vector<Poly>> Lifter::lift(const FreeVec& target) const {
  if (target.rank() != rank_) throw RingMismatch("Lifter::lift: rank");
  const RingPtr& out_ring = target.ring();
  FreeVec v = target.reorder(ring_, ModuleScheme::PositionOverTerm).shifted(0, rank_ + ngens_);
  FreeVec r = aug_->normal_form(v);
  if (!r.is_zero() && r.leading().comp < rank_) return std::nullopt;
  std::vector<Poly> cof = (-r).slice(rank_, rank_ + ngens_).to_polys();
  for (auto& c : cof) c = c.in_ring(out_ring);
  return cof;
}

bool Lifter::contains(const FreeVec& target) const {
  FreeVec v = target.reorder(ring_, ModuleScheme::PositionOverTerm).shifted(0, rank_ + ngens_);
  FreeVec r = aug_->normal_form(v);
  return r.is_zero() || r.leading().comp >= rank_;
}

std::vector<FreeVec> Lifter::syzygies() const {
  std::vector<FreeVec> out;
  for (const auto& e : aug_->vectors())
    if (e.leading().comp >= rank_)
      out.push_back(e.slice(rank_, rank_ + ngens_).reorder(ring_, ModuleScheme::TermOverPosition));
  return out;
}

std::vector<FreeVec> prune_generators(const RingPtr& ring, std::size_t rank, std::vector<FreeVec> gens) {
  RingPtr g = global_ring(ring);
  std::vector<FreeVec> cur;
  for (auto& v : gens)
    if (!v.is_zero()) cur.push_back(std::move(v));
  for (std::size_t i = cur.size(); i-- > 0;) {
    std::vector<FreeVec> others;
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (j != i) others.push_back(cur[j]);
    if (others.empty()) break;
    StandardBasis sb = compute_module_basis(g, rank, ModuleScheme::TermOverPosition, others);
    if (sb.contains(cur[i])) cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return cur;
}

std::vector<FreeVec> module_syzygies(const RingPtr& ring, std::size_t rank, std::span<const FreeVec> gens) {
  if (is_local(ring->order)) throw std::invalid_argument("module_syzygies requires a global ordering");
  Lifter lifter(ring, rank, gens);
  auto syz = prune_generators(ring, gens.size(), lifter.syzygies());
  for (auto& s : syz) s = s.reorder(ring, ModuleScheme::TermOverPosition);
  return syz;
}

SyzygyModule syzygies(std::span<const Poly> tuple) {
  if (tuple.empty()) throw std::invalid_argument("syzygies: empty tuple");
  const RingPtr& ring = tuple[0].ring();
  RingPtr g = global_ring(ring);
  std::vector<FreeVec> gens;
  for (const auto& f : tuple) {
    if (!same_variables(f.ring(), ring)) throw RingMismatch("syzygies");
    gens.push_back(FreeVec::from_poly(f.in_ring(g)));
  }
  SyzygyModule out{ring, tuple.size(), {}};
  for (const auto& s : module_syzygies(g, 1, gens)) {
    auto col = s.to_polys();
    for (auto& c : col) c = c.in_ring(ring);
    out.columns.push_back(std::move(col));
  }
  return out;
}

FiniteQuotient::FiniteQuotient(std::shared_ptr<const StandardBasis> basis) : basis_(std::move(basis)) {
  stairs_ = versal::staircase(*basis_);
  if (!stairs_.finite) throw std::invalid_argument("quotient is not finite-dimensional");
  for (const auto& t : stairs_.terms) corner_ = std::max(corner_, t.mono.degree() + 1);
}

FreeVec FiniteQuotient::reduce(const FreeVec& v) const {
  const StandardBasis& sb = *basis_;
  FreeVec h = v.reorder(sb.ring(), sb.scheme());
  if (!sb.is_local()) return sb.normal_form(h);
  // Every term of degree >= corner_ lies in the module, so truncation is exact.
  h = h.truncate_below(corner_);
  std::size_t i = 0;
  while (i < h.size()) {
    const VecTerm& t = h.terms()[i];
    auto idx = sb.find_divisor(t.mono, t.comp);
    if (!idx) {
      ++i;
      continue;
    }
    const FreeVec& g = sb.vectors()[*idx];
    h = h.sub_mul(g, t.mono / g.leading().mono, t.coeff / g.leading().coeff).truncate_below(corner_);
  }
  return h;
}

Poly FiniteQuotient::reduce(const Poly& p) const {
  return reduce(FreeVec::from_poly(p.in_ring(basis_->ring()), basis_->scheme())).component(0).in_ring(p.ring());
}

std::vector<FieldElem> FiniteQuotient::coordinates(const FreeVec& v) const {
  FreeVec r = reduce(v);
  std::vector<FieldElem> out(stairs_.size(), basis_->ring()->zero());
  for (const auto& t : r.terms()) {
    auto it = std::find(stairs_.terms.begin(), stairs_.terms.end(), StandardTerm{t.mono, t.comp});
    if (it == stairs_.terms.end()) throw InternalConsistency("reduced term outside the staircase");
    out[static_cast<std::size_t>(it - stairs_.terms.begin())] = t.coeff;
  }
  return out;
}

std::vector<FieldElem> FiniteQuotient::coordinates(const Poly& p) const {
  return coordinates(FreeVec::from_poly(p.in_ring(basis_->ring()), basis_->scheme()));
}

FreeVec FiniteQuotient::element(std::span<const FieldElem> coords) const {
  if (coords.size() != stairs_.size()) throw std::invalid_argument("FiniteQuotient::element: size");
  std::vector<VecTerm> ts;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) ts.push_back(VecTerm{stairs_.terms[i].mono, stairs_.terms[i].comp, coords[i]});
  return FreeVec::from_terms(basis_->ring(), basis_->rank(), basis_->scheme(), std::move(ts));
}

}  // namespace versal
