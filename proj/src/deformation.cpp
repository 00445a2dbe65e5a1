#include "versal/deformation.hpp"

#include <algorithm>
#include <sstream>

#include "versal/errors.hpp"

namespace versal {

namespace {

using Grouped = std::map<Monomial, Poly>;

Monomial join(const Monomial& x, const Monomial& t) {
  std::vector<Exponent> e = x.exponents();
  e.insert(e.end(), t.exponents().begin(), t.exponents().end());
  return Monomial(std::move(e));
}

/// x-monomial -> coefficient in t_ring, for a polynomial whose first n
/// variables are the x-variables.
Grouped group_by_x(const Poly& p, std::size_t n, const RingPtr& t_ring) {
  std::map<Monomial, std::vector<Term>> acc;
  for (const auto& term : p.terms()) {
    const auto& e = term.mono.exponents();
    Monomial x(std::vector<Exponent>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n)));
    Monomial t(std::vector<Exponent>(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()));
    acc[x].push_back(Term{t, term.coeff});
  }
  Grouped out;
  for (auto& [x, ts] : acc) out.emplace(x, Poly::from_terms(t_ring, std::move(ts)));
  return out;
}

Poly assemble(const Grouped& g, const RingPtr& ring) {
  std::vector<Term> ts;
  for (const auto& [x, c] : g)
    for (const auto& t : c.terms()) ts.push_back(Term{join(x, t.mono), t.coeff});
  return Poly::from_terms(ring, std::move(ts));
}

std::size_t x_count(const Poly& p, const ArtinianAlgebra& base) {
  const auto& vars = p.ring()->vars;
  const std::size_t r = base.nparams();
  if (vars.size() < r || !std::equal(base.t_vars().begin(), base.t_vars().end(), vars.end() - static_cast<std::ptrdiff_t>(r)))
    throw RingMismatch("family polynomial does not end with the base parameters");
  return vars.size() - r;
}

Poly monomial_poly(const RingPtr& ring, const Monomial& m) { return Poly::term(ring, m, ring->one()); }

void require_same_reference(const Singularity& a, const Singularity& b) {
  if (a.ring()->vars != b.ring()->vars || a.equations() != b.equations())
    throw ReductionMismatch("liftings of different singularities");
}

}  // namespace

ArtinianAlgebra::ArtinianAlgebra(const RingPtr& t_ring, std::vector<Poly> relations) {
  auto d = std::make_shared<Data>();
  d->ring = make_ring(t_ring->vars, t_ring->field);
  const std::size_t r = d->ring->nvars();
  std::vector<Poly> rel;
  for (const auto& p : relations) {
    Poly q = map_by_name(p, d->ring);
    if (!q.is_zero()) rel.push_back(std::move(q));
  }
  if (r == 0) {
    if (!rel.empty()) throw std::invalid_argument("ArtinianAlgebra: relations generate the unit ideal");
    d->basis = {Monomial(0)};
    d->index[Monomial(0)] = 0;
    data_ = std::move(d);
    return;
  }
  d->gb = Ideal(d->ring, rel).basis();
  d->reduced = d->gb->elements();
  std::sort(d->reduced.begin(), d->reduced.end(), [&](const Poly& a, const Poly& b) {
    return compare(MonomialOrder::DegRevLex, a.leading_monomial(), b.leading_monomial()) > 0;
  });
  for (const auto& g : d->reduced)
    if (g.is_constant()) throw std::invalid_argument("ArtinianAlgebra: relations generate the unit ideal");
  Staircase st = staircase(*d->gb);
  if (!st.finite) throw std::invalid_argument("ArtinianAlgebra: quotient is not finite-dimensional");
  d->basis = st.monomials();
  for (std::size_t i = 0; i < d->basis.size(); ++i) d->index[d->basis[i]] = i;
  const auto dim = static_cast<Exponent>(d->basis.size());
  for (std::size_t i = 0; i < r; ++i)
    if (!normal_form(monomial_poly(d->ring, Monomial::variable(r, i, dim)), *d->gb).is_zero())
      throw std::invalid_argument("ArtinianAlgebra: quotient is not local at the origin");
  unsigned n = 0;
  for (;; ++n) {
    bool all = true;
    for (const auto& m : monomials_of_degree(r, n + 1))
      if (!normal_form(monomial_poly(d->ring, m), *d->gb).is_zero()) {
        all = false;
        break;
      }
    if (all) break;
  }
  d->order = n;
  data_ = std::move(d);
}

Poly ArtinianAlgebra::reduce(const Poly& p) const {
  Poly q = map_by_name(p, data_->ring);
  if (!data_->gb) return q;
  return normal_form(q, *data_->gb);
}

Vec ArtinianAlgebra::coordinates(const Poly& p) const {
  Vec v = zero_vec(field(), dimension());
  Poly r = reduce(p);
  for (const auto& t : r.terms()) v[data_->index.at(t.mono)] = t.coeff;
  return v;
}

Poly ArtinianAlgebra::element(const Vec& coords) const {
  if (coords.size() != dimension()) throw std::invalid_argument("ArtinianAlgebra::element: wrong length");
  std::vector<Term> ts;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) ts.push_back(Term{data_->basis[i], coords[i]});
  return Poly::from_terms(data_->ring, std::move(ts));
}

ArtinianAlgebra ArtinianAlgebra::quotient(const std::vector<Poly>& extra) const {
  std::vector<Poly> rel = data_->reduced;
  for (const auto& p : extra) rel.push_back(map_by_name(p, data_->ring));
  return ArtinianAlgebra(data_->ring, std::move(rel));
}

bool ArtinianAlgebra::operator==(const ArtinianAlgebra& o) const {
  if (data_ == o.data_) return true;
  return same_ring(ring(), o.ring()) && relations() == o.relations();
}

std::string ArtinianAlgebra::to_string() const {
  std::ostringstream os;
  os << field().name() << "[";
  for (std::size_t i = 0; i < nparams(); ++i) os << (i ? ", " : "") << t_vars()[i];
  os << "]";
  if (!relations().empty()) {
    os << "/(";
    for (std::size_t i = 0; i < relations().size(); ++i) os << (i ? ", " : "") << relations()[i].to_string();
    os << ")";
  }
  return os.str();
}

ArtinianAlgebra make_truncation(std::size_t r, unsigned order, const Field& field, const std::string& prefix) {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= r; ++i) vars.push_back(prefix + std::to_string(i));
  RingPtr ring = make_ring(vars, field);
  std::vector<Poly> rel;
  if (r > 0)
    for (const auto& m : monomials_of_degree(r, order + 1)) rel.push_back(monomial_poly(ring, m));
  return ArtinianAlgebra(ring, std::move(rel));
}

std::optional<Vec> SmallExtensionStep::q_coordinates(const Poly& p) const {
  Vec c = total.coordinates(p);
  if (q_basis.empty()) {
    if (!versal::is_zero(c)) return std::nullopt;
    return Vec{};
  }
  return solve(q_matrix, c);
}

SmallExtensionStep make_small_extension(const ArtinianAlgebra& total, std::vector<Poly> q) {
  const RingPtr& ring = total.ring();
  std::vector<Poly> gens;
  for (const auto& p : q) {
    Poly g = total.reduce(p);
    if (!g.constant_coeff().is_zero()) throw std::invalid_argument("small extension: q is not inside the maximal ideal");
    for (std::size_t i = 0; i < total.nparams(); ++i)
      if (!total.is_zero(Poly::variable(ring, i) * g))
        throw std::invalid_argument("small extension: m q is not zero");
    gens.push_back(std::move(g));
  }
  const std::size_t d = total.dimension();
  std::vector<Poly> basis;
  std::vector<Vec> cols;
  if (!gens.empty()) {
    Matrix rows(total.field(), gens.size(), d);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Vec c = total.coordinates(gens[i]);
      for (std::size_t j = 0; j < d; ++j) rows.at(i, j) = c[j];
    }
    Echelon e = row_reduce(rows);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      Vec v = e.reduced.row(i);
      basis.push_back(total.element(v));
      cols.push_back(std::move(v));
    }
  }
  Matrix qm = Matrix::from_columns(total.field(), d, cols);
  ArtinianAlgebra quot = total.quotient(gens);
  return SmallExtensionStep{total, std::move(gens), std::move(quot), std::move(basis), std::move(qm)};
}

std::vector<SmallExtensionStep> filtration(const ArtinianAlgebra& a) {
  std::vector<SmallExtensionStep> steps;
  const RingPtr& ring = a.ring();
  for (unsigned k = 1; k <= a.order(); ++k) {
    std::vector<Poly> higher, q;
    for (const auto& m : monomials_of_degree(a.nparams(), k + 1)) higher.push_back(monomial_poly(ring, m));
    for (const auto& m : monomials_of_degree(a.nparams(), k)) q.push_back(monomial_poly(ring, m));
    steps.push_back(make_small_extension(a.quotient(higher), std::move(q)));
  }
  return steps;
}

RingPtr family_ring(const Singularity& s, const ArtinianAlgebra& base) {
  if (s.ring()->field != base.field()) throw RingMismatch("base field differs from the singularity's field");
  std::vector<std::string> vars = s.ring()->vars;
  for (const auto& t : base.t_vars()) {
    if (std::find(vars.begin(), vars.end(), t) != vars.end())
      throw std::invalid_argument("parameter name '" + t + "' collides with a variable");
    vars.push_back(t);
  }
  return make_ring(std::move(vars), base.field());
}

Poly reduce_family(const Poly& p, const ArtinianAlgebra& base) {
  const std::size_t n = x_count(p, base);
  Grouped g = group_by_x(p, n, base.ring());
  for (auto& [x, c] : g) c = base.reduce(c);
  return assemble(g, p.ring());
}

Poly special_fiber(const Poly& p, const Singularity& s) {
  const std::size_t n = s.nvars();
  const auto& vars = p.ring()->vars;
  if (vars.size() < n || !std::equal(s.ring()->vars.begin(), s.ring()->vars.end(), vars.begin()))
    throw RingMismatch("family polynomial does not start with the singularity's variables");
  std::vector<Term> ts;
  for (const auto& t : p.terms()) {
    const auto& e = t.mono.exponents();
    if (std::any_of(e.begin() + static_cast<std::ptrdiff_t>(n), e.end(), [](Exponent v) { return v != 0; })) continue;
    ts.push_back(Term{Monomial(std::vector<Exponent>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n))), t.coeff});
  }
  return Poly::from_terms(s.ring(), std::move(ts));
}

std::vector<Poly> split_q(const Poly& p, const SmallExtensionStep& step, const Singularity& s) {
  const std::size_t n = x_count(p, step.total);
  std::vector<std::vector<Term>> parts(step.q_basis.size());
  for (const auto& [x, c] : group_by_x(p, n, step.total.ring())) {
    auto coords = step.q_coordinates(c);
    if (!coords) throw InternalConsistency("coefficient outside q: " + c.to_string());
    for (std::size_t k = 0; k < coords->size(); ++k)
      if (!(*coords)[k].is_zero()) parts[k].push_back(Term{x, (*coords)[k]});
  }
  std::vector<Poly> out;
  for (auto& ts : parts) out.push_back(Poly::from_terms(s.ring(), std::move(ts)));
  return out;
}

EmbeddedLifting::EmbeddedLifting(ArtinianAlgebra base, const std::vector<Poly>& equations, Singularity reference)
    : base_(std::move(base)), ref_(std::move(reference)), ring_(family_ring(ref_, base_)) {
  if (equations.size() != ref_.codim()) throw std::invalid_argument("EmbeddedLifting: wrong number of equations");
  for (std::size_t j = 0; j < equations.size(); ++j) {
    Poly f = reduce_family(map_by_name(equations[j], ring_), base_);
    if (special_fiber(f, ref_) != ref_.equations()[j])
      throw std::invalid_argument("EmbeddedLifting: equation " + std::to_string(j + 1) +
                                  " does not reduce to the reference");
    eqs_.push_back(std::move(f));
  }
}

EmbeddedLifting EmbeddedLifting::trivial(ArtinianAlgebra base, Singularity reference) {
  std::vector<Poly> eqs = reference.equations();
  return EmbeddedLifting(std::move(base), eqs, std::move(reference));
}

EmbeddedLifting EmbeddedLifting::restrict_to(const ArtinianAlgebra& quotient) const {
  if (quotient.t_vars() != base_.t_vars()) throw EndpointMismatch("restriction to an algebra with other parameters");
  for (const auto& r : base_.relations())
    if (!quotient.is_zero(r)) throw EndpointMismatch("restriction target is not a quotient of the base");
  return EmbeddedLifting(quotient, eqs_, ref_);
}

bool EmbeddedLifting::operator==(const EmbeddedLifting& o) const {
  return base_ == o.base_ && ref_.ring()->vars == o.ref_.ring()->vars && ref_.equations() == o.ref_.equations() &&
         eqs_ == o.eqs_;
}

std::string EmbeddedLifting::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < eqs_.size(); ++j) os << (j ? ", " : "") << eqs_[j].to_string();
  os << " over " << base_.to_string();
  return os.str();
}

FlatnessCertificate check_flatness(const EmbeddedLifting& lift, const SmallExtensionStep& step, SyzygySource source) {
  if (!(lift.base() == step.total)) throw EndpointMismatch("lifting base differs from the step's total algebra");
  FlatnessCertificate cert;
  cert.flat = true;
  if (step.q_basis.empty()) return cert;
  const Singularity& ref = lift.reference();
  const RingPtr& ring = lift.ring();
  const std::size_t c = ref.codim();
  const std::vector<Poly>& fp = lift.equations();
  const std::vector<Poly> f = lift.restrict_to(step.quotient).equations();

  bool koszul = source == SyzygySource::Koszul || (source == SyzygySource::Automatic && is_regular_sequence(ref));
  cert.used_koszul = koszul;
  if (koszul) {
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = i + 1; j < c; ++j) {
        std::vector<Poly> a(c, Poly(ring));
        a[i] = f[j];
        a[j] = -f[i];
        cert.syzygies.push_back(std::move(a));
      }
  } else {
    std::vector<FreeVec> gens;
    for (const auto& g : f) gens.push_back(FreeVec::from_poly(g));
    for (const auto& r : step.quotient.relations()) gens.push_back(FreeVec::from_poly(map_by_name(r, ring)));
    for (const auto& syz : Lifter(ring, 1, gens).syzygies()) {
      std::vector<Poly> a;
      bool nonzero = false;
      for (std::size_t i = 0; i < c; ++i) {
        a.push_back(reduce_family(syz.component(i), step.quotient));
        nonzero = nonzero || !a.back().is_zero();
      }
      if (nonzero) cert.syzygies.push_back(std::move(a));
    }
  }

  std::vector<FreeVec> fgens;
  for (const auto& g : ref.equations()) fgens.push_back(FreeVec::from_poly(g));
  Lifter in_f(ref.ring(), 1, fgens);
  std::vector<Poly> q_fam;
  for (const auto& q : step.q_basis) q_fam.push_back(map_by_name(q, ring));

  for (const auto& a : cert.syzygies) {
    Poly w(ring);
    for (std::size_t i = 0; i < c; ++i) w += a[i] * fp[i];
    w = reduce_family(w, step.total);
    std::vector<Poly> comps = split_q(w, step, ref);
    std::vector<Poly> lifted = a;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      auto h = in_f.lift(FreeVec::from_poly(comps[k]));
      if (!h) {
        cert.flat = false;
        cert.offending_syzygy = a;
        cert.residue = w;
        return cert;
      }
      for (std::size_t i = 0; i < c; ++i) lifted[i] -= q_fam[k] * map_by_name((*h)[i], ring);
    }
    for (auto& p : lifted) p = reduce_family(p, step.total);
    cert.lifted.push_back(std::move(lifted));
  }
  return cert;
}

bool verify_certificate(const EmbeddedLifting& lift, const FlatnessCertificate& cert) {
  if (!cert.flat || cert.lifted.size() != cert.syzygies.size()) return false;
  for (const auto& a : cert.lifted) {
    if (a.size() != lift.equations().size()) return false;
    Poly s(lift.ring());
    for (std::size_t i = 0; i < a.size(); ++i) s += map_by_name(a[i], lift.ring()) * lift.equations()[i];
    if (!reduce_family(s, lift.base()).is_zero()) return false;
  }
  return true;
}

bool is_flat(const EmbeddedLifting& lift, SyzygySource source) {
  for (const auto& step : filtration(lift.base()))
    if (!check_flatness(lift.restrict_to(step.total), step, source).flat) return false;
  return true;
}

bool NormalSection::is_zero() const {
  for (const auto& v : components)
    for (const auto& p : v)
      if (!p.is_zero()) return false;
  return true;
}

namespace {

NormalSection combine(const NormalSection& a, const NormalSection& b, bool subtract) {
  if (a.q_basis != b.q_basis || a.components.size() != b.components.size())
    throw EndpointMismatch("normal sections over different steps");
  NormalSection r{a.q_basis, a.components};
  for (std::size_t k = 0; k < r.components.size(); ++k) {
    if (r.components[k].size() != b.components[k].size()) throw EndpointMismatch("normal sections of different length");
    for (std::size_t i = 0; i < r.components[k].size(); ++i)
      r.components[k][i] = subtract ? r.components[k][i] - b.components[k][i] : r.components[k][i] + b.components[k][i];
  }
  return r;
}

}  // namespace

NormalSection NormalSection::operator+(const NormalSection& o) const { return combine(*this, o, false); }
NormalSection NormalSection::operator-(const NormalSection& o) const { return combine(*this, o, true); }
NormalSection NormalSection::operator-() const {
  NormalSection r = *this;
  for (auto& v : r.components)
    for (auto& p : v) p = -p;
  return r;
}
bool NormalSection::operator==(const NormalSection& o) const {
  return q_basis == o.q_basis && components == o.components;
}

NormalSection nu_difference(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step) {
  if (!(l1.base() == step.total) || !(l2.base() == step.total))
    throw EndpointMismatch("lifting base differs from the step's total algebra");
  const Singularity& ref = l1.reference();
  require_same_reference(ref, l2.reference());
  if (!(l1.restrict_to(step.quotient) == l2.restrict_to(step.quotient)))
    throw ReductionMismatch("liftings differ modulo q");
  NormalSection nu{step.q_basis, {}};
  if (step.q_basis.empty()) return nu;
  auto gb = Ideal(ref.ring(), ref.equations()).basis();
  const std::size_t c = ref.codim();
  nu.components.assign(step.q_basis.size(), std::vector<Poly>(c, Poly(ref.ring())));
  for (std::size_t i = 0; i < c; ++i) {
    Poly d = reduce_family(l1.equations()[i] - map_by_name(l2.equations()[i], l1.ring()), step.total);
    auto comps = split_q(d, step, ref);
    for (std::size_t k = 0; k < comps.size(); ++k) nu.components[k][i] = normal_form(comps[k], *gb);
  }
  return nu;
}

bool EClass::is_zero() const {
  for (const auto& v : coords)
    if (!versal::is_zero(v)) return false;
  return true;
}

EClass e_class(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step,
               const FiniteQuotient& t1) {
  NormalSection nu = nu_difference(l1, l2, step);
  const RingPtr& local = t1.basis().ring();
  EClass e{nu.q_basis, {}};
  for (const auto& comp : nu.components) {
    std::vector<Poly> v;
    for (const auto& p : comp) v.push_back(p.in_ring(local));
    e.coords.push_back(t1.coordinates(FreeVec::from_polys(local, v)));
  }
  return e;
}

EClass e_class(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step) {
  auto t1 = t1_quotient(l1.reference());
  return e_class(l1, l2, step, *t1);
}

bool liftings_isomorphic(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step) {
  return e_class(l1, l2, step).is_zero();
}

EmbeddedLifting base_change(const EmbeddedLifting& l, const ArtinianAlgebra& target,
                            const std::vector<Poly>& t_images) {
  const ArtinianAlgebra& src = l.base();
  if (t_images.size() != src.nparams()) throw std::invalid_argument("base_change: one image per parameter required");
  if (src.field() != target.field()) throw RingMismatch("base_change: fields differ");
  std::vector<Poly> imgs;
  for (const auto& p : t_images) {
    Poly q = target.reduce(p);
    if (!q.constant_coeff().is_zero()) throw std::invalid_argument("base_change: image outside the maximal ideal");
    imgs.push_back(std::move(q));
  }
  for (const auto& r : src.relations())
    if (!target.is_zero(substitute(r, target.ring(), imgs)))
      throw std::invalid_argument("base_change: relations are not respected");
  const Singularity& ref = l.reference();
  RingPtr fam = family_ring(ref, target);
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ref.nvars(); ++i) images.push_back(Poly::variable(fam, i));
  for (const auto& p : imgs) images.push_back(map_by_name(p, fam));
  std::vector<Poly> eqs;
  for (const auto& f : l.equations()) eqs.push_back(substitute(f, fam, images));
  return EmbeddedLifting(target, eqs, ref);
}

EmbeddedLifting glue_over_fiber_product(const ArtinianAlgebra& a, const std::vector<Poly>& i1,
                                        const std::vector<Poly>& i2, const EmbeddedLifting& m1,
                                        const EmbeddedLifting& m2) {
  ArtinianAlgebra a1 = a.quotient(i1), a2 = a.quotient(i2);
  if (!(m1.base() == a1) || !(m2.base() == a2)) throw EndpointMismatch("glue: bases are not A/I1 and A/I2");
  const Singularity& ref = m1.reference();
  if (ref.ring()->vars != m2.reference().ring()->vars || ref.equations() != m2.reference().equations())
    throw RestrictionMismatch("glue: different reference singularities");
  std::vector<Poly> both = i1;
  both.insert(both.end(), i2.begin(), i2.end());
  ArtinianAlgebra a0 = a.quotient(both);
  if (!(m1.restrict_to(a0) == m2.restrict_to(a0))) throw RestrictionMismatch("glue: families differ over A/(I1 + I2)");

  const std::size_t d = a.dimension(), d1 = a1.dimension(), d2 = a2.dimension();
  Matrix m(a.field(), d1 + d2, d);
  for (std::size_t b = 0; b < d; ++b) {
    Poly e = monomial_poly(a.ring(), a.monomial_basis()[b]);
    Vec c1 = a1.coordinates(e), c2 = a2.coordinates(e);
    for (std::size_t r = 0; r < d1; ++r) m.at(r, b) = c1[r];
    for (std::size_t r = 0; r < d2; ++r) m.at(d1 + r, b) = c2[r];
  }
  if (rank(m) != d) throw std::invalid_argument("glue: I1 and I2 do not meet in zero");

  RingPtr fam = family_ring(ref, a);
  const std::size_t n = ref.nvars();
  std::vector<Poly> eqs;
  for (std::size_t j = 0; j < ref.codim(); ++j) {
    Grouped g1 = group_by_x(map_by_name(m1.equations()[j], fam), n, a.ring());
    Grouped g2 = group_by_x(map_by_name(m2.equations()[j], fam), n, a.ring());
    std::vector<Monomial> keys;
    for (const auto& kv : g1) keys.push_back(kv.first);
    for (const auto& kv : g2)
      if (!g1.count(kv.first)) keys.push_back(kv.first);
    Grouped out;
    for (const auto& x : keys) {
      Vec rhs = g1.count(x) ? a1.coordinates(g1.at(x)) : zero_vec(a.field(), d1);
      Vec c2 = g2.count(x) ? a2.coordinates(g2.at(x)) : zero_vec(a.field(), d2);
      rhs.insert(rhs.end(), c2.begin(), c2.end());
      auto sol = solve(m, rhs);
      if (!sol) throw RestrictionMismatch("glue: coefficients do not agree over A/(I1 + I2)");
      out.emplace(x, a.element(*sol));
    }
    eqs.push_back(assemble(out, fam));
  }
  return EmbeddedLifting(a, eqs, ref);
}

}  // namespace versal
