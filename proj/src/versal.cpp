#include "versal/versal.hpp"

#include <algorithm>
#include <sstream>

#include "versal/errors.hpp"

namespace versal {

namespace {

std::vector<std::vector<Poly>> staircase_vectors(const FiniteQuotient& q, const Singularity& s) {
  std::vector<std::vector<Poly>> out;
  for (const auto& t : q.staircase().terms) {
    std::vector<Poly> v(s.codim(), Poly(s.ring()));
    v[t.comp] = Poly::term(s.ring(), t.mono, s.ring()->one());
    out.push_back(std::move(v));
  }
  return out;
}

bool same_reference(const Singularity& a, const Singularity& b) {
  return a.ring()->vars == b.ring()->vars && a.ring()->field == b.ring()->field && a.equations() == b.equations();
}

std::string signed_term(const Poly& g) {
  if (g == Poly::constant(g.ring(), 1)) return "";
  if (g.size() == 1 && g.leading_coeff().is_one()) return "*" + g.to_string();
  return "*(" + g.to_string() + ")";
}

}  // namespace

DeformationFamily::DeformationFamily(Singularity reference, std::vector<std::string> params,
                                     const std::vector<Poly>& members, std::optional<ArtinianAlgebra> base)
    : ref_(std::move(reference)), params_(std::move(params)), base_(std::move(base)) {
  if (base_ && base_->t_vars() != params_)
    throw std::invalid_argument("DeformationFamily: parameters differ from the base's");
  std::vector<std::string> vars = ref_.ring()->vars;
  for (const auto& t : params_) {
    if (std::find(vars.begin(), vars.end(), t) != vars.end())
      throw std::invalid_argument("DeformationFamily: parameter name '" + t + "' is already in use");
    vars.push_back(t);
  }
  ring_ = make_ring(std::move(vars), ref_.ring()->field);
  if (members.size() != ref_.codim()) throw std::invalid_argument("DeformationFamily: wrong number of members");
  for (std::size_t j = 0; j < members.size(); ++j) {
    Poly g = map_by_name(members[j], ring_);
    if (base_) g = reduce_family(g, *base_);
    if (special_fiber(g, ref_) != ref_.equations()[j])
      throw std::invalid_argument("DeformationFamily: member " + std::to_string(j + 1) +
                                  " does not reduce to the reference");
    members_.push_back(std::move(g));
  }
}

DeformationFamily DeformationFamily::from_lifting(const EmbeddedLifting& l) {
  return DeformationFamily(l.reference(), l.base().t_vars(), l.equations(), l.base());
}

ArtinianAlgebra DeformationFamily::base_truncation(unsigned order) const {
  RingPtr t_ring = make_ring(params_, ref_.ring()->field);
  std::vector<Poly> rel;
  if (!params_.empty())
    for (const auto& m : monomials_of_degree(params_.size(), order + 1))
      rel.push_back(Poly::term(t_ring, m, t_ring->one()));
  if (base_) return base_->quotient(rel);
  return ArtinianAlgebra(t_ring, std::move(rel));
}

EmbeddedLifting DeformationFamily::truncated(unsigned order) const {
  return EmbeddedLifting(base_truncation(order), members_, ref_);
}

std::string DeformationFamily::member_string(std::size_t j) const {
  const Poly& g = members_.at(j);
  const std::size_t n = ref_.nvars(), r = params_.size();
  std::vector<std::vector<Term>> parts(r);
  for (const auto& t : g.terms()) {
    const auto& e = t.mono.exponents();
    unsigned tdeg = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (e[n + i] > 0) {
        tdeg += e[n + i];
        which = i;
      }
    if (tdeg > 1) return g.to_string();
    if (tdeg == 1)
      parts[which].push_back(Term{Monomial(std::vector<Exponent>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n))), t.coeff});
  }
  std::string out = ref_.equations()[j].to_string();
  for (std::size_t i = 0; i < r; ++i) {
    Poly gi = Poly::from_terms(ref_.ring(), std::move(parts[i]));
    if (!gi.is_zero()) out += " + " + params_[i] + signed_term(gi);
  }
  return out;
}

KodairaSpencerMatrix kodaira_spencer(const DeformationFamily& family) {
  const Singularity& s = family.reference();
  auto t1 = t1_quotient(s);
  const std::size_t tau = t1->dimension(), r = family.nparams();
  KodairaSpencerMatrix ks{Matrix(s.ring()->field, tau, r), staircase_vectors(*t1, s), family.params()};
  if (r == 0) return ks;
  EmbeddedLifting l = family.truncated(1);
  auto steps = filtration(l.base());
  if (steps.empty()) return ks;
  const SmallExtensionStep& step = steps.front();
  if (!check_flatness(l, step).flat) throw MathRejection("family is not flat to first order");
  EClass e = e_class(l, EmbeddedLifting::trivial(l.base(), s), step, *t1);
  for (std::size_t k = 0; k < e.q_basis.size(); ++k)
    for (std::size_t j = 0; j < r; ++j) {
      FieldElem c = e.q_basis[k].coefficient(Monomial::variable(r, j));
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < tau; ++i) ks.matrix.at(i, j) += c * e.coords[k][i];
    }
  return ks;
}

VersalResult miniversal(const Singularity& s) {
  if (!certify_isolated(s)) throw NotIsolated();
  auto t1 = t1_quotient(s);
  std::vector<std::vector<Poly>> basis = staircase_vectors(*t1, s);
  const std::size_t tau = basis.size();
  std::vector<std::string> params;
  for (std::size_t i = 1; i <= tau; ++i) params.push_back("t" + std::to_string(i));
  std::vector<std::string> vars = s.ring()->vars;
  vars.insert(vars.end(), params.begin(), params.end());
  RingPtr fam = make_ring(vars, s.ring()->field);
  std::vector<Poly> members;
  for (std::size_t j = 0; j < s.codim(); ++j) {
    Poly g = map_by_name(s.equations()[j], fam);
    for (std::size_t i = 0; i < tau; ++i)
      g += Poly::variable(fam, s.nvars() + i) * map_by_name(basis[i][j], fam);
    members.push_back(std::move(g));
  }
  DeformationFamily family(s, params, members);
  KodairaSpencerMatrix ks = kodaira_spencer(family);
  return VersalResult{tau, std::move(basis), std::move(family), {}, std::move(ks)};
}

LiftResult lift_to_next_order(const DeformationFamily& family, unsigned target_order) {
  if (target_order == 0) throw std::invalid_argument("lift_to_next_order: target order must be positive");
  if (family.base() && family.base()->order() < target_order)
    throw std::invalid_argument("lift_to_next_order: the family's base has order below the target");
  EmbeddedLifting prev = family.truncated(target_order - 1);
  if (!is_flat(prev)) throw std::invalid_argument("lift_to_next_order: family is not flat at the previous order");
  EmbeddedLifting next = family.truncated(target_order);
  auto steps = filtration(next.base());
  LiftResult res{next, FlatnessCertificate{}, {}, target_order};
  res.certificate.flat = true;
  if (steps.empty() || !(steps.back().total == next.base())) return res;
  const SmallExtensionStep& step = steps.back();
  res.certificate = check_flatness(next, step);
  if (!res.certificate.flat)
    throw InternalConsistency("relation fails to lift at order " + std::to_string(target_order) +
                              "; residue " + res.certificate.residue->to_string());
  for (std::size_t a = 0; a < res.certificate.syzygies.size(); ++a) {
    std::vector<Poly> corr;
    for (std::size_t i = 0; i < res.certificate.syzygies[a].size(); ++i)
      corr.push_back(reduce_family(res.certificate.lifted[a][i] - res.certificate.syzygies[a][i], next.base()));
    res.corrections.push_back(std::move(corr));
  }
  return res;
}

ObstructionReport first_obstruction(const Singularity& s) {
  VersalResult v = miniversal(s);
  const Dimension t2 = tangent_module(s, 2).dimension;
  if (t2.infinite) throw InternalConsistency("T^2 of a certified complete intersection is infinite");
  LiftResult lift = lift_to_next_order(v.family, 2);
  ObstructionReport rep{v.tau, t2.value, {}, {}, true, std::move(lift)};
  for (std::size_t i = 0; i < v.tau; ++i)
    for (std::size_t j = i; j < v.tau; ++j) {
      rep.pairs.emplace_back(i, j);
      rep.values.push_back(zero_vec(s.ring()->field, rep.obs_dimension));
    }
  rep.zero = rep.certificate.certificate.flat;
  for (const auto& val : rep.values) rep.zero = rep.zero && is_zero(val);
  return rep;
}

VersalityReport verify_versality_order(const VersalResult& v, unsigned n, const EmbeddedLifting& trial) {
  const Singularity& s = v.family.reference();
  if (!same_reference(s, trial.reference())) throw ReductionMismatch("trial deforms a different singularity");
  const ArtinianAlgebra& b = trial.base();
  if (b.order() > n) throw std::invalid_argument("verify_versality_order: trial base has order above n");
  const RingPtr& fam = trial.ring();
  const std::size_t nx = s.nvars(), c = s.codim(), tau = v.tau, r = b.nparams();
  auto t1 = t1_quotient(s);

  std::vector<FreeVec> gens;
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<Poly> col;
    for (const auto& f : s.equations()) col.push_back(partial_derivative(f, i));
    gens.push_back(FreeVec::from_polys(s.ring(), col));
  }
  for (std::size_t j = 0; j < c; ++j)
    for (const auto& f : s.equations()) gens.push_back(FreeVec::unit(s.ring(), c, j).mul_poly(f));
  Lifter transport(s.ring(), c, gens);

  VersalityReport rep;
  rep.substitution.assign(tau, Poly(b.ring()));
  std::vector<Poly> delta(nx, Poly(fam));
  std::vector<std::vector<Poly>> u(c, std::vector<Poly>(c, Poly(fam)));
  for (std::size_t j = 0; j < c; ++j) u[j][j] = Poly::constant(fam, 1);

  auto pulled = [&]() {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < nx; ++i) images.push_back(Poly::variable(fam, i));
    for (const auto& p : rep.substitution) images.push_back(map_by_name(p, fam));
    std::vector<Poly> g;
    for (const auto& m : v.family.members()) g.push_back(substitute(m, fam, images));
    std::vector<Poly> out;
    for (std::size_t j = 0; j < c; ++j) {
      Poly acc(fam);
      for (std::size_t l = 0; l < c; ++l) acc += u[j][l] * g[l];
      out.push_back(std::move(acc));
    }
    return out;
  };
  auto transported = [&]() {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < nx; ++i) images.push_back(Poly::variable(fam, i) + delta[i]);
    for (std::size_t k = 0; k < r; ++k) images.push_back(Poly::variable(fam, nx + k));
    std::vector<Poly> out;
    for (const auto& f : trial.equations()) out.push_back(substitute(f, fam, images));
    return out;
  };

  auto steps = filtration(b);
  for (std::size_t idx = 0; idx < steps.size(); ++idx) {
    const SmallExtensionStep& step = steps[idx];
    const unsigned order = static_cast<unsigned>(idx + 1);
    VersalityStep rec;
    rec.order = order;
    EmbeddedLifting l1(step.total, transported(), s), l2(step.total, pulled(), s);
    try {
      rec.before = e_class(l1, l2, step, *t1);
    } catch (const ReductionMismatch&) {
      throw InternalConsistency("transported trial and pulled-back family differ below order " + std::to_string(order));
    }
    std::vector<std::vector<Poly>> w(step.q_basis.size(), std::vector<Poly>(c, Poly(s.ring())));
    for (std::size_t j = 0; j < c; ++j) {
      auto comps = split_q(l1.equations()[j] - map_by_name(l2.equations()[j], l1.ring()), step, s);
      for (std::size_t k = 0; k < comps.size(); ++k) w[k][j] = comps[k];
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Vec& e = rec.before.coords[k];
      std::vector<Poly> resid = w[k];
      for (std::size_t i = 0; i < tau; ++i)
        for (std::size_t j = 0; j < c; ++j) resid[j] -= v.basis[i][j] * e[i];
      auto sol = transport.lift(FreeVec::from_polys(s.ring(), resid));
      if (!sol) {
        rep.failed_order = order;
        rep.message = "no polynomial coordinate change realizes the T^1 reduction at order " + std::to_string(order);
        return rep;
      }
      const Poly qb = map_by_name(step.q_basis[k], b.ring());
      const Poly qf = map_by_name(step.q_basis[k], fam);
      for (std::size_t i = 0; i < tau; ++i) rep.substitution[i] += qb * e[i];
      for (std::size_t x = 0; x < nx; ++x) delta[x] -= qf * map_by_name((*sol)[x], fam);
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t l = 0; l < c; ++l) u[j][l] += qf * map_by_name((*sol)[nx + j * c + l], fam);
    }
    for (auto& p : rep.substitution) p = b.reduce(p);
    for (auto& p : delta) p = reduce_family(p, b);
    for (auto& row : u)
      for (auto& p : row) p = reduce_family(p, b);
    EmbeddedLifting m1(step.total, transported(), s), m2(step.total, pulled(), s);
    rec.after = e_class(m1, m2, step, *t1);
    rep.steps.push_back(rec);
    if (!(m1 == m2)) {
      rep.failed_order = order;
      rep.message = "families still differ after the correction at order " + std::to_string(order);
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

VersalityReport verify_versality_order(const Singularity& s, unsigned n, const EmbeddedLifting& trial) {
  return verify_versality_order(miniversal(s), n, trial);
}

}  // namespace versal
