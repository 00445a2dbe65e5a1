#include "versal/singularity.hpp"

#include <sstream>

#include "versal/errors.hpp"

namespace versal {

namespace {

constexpr ModuleScheme kTop = ModuleScheme::TermOverPosition;

Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly det(m[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly t = m[0][j] * determinant(minor);
    det = (j % 2 == 0) ? det + t : det - t;
  }
  return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Jacobian columns dF/dx_i as vectors of length c.
std::vector<FreeVec> jacobian_columns(const Singularity& s, const RingPtr& ring) {
  std::vector<FreeVec> cols;
  for (std::size_t i = 0; i < s.nvars(); ++i) {
    std::vector<Poly> col;
    for (const auto& f : s.equations()) col.push_back(partial_derivative(f, i).in_ring(ring));
    cols.push_back(FreeVec::from_polys(ring, col));
  }
  return cols;
}

/// F_l e_j for all l, j.
std::vector<FreeVec> equation_multiples(const Singularity& s, const RingPtr& ring, std::size_t rank) {
  std::vector<FreeVec> out;
  for (std::size_t j = 0; j < rank; ++j)
    for (const auto& f : s.equations()) out.push_back(FreeVec::unit(ring, rank, j).mul_poly(f.in_ring(ring)));
  return out;
}

void require_regular(const Singularity& s) {
  if (!is_regular_sequence(s)) throw NotRegularSequence();
}

void require_hypersurface(const Singularity& s, const char* what) {
  if (!s.is_hypersurface()) throw std::invalid_argument(std::string(what) + " requires a hypersurface");
}

}  // namespace

Singularity::Singularity(std::vector<Poly> equations) {
  if (equations.empty()) throw std::invalid_argument("Singularity: no equations");
  const RingPtr& r0 = equations.front().ring();
  ring_ = with_order(r0, MonomialOrder::DegRevLex);
  local_ = with_order(r0, MonomialOrder::NegDegRevLex);
  for (auto& f : equations) {
    if (!same_variables(f.ring(), r0)) throw RingMismatch("Singularity equations");
    if (f.is_zero()) throw NotRegularSequence();
    if (!f.constant_coeff().is_zero()) throw std::invalid_argument("Singularity: equation does not vanish at the origin");
    eqs_.push_back(f.in_ring(ring_));
  }
  if (eqs_.size() > ring_->nvars()) throw std::invalid_argument("Singularity: more equations than variables");
}

std::string Singularity::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < eqs_.size(); ++j) os << (j ? ", " : "") << eqs_[j].to_string();
  return os.str();
}

JacobianData jacobian(const Singularity& s) {
  std::vector<std::vector<Poly>> jm;
  for (const auto& f : s.equations()) {
    std::vector<Poly> row;
    for (std::size_t i = 0; i < s.nvars(); ++i) row.push_back(partial_derivative(f, i));
    jm.push_back(std::move(row));
  }
  std::vector<Poly> gens = s.equations();
  std::vector<std::vector<std::size_t>> cols;
  std::vector<std::size_t> cur;
  subsets(s.nvars(), s.codim(), 0, cur, cols);
  for (const auto& cs : cols) {
    std::vector<std::vector<Poly>> sq;
    for (const auto& row : jm) {
      std::vector<Poly> r;
      for (std::size_t c : cs) r.push_back(row[c]);
      sq.push_back(std::move(r));
    }
    Poly d = determinant(sq);
    if (!d.is_zero()) gens.push_back(std::move(d));
  }
  return JacobianData{std::move(jm), Ideal(s.ring(), std::move(gens))};
}

bool is_regular_sequence(const Singularity& s) {
  const std::size_t c = s.codim();
  if (c == 1) return !s.equations()[0].is_zero();
  const RingPtr& ring = s.ring();
  std::vector<FreeVec> koszul;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j)
      koszul.push_back(FreeVec::unit(ring, c, i).mul_poly(s.equations()[j]) -
                       FreeVec::unit(ring, c, j).mul_poly(s.equations()[i]));
  StandardBasis kb = compute_module_basis(ring, c, kTop, koszul);
  std::vector<FreeVec> gens;
  for (const auto& f : s.equations()) gens.push_back(FreeVec::from_poly(f));
  for (const auto& syz : Lifter(ring, 1, gens).syzygies())
    if (!kb.contains(syz.reorder(ring, kTop))) return false;
  return true;
}

bool certify_isolated(const Singularity& s) {
  require_regular(s);
  Ideal j(s.local_ring(), jacobian(s).jacobian_ideal.generators());
  return quotient_staircase(j).finite;
}

QuotientAlgebra tjurina_algebra(const Singularity& s) {
  require_hypersurface(s, "tjurina_algebra");
  Ideal j(s.local_ring(), jacobian(s).jacobian_ideal.generators());
  Staircase st = quotient_staircase(j);
  if (!st.finite) throw NotIsolated();
  return QuotientAlgebra{st, st.size()};
}

QuotientAlgebra milnor_algebra(const Singularity& s) {
  require_hypersurface(s, "milnor_algebra");
  std::vector<Poly> partials;
  for (std::size_t i = 0; i < s.nvars(); ++i) partials.push_back(partial_derivative(s.equations()[0], i));
  Staircase st = quotient_staircase(Ideal(s.local_ring(), partials));
  if (!st.finite) {
    // Positive characteristic can make the partials degenerate at an
    // isolated singularity; report which case applies.
    if (certify_isolated(s)) throw MathRejection("Milnor algebra is infinite-dimensional (isolated singularity in positive characteristic)");
    throw NotIsolated();
  }
  return QuotientAlgebra{st, st.size()};
}

std::shared_ptr<const FiniteQuotient> t1_quotient(const Singularity& s) {
  require_regular(s);
  const RingPtr& local = s.local_ring();
  const std::size_t c = s.codim();
  std::vector<FreeVec> gens = jacobian_columns(s, local);
  auto eq = equation_multiples(s, local, c);
  gens.insert(gens.end(), eq.begin(), eq.end());
  auto sb = std::make_shared<const StandardBasis>(compute_module_basis(local, c, kTop, gens));
  if (!staircase(*sb).finite) throw NotIsolated();
  return std::make_shared<const FiniteQuotient>(sb);
}

TangentData tangent_module(const Singularity& s, int level) {
  if (level < 0 || level > 2) throw std::invalid_argument("tangent_module: level must be 0, 1 or 2");
  const RingPtr& ring = s.ring();
  const std::size_t c = s.codim(), n = s.nvars();
  if (level == 2) {
    require_regular(s);
    return TangentData{2, PresentedModule::free(ring, 0), Dimension::finite(0), std::nullopt, std::nullopt, true};
  }
  if (level == 1) {
    auto q = t1_quotient(s);
    std::vector<FreeVec> rel = jacobian_columns(s, ring);
    auto eq = equation_multiples(s, ring, c);
    rel.insert(rel.end(), eq.begin(), eq.end());
    std::vector<std::vector<Poly>> basis;
    for (const auto& t : q->staircase().terms) {
      std::vector<Poly> v(c, Poly(ring));
      v[t.comp] = Poly::term(ring, t.mono, ring->one());
      basis.push_back(std::move(v));
    }
    return TangentData{1, PresentedModule(ring, c, std::move(rel)), Dimension::finite(q->dimension()),
                       std::move(basis), std::nullopt, false};
  }
  // Level 0: derivations theta with J theta in (F)^c, modulo (F)^n.
  require_regular(s);
  std::vector<FreeVec> gens = jacobian_columns(s, ring);
  auto eq = equation_multiples(s, ring, c);
  gens.insert(gens.end(), eq.begin(), eq.end());
  std::vector<FreeVec> derivations;
  for (const auto& syz : Lifter(ring, c, gens).syzygies()) {
    FreeVec head = syz.slice(0, n).reorder(ring, kTop);
    if (!head.is_zero()) derivations.push_back(std::move(head));
  }
  if (derivations.size() > 1 && derivations.size() <= 24) derivations = prune_generators(ring, n, derivations);
  Subquotient sq = make_subquotient(ring, n, derivations, equation_multiples(s, ring, n));
  std::optional<std::vector<Poly>> witness;
  for (std::size_t i = 0; i < sq.gens.size() && !witness; ++i)
    if (!sq.module.is_zero_element(sq.module.generator(i))) witness = sq.gens[i].to_polys();
  return TangentData{0, sq.module, sq.module.dimension(), std::nullopt, std::move(witness), false};
}

}  // namespace versal
