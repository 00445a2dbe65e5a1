#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "versal/freevec.hpp"
#include "versal/poly.hpp"

namespace versal {

/// Standard basis of a submodule of R^rank (rank 1: an ideal). Under a global
/// order this is a reduced Groebner basis; under a local order a minimal
/// monic standard basis of the submodule localized at the origin.
class StandardBasis {
 public:
  StandardBasis(RingPtr ring, std::size_t rank, ModuleScheme scheme, std::vector<FreeVec> elements, bool reduced,
                std::optional<unsigned> corner = std::nullopt);

  const RingPtr& ring() const { return ring_; }
  MonomialOrder ordering() const { return ring_->order; }
  bool is_local() const { return versal::is_local(ring_->order); }
  std::size_t rank() const { return rank_; }
  ModuleScheme scheme() const { return scheme_; }
  bool is_reduced() const { return reduced_; }
  /// Local case: a degree N with m^N * R^rank inside the module, when known.
  /// Normal forms then reduce every term, not only the leading one.
  std::optional<unsigned> corner() const { return corner_; }

  const std::vector<FreeVec>& vectors() const { return elems_; }
  /// Rank-1 elements as polynomials.
  std::vector<Poly> elements() const;

  /// Full normal form (global) or Mora weak normal form (local).
  FreeVec normal_form(const FreeVec& v) const;
  /// Local case: also returns a unit u with u*v - remainder in the module.
  /// Global case: u = 1.
  std::pair<FreeVec, Poly> normal_form_with_unit(const FreeVec& v) const;
  bool contains(const FreeVec& v) const { return normal_form(v).is_zero(); }

  /// Index of a basis element whose leading term divides m*e_comp, if any.
  std::optional<std::size_t> find_divisor(const Monomial& m, std::size_t comp) const;
  bool is_standard(const Monomial& m, std::size_t comp) const { return !find_divisor(m, comp); }

 private:
  FreeVec global_nf(FreeVec v) const;
  std::pair<FreeVec, Poly> mora_nf(FreeVec v) const;

  RingPtr ring_;
  std::size_t rank_;
  ModuleScheme scheme_;
  std::vector<FreeVec> elems_;
  bool reduced_;
  std::optional<unsigned> corner_;
};

/// Basis of the submodule generated by `gens` (all of rank `rank` in `ring`
/// with `scheme`; zero generators are dropped).
StandardBasis compute_module_basis(const RingPtr& ring, std::size_t rank, ModuleScheme scheme,
                                   std::span<const FreeVec> gens);

class Ideal {
 public:
  /// Generators are moved into `ring` (which fixes the ordering).
  Ideal(RingPtr ring, std::vector<Poly> generators);

  const RingPtr& ring() const { return ring_; }
  MonomialOrder ordering() const { return ring_->order; }
  const std::vector<Poly>& generators() const { return gens_; }
  /// Cached basis if present.
  const std::shared_ptr<const StandardBasis>& basis_cache() const { return cache_; }
  /// Copy carrying a computed basis.
  Ideal with_basis() const;
  /// Cached basis or a freshly computed one.
  std::shared_ptr<const StandardBasis> basis() const;

 private:
  RingPtr ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<const StandardBasis> cache_;
};

StandardBasis compute_standard_basis(const Ideal& ideal);
Poly normal_form(const Poly& p, const StandardBasis& basis);
bool ideal_member(const Poly& p, const Ideal& ideal);

struct StandardTerm {
  Monomial mono;
  std::size_t comp = 0;
  bool operator==(const StandardTerm&) const = default;
};

/// Terms outside the leading module, ascending degree and then by the local
/// (negdegrevlex, term-over-position) order. Empty when infinite.
struct Staircase {
  std::vector<StandardTerm> terms;
  bool finite = false;

  std::size_t size() const { return terms.size(); }
  std::vector<Monomial> monomials() const;
};

Staircase staircase(const StandardBasis& basis);
Staircase quotient_staircase(const Ideal& ideal);

/// Columns generate all relations sum_j s_j * f_j = 0.
struct SyzygyModule {
  RingPtr ring;
  std::size_t tuple_size = 0;
  std::vector<std::vector<Poly>> columns;
};

/// Syzygies of polynomials (computed with a global order).
SyzygyModule syzygies(std::span<const Poly> tuple);
/// Syzygies among module elements; returns vectors of length gens.size().
/// Requires a global ordering. Redundant generators are pruned.
std::vector<FreeVec> module_syzygies(const RingPtr& ring, std::size_t rank, std::span<const FreeVec> gens);

/// Global lifting: cofactors c with target = sum_i c_i gens_i, if the target
/// lies in the submodule.
class Lifter {
 public:
  Lifter(const RingPtr& ring, std::size_t rank, std::span<const FreeVec> gens);
  std::optional<std::vector<Poly>> lift(const FreeVec& target) const;
  bool contains(const FreeVec& target) const;
  /// Generators of all relations among the gens (augmented-basis syzygies).
  std::vector<FreeVec> syzygies() const;
  std::size_t count() const { return ngens_; }

 private:
  RingPtr ring_;
  std::size_t rank_;
  std::size_t ngens_;
  std::shared_ptr<const StandardBasis> aug_;
};

/// Drops generators lying in the submodule generated by the others.
std::vector<FreeVec> prune_generators(const RingPtr& ring, std::size_t rank, std::vector<FreeVec> gens);

/// Finite-dimensional quotient R^rank / M with exact coordinates in the
/// staircase basis.
class FiniteQuotient {
 public:
  explicit FiniteQuotient(std::shared_ptr<const StandardBasis> basis);

  const StandardBasis& basis() const { return *basis_; }
  const Staircase& staircase() const { return stairs_; }
  std::size_t dimension() const { return stairs_.size(); }

  /// Canonical representative: a combination of staircase terms.
  FreeVec reduce(const FreeVec& v) const;
  Poly reduce(const Poly& p) const;
  std::vector<FieldElem> coordinates(const FreeVec& v) const;
  std::vector<FieldElem> coordinates(const Poly& p) const;
  FreeVec element(std::span<const FieldElem> coords) const;

 private:
  std::shared_ptr<const StandardBasis> basis_;
  Staircase stairs_;
  unsigned corner_ = 0;
};

}  // namespace versal
