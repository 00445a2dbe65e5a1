#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "versal/module.hpp"

namespace versal {

/// Germ at the origin of V(F_1, ..., F_c) in affine n-space.
class Singularity {
 public:
  /// Equations are moved into a degrevlex copy of their ring. Throws
  /// std::invalid_argument unless every F_j vanishes at the origin and
  /// c <= n; a zero equation is rejected with NotRegularSequence.
  explicit Singularity(std::vector<Poly> equations);

  const RingPtr& ring() const { return ring_; }
  /// Same variables under negdegrevlex.
  const RingPtr& local_ring() const { return local_; }
  const std::vector<Poly>& equations() const { return eqs_; }
  std::size_t codim() const { return eqs_.size(); }
  std::size_t nvars() const { return ring_->nvars(); }
  bool is_hypersurface() const { return eqs_.size() == 1; }
  std::string to_string() const;

 private:
  RingPtr ring_, local_;
  std::vector<Poly> eqs_;
};

struct JacobianData {
  /// c x n, entry (j, i) = dF_j/dx_i.
  std::vector<std::vector<Poly>> jacobian_matrix;
  /// (F_1..F_c, c x c minors), the preimage in kappa[x] of the Jacobian ideal of A.
  Ideal jacobian_ideal;
};

JacobianData jacobian(const Singularity& s);

/// Koszul certification: every syzygy of (F_1..F_c) is a Koszul syzygy.
bool is_regular_sequence(const Singularity& s);

/// Isolated singular locus at the origin: the local Jacobian ideal has finite
/// colength. Throws NotRegularSequence when the certification fails.
bool certify_isolated(const Singularity& s);

struct QuotientAlgebra {
  Staircase basis;
  std::size_t dimension = 0;
};

/// kappa[x]_loc / (F, dF/dx_i); hypersurfaces only. Throws NotIsolated.
QuotientAlgebra tjurina_algebra(const Singularity& s);
/// kappa[x]_loc / (dF/dx_i); hypersurfaces only. Throws NotIsolated.
QuotientAlgebra milnor_algebra(const Singularity& s);

/// Local T^1 = kappa[x]^c_loc / (Jacobian columns, F_l e_j), with coordinates
/// in its staircase basis. Throws NotRegularSequence or NotIsolated.
std::shared_ptr<const FiniteQuotient> t1_quotient(const Singularity& s);

struct TangentData {
  int level = 0;
  PresentedModule presentation;
  Dimension dimension;
  /// Level 1: standard monomial vectors (length c), one per dimension.
  std::optional<std::vector<std::vector<Poly>>> basis;
  /// Level 0: a derivation (length n) that is nonzero in T^0, if any.
  std::optional<std::vector<Poly>> witness;
  /// Level 2: I/I^2 is free of rank c (regular sequence certificate).
  bool conormal_free = false;
};

/// T^0, T^1, T^2 of the germ. Presentations are over kappa[x]; level 0 is
/// the derivation module of the affine scheme, level 1 is computed locally.
TangentData tangent_module(const Singularity& s, int level);

}  // namespace versal
