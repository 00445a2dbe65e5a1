#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "versal/deformation.hpp"

namespace versal {

/// Members F_j + (terms in the parameters) over kappa[x, t]. Without an
/// explicit base the parameters are formal power-series variables and the
/// family is used through its truncations.
class DeformationFamily {
 public:
  /// Members may live in any ring with the x-variables and the parameters.
  /// Throws std::invalid_argument when the members do not reduce to the
  /// reference at t = 0.
  DeformationFamily(Singularity reference, std::vector<std::string> params, const std::vector<Poly>& members,
                    std::optional<ArtinianAlgebra> base = std::nullopt);
  static DeformationFamily from_lifting(const EmbeddedLifting& l);

  const Singularity& reference() const { return ref_; }
  const std::vector<std::string>& params() const { return params_; }
  std::size_t nparams() const { return params_.size(); }
  const std::vector<Poly>& members() const { return members_; }
  const std::optional<ArtinianAlgebra>& base() const { return base_; }
  const RingPtr& ring() const { return ring_; }

  /// Parameter algebra modulo m^{order+1} (a quotient of the base if any).
  ArtinianAlgebra base_truncation(unsigned order) const;
  EmbeddedLifting truncated(unsigned order) const;
  /// Members as F_j + t_1*G_1j + ... when linear in the parameters,
  /// otherwise the plain polynomial.
  std::string member_string(std::size_t j) const;

 private:
  Singularity ref_;
  std::vector<std::string> params_;
  std::optional<ArtinianAlgebra> base_;
  RingPtr ring_;
  std::vector<Poly> members_;
};

/// tau x r matrix: column j holds the T^1 coordinates of dG/dt_j at t = 0.
struct KodairaSpencerMatrix {
  Matrix matrix;
  /// T^1 basis (rows), as length-c vectors over kappa[x].
  std::vector<std::vector<Poly>> row_basis;
  std::vector<std::string> columns;
};

KodairaSpencerMatrix kodaira_spencer(const DeformationFamily& family);

struct VersalResult {
  std::size_t tau = 0;
  std::vector<std::vector<Poly>> basis;
  DeformationFamily family;
  /// Relations of the base; empty (the base is a power-series ring).
  std::vector<Poly> base_relations;
  KodairaSpencerMatrix ks;
};

/// G_j = F_j + sum_i t_i G_ij over kappa[[t_1..t_tau]], G_i the staircase
/// basis of T^1. Throws NotRegularSequence or NotIsolated.
VersalResult miniversal(const Singularity& s);

struct LiftResult {
  /// The family over the order-n truncation.
  EmbeddedLifting lifting;
  /// Flatness across the last small extension (the relations lifted).
  FlatnessCertificate certificate;
  /// Per relation, the correction a'_i - a_i.
  std::vector<std::vector<Poly>> corrections;
  unsigned order = 0;
};

/// Lifts a formal family known to be flat at order n-1 to order n. Throws
/// InternalConsistency carrying the residue when a relation fails to lift.
LiftResult lift_to_next_order(const DeformationFamily& family, unsigned target_order);

/// Q: Sym^2 T^1 -> Obs, evaluated on the basis pairs (i <= j).
struct ObstructionReport {
  std::size_t tau = 0;
  std::size_t obs_dimension = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Vec> values;
  bool zero = true;
  LiftResult certificate;
};

ObstructionReport first_obstruction(const Singularity& s);

struct VersalityStep {
  unsigned order = 0;
  /// e-class of the trial against the pulled-back family before and after
  /// the parameter correction at this step.
  EClass before;
  EClass after;
};

struct VersalityReport {
  bool ok = false;
  /// Images of t_1..t_tau in the trial base.
  std::vector<Poly> substitution;
  std::vector<VersalityStep> steps;
  std::optional<unsigned> failed_order;
  std::string message;
};

/// Finds t -> m_B pulling the miniversal family back to a family isomorphic
/// to the trial over B, step by step along the m-adic filtration of B.
/// Requires order(B) <= n.
VersalityReport verify_versality_order(const VersalResult& v, unsigned n, const EmbeddedLifting& trial);
VersalityReport verify_versality_order(const Singularity& s, unsigned n, const EmbeddedLifting& trial);

}  // namespace versal
