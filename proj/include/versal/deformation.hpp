#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "versal/linalg.hpp"
#include "versal/singularity.hpp"

namespace versal {

/// kappa[t]/J with J containing a power of the maximal ideal. All arithmetic
/// is normal-form arithmetic against a degrevlex Groebner basis of J.
class ArtinianAlgebra {
 public:
  /// Relations are mapped into a degrevlex copy of `t_ring` by name. Throws
  /// std::invalid_argument when the quotient is not local Artinian.
  ArtinianAlgebra(const RingPtr& t_ring, std::vector<Poly> relations);

  const RingPtr& ring() const { return data_->ring; }
  const std::vector<std::string>& t_vars() const { return data_->ring->vars; }
  std::size_t nparams() const { return data_->ring->nvars(); }
  const Field& field() const { return data_->ring->field; }
  /// Reduced Groebner basis of J (empty for kappa itself).
  const std::vector<Poly>& relations() const { return data_->reduced; }
  std::size_t dimension() const { return data_->basis.size(); }
  /// Least N with m^{N+1} inside J.
  unsigned order() const { return data_->order; }
  /// Standard monomials, ascending degree.
  const std::vector<Monomial>& monomial_basis() const { return data_->basis; }

  /// Normal form; `p` may live in any ring whose variables occur here.
  Poly reduce(const Poly& p) const;
  Vec coordinates(const Poly& p) const;
  Poly element(const Vec& coords) const;
  bool is_zero(const Poly& p) const { return reduce(p).is_zero(); }

  /// kappa[t]/(J + extra).
  ArtinianAlgebra quotient(const std::vector<Poly>& extra) const;
  /// Same parameters and the same ideal.
  bool operator==(const ArtinianAlgebra& o) const;
  std::string to_string() const;

 private:
  struct Data {
    RingPtr ring;
    std::vector<Poly> reduced;
    std::shared_ptr<const StandardBasis> gb;
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
    unsigned order = 0;
  };
  std::shared_ptr<const Data> data_;
};

/// kappa[t_1..t_r]/m^{order+1}.
ArtinianAlgebra make_truncation(std::size_t r, unsigned order, const Field& field = Field::rationals(),
                                const std::string& prefix = "t");

/// A' -> A = A'/q with m_{A'} q = 0.
struct SmallExtensionStep {
  ArtinianAlgebra total;
  std::vector<Poly> ideal_q;
  ArtinianAlgebra quotient;
  /// Fixed kappa-basis of q in normal form (reduced echelon in the
  /// coordinates of `total`).
  std::vector<Poly> q_basis;
  /// Coordinates in total of q_basis, as columns.
  Matrix q_matrix;

  /// Coordinates of an element of q in q_basis; nullopt when outside q.
  std::optional<Vec> q_coordinates(const Poly& p) const;
};

/// Certifies m q = 0 and q != A' by normal forms; throws std::invalid_argument.
SmallExtensionStep make_small_extension(const ArtinianAlgebra& total, std::vector<Poly> q);

/// Steps A/m^{k+1} -> A/m^k for k = 1..order(A).
std::vector<SmallExtensionStep> filtration(const ArtinianAlgebra& a);

/// Ring with the x-variables of `s` followed by the parameters of `base`.
RingPtr family_ring(const Singularity& s, const ArtinianAlgebra& base);

/// Reduces every t-coefficient of a family polynomial modulo the relations.
Poly reduce_family(const Poly& p, const ArtinianAlgebra& base);

/// Image at t = 0 in the ring of `s`.
Poly special_fiber(const Poly& p, const Singularity& s);

/// Splits a family polynomial whose t-coefficients lie in q into kappa[x]
/// components, one per element of step.q_basis. Throws InternalConsistency
/// when some coefficient lies outside q.
std::vector<Poly> split_q(const Poly& p, const SmallExtensionStep& step, const Singularity& s);

/// Equations over base[x] whose reduction mod m_base is the reference.
class EmbeddedLifting {
 public:
  /// Equations may live in any ring with matching variable names. Throws
  /// std::invalid_argument on a wrong count or a wrong reduction.
  EmbeddedLifting(ArtinianAlgebra base, const std::vector<Poly>& equations, Singularity reference);
  /// The reference itself over `base`.
  static EmbeddedLifting trivial(ArtinianAlgebra base, Singularity reference);

  const ArtinianAlgebra& base() const { return base_; }
  const std::vector<Poly>& equations() const { return eqs_; }
  const Singularity& reference() const { return ref_; }
  const RingPtr& ring() const { return ring_; }

  /// Restriction to a quotient of the base (same parameters).
  EmbeddedLifting restrict_to(const ArtinianAlgebra& quotient) const;
  bool operator==(const EmbeddedLifting& o) const;
  std::string to_string() const;

 private:
  ArtinianAlgebra base_;
  Singularity ref_;
  RingPtr ring_;
  std::vector<Poly> eqs_;
};

struct FlatnessCertificate {
  bool flat = false;
  /// Relations of the reduced equations that were examined.
  std::vector<std::vector<Poly>> syzygies;
  /// For each, a lift with sum a'_i f'_i = 0 over the total base.
  std::vector<std::vector<Poly>> lifted;
  /// On failure: the syzygy whose residue is not in q I'.
  std::optional<std::vector<Poly>> offending_syzygy;
  std::optional<Poly> residue;
  bool used_koszul = false;
};

enum class SyzygySource { Automatic, Koszul, General };

/// Relation-lifting flatness test across one small extension. Automatic uses
/// Koszul relations when the reference is a certified regular sequence.
/// Throws EndpointMismatch when lift.base() != step.total.
FlatnessCertificate check_flatness(const EmbeddedLifting& lift, const SmallExtensionStep& step,
                                   SyzygySource source = SyzygySource::Automatic);
/// sum a'_i f'_i reduces to zero over the total base for every lifted relation.
bool verify_certificate(const EmbeddedLifting& lift, const FlatnessCertificate& cert);
/// check_flatness along the m-adic filtration of the base.
bool is_flat(const EmbeddedLifting& lift, SyzygySource source = SyzygySource::Automatic);

/// nu(X'_1, X'_2): components[k][i] is the q_basis[k] part of f'_1i - f'_2i,
/// reduced modulo (F) in kappa[x].
struct NormalSection {
  std::vector<Poly> q_basis;
  std::vector<std::vector<Poly>> components;

  bool is_zero() const;
  NormalSection operator+(const NormalSection& o) const;
  NormalSection operator-(const NormalSection& o) const;
  NormalSection operator-() const;
  bool operator==(const NormalSection& o) const;
};

/// Throws EndpointMismatch or ReductionMismatch.
NormalSection nu_difference(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step);

/// e(X'_1, X'_2) in q (x) T^1: coords[k] are the T^1 coordinates of the
/// q_basis[k] component.
struct EClass {
  std::vector<Poly> q_basis;
  std::vector<Vec> coords;
  bool is_zero() const;
  bool operator==(const EClass& o) const = default;
};

EClass e_class(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step);
/// Same, with a precomputed T^1 quotient of the reference.
EClass e_class(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step,
               const FiniteQuotient& t1);
bool liftings_isomorphic(const EmbeddedLifting& l1, const EmbeddedLifting& l2, const SmallExtensionStep& step);

/// Pushes a lifting along the algebra map base -> target sending the i-th
/// parameter to t_images[i]. Throws std::invalid_argument unless the map is
/// a well-defined local homomorphism.
EmbeddedLifting base_change(const EmbeddedLifting& l, const ArtinianAlgebra& target,
                            const std::vector<Poly>& t_images);

/// Glues m1 over A/I1 and m2 over A/I2 into a lifting over A. Requires
/// I1 and I2 to meet in zero; the restrictions to A/(I1 + I2) must coincide
/// (RestrictionMismatch otherwise).
EmbeddedLifting glue_over_fiber_product(const ArtinianAlgebra& a, const std::vector<Poly>& i1,
                                        const std::vector<Poly>& i2, const EmbeddedLifting& m1,
                                        const EmbeddedLifting& m2);

}  // namespace versal
