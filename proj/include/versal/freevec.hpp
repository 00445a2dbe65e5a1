#pragma once

#include <span>
#include <vector>

#include "versal/poly.hpp"

namespace versal {

/// How module terms m*e_i are ranked. Term-over-position compares the
/// monomial first; position-over-term compares the component first, lower
/// component index ranking higher.
enum class ModuleScheme { TermOverPosition, PositionOverTerm };

struct VecTerm {
  Monomial mono;
  std::size_t comp = 0;
  FieldElem coeff;
};

/// Element of a free module R^rank, stored as sorted sparse terms (leading
/// term first) under the ring's monomial order combined with `scheme`.
class FreeVec {
 public:
  FreeVec(RingPtr ring, std::size_t rank, ModuleScheme scheme = ModuleScheme::TermOverPosition);

  static FreeVec from_polys(const RingPtr& ring, std::span<const Poly> entries,
                            ModuleScheme scheme = ModuleScheme::TermOverPosition);
  static FreeVec from_poly(const Poly& p, ModuleScheme scheme = ModuleScheme::TermOverPosition);
  static FreeVec unit(RingPtr ring, std::size_t rank, std::size_t index,
                      ModuleScheme scheme = ModuleScheme::TermOverPosition);
  static FreeVec from_terms(RingPtr ring, std::size_t rank, ModuleScheme scheme, std::vector<VecTerm> terms);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  ModuleScheme scheme() const { return scheme_; }
  const std::vector<VecTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const VecTerm& leading() const { return terms_.front(); }
  unsigned degree() const;
  /// degree() minus the degree of the leading monomial.
  unsigned ecart() const;

  Poly component(std::size_t i) const;
  std::vector<Poly> to_polys() const;

  FreeVec operator+(const FreeVec& o) const;
  FreeVec operator-(const FreeVec& o) const;
  FreeVec operator-() const;
  FreeVec operator*(const FieldElem& c) const;
  FreeVec mul_term(const Monomial& m, const FieldElem& c) const;
  FreeVec mul_poly(const Poly& p) const;
  /// *this - c*m*o in a single merge pass.
  FreeVec sub_mul(const FreeVec& o, const Monomial& m, const FieldElem& c) const;
  FreeVec monic() const;
  /// Drops the leading term.
  FreeVec tail() const;

  /// Same element in another ring (same variables) and/or scheme.
  FreeVec reorder(const RingPtr& ring, ModuleScheme scheme) const;
  /// Components [begin, end) as a vector of rank end-begin.
  FreeVec slice(std::size_t begin, std::size_t end) const;
  /// Embeds into rank `new_rank` shifting components by `offset`.
  FreeVec shifted(std::size_t offset, std::size_t new_rank) const;
  FreeVec truncate_below(unsigned degree) const;

  bool operator==(const FreeVec& o) const;
  bool operator!=(const FreeVec& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check(const FreeVec& o) const;

  RingPtr ring_;
  std::size_t rank_;
  ModuleScheme scheme_;
  std::vector<VecTerm> terms_;
};

/// >0 if a ranks above b.
int compare_terms(const Ring& ring, ModuleScheme scheme, const Monomial& am, std::size_t ac, const Monomial& bm,
                  std::size_t bc);

}  // namespace versal
