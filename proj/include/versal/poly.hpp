#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "versal/field.hpp"
#include "versal/monomial.hpp"

namespace versal {

/// Ambient polynomial ring: variable names, coefficient field and the
/// monomial order used for term iteration.
struct Ring {
  std::vector<std::string> vars;
  Field field;
  MonomialOrder order = MonomialOrder::DegRevLex;

  std::size_t nvars() const { return vars.size(); }
  FieldElem zero() const { return FieldElem(field, 0); }
  FieldElem one() const { return FieldElem(field, 1); }
  FieldElem scalar(long v) const { return FieldElem(field, v); }
  bool operator==(const Ring&) const = default;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> vars, Field field = Field::rationals(),
                  MonomialOrder order = MonomialOrder::DegRevLex);
RingPtr with_order(const RingPtr& ring, MonomialOrder order);
bool same_ring(const RingPtr& a, const RingPtr& b);
/// Same variables and field; the order may differ.
bool same_variables(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  FieldElem coeff;
};

/// Sparse polynomial. Terms are kept sorted strictly decreasing under the
/// ring's order with no zero coefficients, so the first term is leading.
class Poly {
 public:
  explicit Poly(RingPtr ring);

  static Poly constant(RingPtr ring, const FieldElem& c);
  static Poly constant(RingPtr ring, long c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly term(RingPtr ring, const Monomial& m, const FieldElem& c);
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const;

  /// Leading data; undefined on the zero polynomial.
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const FieldElem& leading_coeff() const { return terms_.front().coeff; }

  /// Highest total degree among terms (0 for the zero polynomial).
  unsigned degree() const;
  /// Lowest total degree among terms (0 for the zero polynomial).
  unsigned low_degree() const;
  FieldElem coefficient(const Monomial& m) const;
  /// Value at the origin.
  FieldElem constant_coeff() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const FieldElem& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// c * m * this
  Poly mul_term(const Monomial& m, const FieldElem& c) const;
  Poly monic() const;
  Poly pow(unsigned k) const;
  /// Terms of total degree strictly below `degree`.
  Poly truncate_below(unsigned degree) const;
  /// Same polynomial re-sorted in another ring with the same variables.
  Poly in_ring(const RingPtr& ring) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_ring(const Poly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Formal partial derivative; exponent multiples of the characteristic vanish.
Poly partial_derivative(const Poly& p, std::size_t var_index);
/// Replaces variable i of p's ring by images[i] (all living in `target`).
Poly substitute(const Poly& p, const RingPtr& target, std::span<const Poly> images);
/// Moves p into `target` by variable name. Variables of p absent from target
/// must not occur in p.
Poly map_by_name(const Poly& p, const RingPtr& target);

std::string monomial_to_string(const Ring& ring, const Monomial& m);

}  // namespace versal
