#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace versal {

using Exponent = std::uint32_t;

/// Exponent vector over a fixed number of ring variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);
  Monomial(std::initializer_list<Exponent> exps) : Monomial(std::vector<Exponent>(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1);

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& o) const;
  /// Exact quotient; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }
  /// Plain lexicographic comparison of exponent vectors (container key only).
  bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

 private:
  std::vector<Exponent> exps_;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// degrevlex and lex are global (1 < x_i); negdegrevlex is local (x_i < 1).
/// negdegrevlex ranks lower total degree higher and breaks ties exactly as
/// degrevlex does (reverse lexicographic on exponents).
enum class MonomialOrder { DegRevLex, Lex, NegDegRevLex };

bool is_local(MonomialOrder order);
const char* order_name(MonomialOrder order);

/// Returns >0 if a ranks above b, <0 if below, 0 if equal.
int compare(MonomialOrder order, const Monomial& a, const Monomial& b);

/// All monomials in nvars variables of exactly the given total degree.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

}  // namespace versal
