#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace versal {

/// Coefficient field: the rationals, or a prime field F_p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint64_t p);
  /// Parses "Q", "Fp:<p>" or "Fp <p>".
  static Field parse(std::string_view spec);

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact scalar. Rationals are kept in lowest terms with positive
/// denominator; residues mod p are kept in [0, p).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const Field& field, long value);
  FieldElem(const Field& field, const mpq_class& value);

  /// Parses an integer or "p/q" literal.
  static FieldElem parse(const Field& field, std::string_view text);

  Field field() const;
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  const mpq_class& value() const { return value_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  /// Throws std::domain_error on zero.
  FieldElem inverse() const;

  bool operator==(const FieldElem& o) const { return p_ == o.p_ && value_ == o.value_; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  /// "p/q" for rationals (just "p" when integral), residue for F_p.
  std::string to_string() const;
  /// True when the printed form has a leading minus sign.
  bool is_negative() const { return p_ == 0 && sgn(value_) < 0; }

 private:
  void check_same(const FieldElem& o) const;
  void normalize();

  mpq_class value_ = 0;
  std::uint64_t p_ = 0;
};

}  // namespace versal
