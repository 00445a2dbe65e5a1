#include "versal/field.hpp"

#include <cctype>
#include <stdexcept>

namespace versal {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(std::string_view spec) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = trim(spec);
  if (spec == "Q" || spec == "QQ") return rationals();
  if (spec.size() > 2 && (spec.substr(0, 2) == "Fp" || spec.substr(0, 2) == "FP")) {
    std::string_view rest = trim(spec.substr(2));
    if (!rest.empty() && rest.front() == ':') rest = trim(rest.substr(1));
    if (rest.empty()) throw std::invalid_argument("missing prime in field spec");
    std::uint64_t p = 0;
    for (char c : rest) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad prime in field spec: " + std::string(rest));
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p > (1ULL << 40)) throw std::invalid_argument("prime too large");
    }
    return prime(p);
  }
  throw std::invalid_argument("unknown field spec: " + std::string(spec));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

FieldElem::FieldElem(const Field& field, long value) : value_(value), p_(field.characteristic()) { normalize(); }

FieldElem::FieldElem(const Field& field, const mpq_class& value) : value_(value), p_(field.characteristic()) {
  normalize();
}

FieldElem FieldElem::parse(const Field& field, std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad number literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return FieldElem(field, q);
}

Field FieldElem::field() const { return p_ == 0 ? Field::rationals() : Field::prime(p_); }

void FieldElem::normalize() {
  value_.canonicalize();
  if (p_ == 0) return;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class num = value_.get_num() % p;
  mpz_class den = value_.get_den() % p;
  if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    num = num * inv;
  }
  num %= p;
  if (num < 0) num += p;
  value_ = mpq_class(num);
}

void FieldElem::check_same(const FieldElem& o) const {
  if (p_ != o.p_) throw std::invalid_argument("field mismatch in scalar arithmetic");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  FieldElem r;
  r.p_ = p_;
  r.value_ = value_ + o.value_;
  if (p_ != 0) r.normalize();
  return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  FieldElem r;
  r.p_ = p_;
  r.value_ = value_ - o.value_;
  if (p_ != 0) r.normalize();
  return r;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  FieldElem r;
  r.p_ = p_;
  r.value_ = value_ * o.value_;
  if (p_ != 0) r.normalize();
  return r;
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::operator-() const {
  FieldElem r;
  r.p_ = p_;
  r.value_ = -value_;
  if (p_ != 0) r.normalize();
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  FieldElem r;
  r.p_ = p_;
  r.value_ = 1 / value_;
  r.normalize();
  return r;
}

std::string FieldElem::to_string() const { return value_.get_str(); }

}  // namespace versal
