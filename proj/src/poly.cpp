#include "versal/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "versal/errors.hpp"

namespace versal {

RingPtr make_ring(std::vector<std::string> vars, Field field, MonomialOrder order) {
  return std::make_shared<const Ring>(Ring{std::move(vars), field, order});
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order == order) return ring;
  return make_ring(ring->vars, ring->field, order);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

bool same_variables(const RingPtr& a, const RingPtr& b) {
  return a == b || (a->vars == b->vars && a->field == b->field);
}

namespace {

void sort_terms(const Ring& ring, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return compare(ring.order, a.mono, b.mono) > 0; });
}

std::vector<Term> merge(const Ring& ring, const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = compare(ring.order, a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      FieldElem s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back(Term{a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly Poly::constant(RingPtr ring, const FieldElem& c) {
  Poly p(ring);
  if (!c.is_zero()) p.terms_.push_back(Term{Monomial(ring->nvars()), c});
  return p;
}

Poly Poly::constant(RingPtr ring, long c) {
  auto f = FieldElem(ring->field, c);
  return constant(std::move(ring), f);
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw std::out_of_range("variable index out of range");
  Poly p(ring);
  p.terms_.push_back(Term{Monomial::variable(ring->nvars(), index), ring->one()});
  return p;
}

Poly Poly::term(RingPtr ring, const Monomial& m, const FieldElem& c) {
  Poly p(ring);
  if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::unordered_map<Monomial, FieldElem, MonomialHash> acc;
  for (auto& t : terms) {
    auto [it, inserted] = acc.try_emplace(t.mono, t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  Poly p(ring);
  for (auto& [m, c] : acc)
    if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  sort_terms(*ring, p.terms_);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

unsigned Poly::low_degree() const {
  if (terms_.empty()) return 0;
  unsigned d = terms_[0].mono.degree();
  for (const auto& t : terms_) d = std::min(d, t.mono.degree());
  return d;
}

FieldElem Poly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return ring_->zero();
}

FieldElem Poly::constant_coeff() const { return coefficient(Monomial(ring_->nvars())); }

void Poly::check_ring(const Poly& o) const {
  if (!same_ring(ring_, o.ring_)) throw RingMismatch("polynomial operands");
}

Poly Poly::operator+(const Poly& o) const {
  check_ring(o);
  Poly r(ring_);
  r.terms_ = merge(*ring_, terms_, o.terms_, false);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_ring(o);
  Poly r(ring_);
  r.terms_ = merge(*ring_, terms_, o.terms_, true);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return Poly(ring_);
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  std::unordered_map<Monomial, FieldElem, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Monomial m = a.mono * b.mono;
      FieldElem c = a.coeff * b.coeff;
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  Poly r(ring_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms_.push_back(Term{m, c});
  sort_terms(*ring_, r.terms_);
  return r;
}

Poly Poly::operator-() const {
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono, -t.coeff});
  return r;
}

Poly Poly::operator*(const FieldElem& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono, t.coeff * c});
  return r;
}

Poly Poly::mul_term(const Monomial& m, const FieldElem& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coeff().inverse();
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly Poly::truncate_below(unsigned degree) const {
  Poly r(ring_);
  for (const auto& t : terms_)
    if (t.mono.degree() < degree) r.terms_.push_back(t);
  return r;
}

Poly Poly::in_ring(const RingPtr& ring) const {
  if (!same_variables(ring_, ring)) throw RingMismatch("in_ring requires the same variables and field");
  Poly r(ring);
  r.terms_ = terms_;
  if (ring->order != ring_->order) sort_terms(*ring, r.terms_);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!same_variables(ring_, o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  if (ring_->order == o.ring_->order) {
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }
  return (*this - o.in_ring(ring_)).is_zero();
}

std::string monomial_to_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.coeff.is_negative();
    FieldElem mag = neg ? -t.coeff : t.coeff;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      s += mag.to_string();
    } else {
      if (!mag.is_one()) s += mag.to_string() + "*";
      s += monomial_to_string(*ring_, t.mono);
    }
  }
  return s;
}

Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

Poly partial_derivative(const Poly& p, std::size_t var_index) {
  const auto& ring = p.ring();
  if (var_index >= ring->nvars()) throw std::out_of_range("partial_derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Exponent e = t.mono[var_index];
    if (e == 0) continue;
    FieldElem c = t.coeff * FieldElem(ring->field, static_cast<long>(e));
    if (c.is_zero()) continue;
    std::vector<Exponent> ex = t.mono.exponents();
    ex[var_index] -= 1;
    out.push_back(Term{Monomial(std::move(ex)), c});
  }
  // Differentiation keeps distinct monomials distinct, so only re-sorting is needed.
  return Poly::from_terms(ring, std::move(out));
}

Poly substitute(const Poly& p, const RingPtr& target, std::span<const Poly> images) {
  const auto& ring = p.ring();
  if (images.size() != ring->nvars()) throw std::invalid_argument("substitute: wrong number of images");
  for (const auto& img : images)
    if (!same_ring(img.ring(), target)) throw RingMismatch("substitute: image outside target ring");
  if (ring->field != target->field) throw RingMismatch("substitute: field mismatch");
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, Exponent e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly result(target);
  for (const auto& t : p.terms()) {
    Poly term = Poly::constant(target, t.coeff);
    for (std::size_t i = 0; i < t.mono.size() && !term.is_zero(); ++i)
      if (t.mono[i] > 0) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

Poly map_by_name(const Poly& p, const RingPtr& target) {
  const auto& ring = p.ring();
  if (ring->field != target->field) throw RingMismatch("map_by_name: field mismatch");
  std::vector<int> where(ring->nvars(), -1);
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    for (std::size_t j = 0; j < target->nvars(); ++j)
      if (ring->vars[i] == target->vars[j]) where[i] = static_cast<int>(j);
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::vector<Exponent> e(target->nvars(), 0);
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (where[i] < 0) throw RingMismatch("map_by_name: variable " + ring->vars[i] + " missing in target");
      e[static_cast<std::size_t>(where[i])] = t.mono[i];
    }
    out.push_back(Term{Monomial(std::move(e)), t.coeff});
  }
  return Poly::from_terms(target, std::move(out));
}

}  // namespace versal
