#include "versal/freevec.hpp"

#include <algorithm>
#include <map>

#include "versal/errors.hpp"

namespace versal {

int compare_terms(const Ring& ring, ModuleScheme scheme, const Monomial& am, std::size_t ac, const Monomial& bm,
                  std::size_t bc) {
  if (scheme == ModuleScheme::PositionOverTerm) {
    if (ac != bc) return ac < bc ? 1 : -1;
    return compare(ring.order, am, bm);
  }
  int c = compare(ring.order, am, bm);
  if (c != 0) return c;
  if (ac != bc) return ac < bc ? 1 : -1;
  return 0;
}

namespace {

void sort_terms(const Ring& ring, ModuleScheme scheme, std::vector<VecTerm>& terms) {
  std::sort(terms.begin(), terms.end(), [&](const VecTerm& a, const VecTerm& b) {
    return compare_terms(ring, scheme, a.mono, a.comp, b.mono, b.comp) > 0;
  });
}

}  // namespace

FreeVec::FreeVec(RingPtr ring, std::size_t rank, ModuleScheme scheme)
    : ring_(std::move(ring)), rank_(rank), scheme_(scheme) {}

FreeVec FreeVec::from_polys(const RingPtr& ring, std::span<const Poly> entries, ModuleScheme scheme) {
  FreeVec v(ring, entries.size(), scheme);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!same_variables(entries[i].ring(), ring)) throw RingMismatch("vector entry");
    for (const auto& t : entries[i].terms()) v.terms_.push_back(VecTerm{t.mono, i, t.coeff});
  }
  sort_terms(*ring, scheme, v.terms_);
  return v;
}

FreeVec FreeVec::from_poly(const Poly& p, ModuleScheme scheme) {
  std::vector<Poly> one{p};
  return from_polys(p.ring(), one, scheme);
}

FreeVec FreeVec::unit(RingPtr ring, std::size_t rank, std::size_t index, ModuleScheme scheme) {
  FreeVec v(ring, rank, scheme);
  v.terms_.push_back(VecTerm{Monomial(ring->nvars()), index, ring->one()});
  return v;
}

FreeVec FreeVec::from_terms(RingPtr ring, std::size_t rank, ModuleScheme scheme, std::vector<VecTerm> terms) {
  std::map<std::pair<std::size_t, Monomial>, FieldElem> acc;
  for (auto& t : terms) {
    auto key = std::make_pair(t.comp, t.mono);
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, t.coeff);
    else it->second += t.coeff;
  }
  FreeVec v(ring, rank, scheme);
  for (auto& [k, c] : acc)
    if (!c.is_zero()) v.terms_.push_back(VecTerm{k.second, k.first, c});
  sort_terms(*v.ring_, scheme, v.terms_);
  return v;
}

unsigned FreeVec::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

unsigned FreeVec::ecart() const { return terms_.empty() ? 0 : degree() - terms_.front().mono.degree(); }

Poly FreeVec::component(std::size_t i) const {
  std::vector<Term> ts;
  for (const auto& t : terms_)
    if (t.comp == i) ts.push_back(Term{t.mono, t.coeff});
  return Poly::from_terms(ring_, std::move(ts));
}

std::vector<Poly> FreeVec::to_polys() const {
  std::vector<std::vector<Term>> parts(rank_);
  for (const auto& t : terms_) parts[t.comp].push_back(Term{t.mono, t.coeff});
  std::vector<Poly> out;
  out.reserve(rank_);
  for (auto& p : parts) out.push_back(Poly::from_terms(ring_, std::move(p)));
  return out;
}

void FreeVec::check(const FreeVec& o) const {
  if (!same_ring(ring_, o.ring_) || rank_ != o.rank_ || scheme_ != o.scheme_) throw RingMismatch("free vectors");
}

FreeVec FreeVec::operator+(const FreeVec& o) const { return sub_mul(o, Monomial(ring_->nvars()), -ring_->one()); }

FreeVec FreeVec::operator-(const FreeVec& o) const { return sub_mul(o, Monomial(ring_->nvars()), ring_->one()); }

FreeVec FreeVec::operator-() const { return *this * (-ring_->one()); }

FreeVec FreeVec::operator*(const FieldElem& c) const {
  FreeVec r(ring_, rank_, scheme_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(VecTerm{t.mono, t.comp, t.coeff * c});
  return r;
}

FreeVec FreeVec::mul_term(const Monomial& m, const FieldElem& c) const {
  FreeVec r(ring_, rank_, scheme_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(VecTerm{t.mono * m, t.comp, t.coeff * c});
  return r;
}

FreeVec FreeVec::mul_poly(const Poly& p) const {
  if (!same_variables(p.ring(), ring_)) throw RingMismatch("scalar polynomial");
  FreeVec r(ring_, rank_, scheme_);
  for (const auto& t : p.terms()) r = r.sub_mul(*this, t.mono, -t.coeff);
  return r;
}

FreeVec FreeVec::sub_mul(const FreeVec& o, const Monomial& m, const FieldElem& c) const {
  check(o);
  FreeVec r(ring_, rank_, scheme_);
  if (c.is_zero()) {
    r.terms_ = terms_;
    return r;
  }
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  const bool unit_shift = m.is_one();
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size()) {
      r.terms_.push_back(terms_[i++]);
      continue;
    }
    Monomial om = unit_shift ? o.terms_[j].mono : o.terms_[j].mono * m;
    int cmp = i == terms_.size() ? -1 : compare_terms(*ring_, scheme_, terms_[i].mono, terms_[i].comp, om, o.terms_[j].comp);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back(VecTerm{std::move(om), o.terms_[j].comp, -(o.terms_[j].coeff * c)});
      ++j;
    } else {
      FieldElem s = terms_[i].coeff - o.terms_[j].coeff * c;
      if (!s.is_zero()) r.terms_.push_back(VecTerm{terms_[i].mono, terms_[i].comp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

FreeVec FreeVec::monic() const {
  if (terms_.empty()) return *this;
  if (terms_.front().coeff.is_one()) return *this;
  return *this * terms_.front().coeff.inverse();
}

FreeVec FreeVec::tail() const {
  FreeVec r(ring_, rank_, scheme_);
  if (!terms_.empty()) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

FreeVec FreeVec::reorder(const RingPtr& ring, ModuleScheme scheme) const {
  if (!same_variables(ring, ring_)) throw RingMismatch("reorder requires the same variables");
  FreeVec r(ring, rank_, scheme);
  r.terms_ = terms_;
  if (ring->order != ring_->order || scheme != scheme_) sort_terms(*ring, scheme, r.terms_);
  return r;
}

FreeVec FreeVec::slice(std::size_t begin, std::size_t end) const {
  FreeVec r(ring_, end - begin, scheme_);
  for (const auto& t : terms_)
    if (t.comp >= begin && t.comp < end) r.terms_.push_back(VecTerm{t.mono, t.comp - begin, t.coeff});
  // Relative order is preserved for both schemes since components shift uniformly.
  return r;
}

FreeVec FreeVec::shifted(std::size_t offset, std::size_t new_rank) const {
  if (offset + rank_ > new_rank) throw std::invalid_argument("shifted: rank too small");
  FreeVec r(ring_, new_rank, scheme_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(VecTerm{t.mono, t.comp + offset, t.coeff});
  return r;
}

FreeVec FreeVec::truncate_below(unsigned degree) const {
  FreeVec r(ring_, rank_, scheme_);
  for (const auto& t : terms_)
    if (t.mono.degree() < degree) r.terms_.push_back(t);
  return r;
}

bool FreeVec::operator==(const FreeVec& o) const {
  if (rank_ != o.rank_ || !same_variables(ring_, o.ring_)) return false;
  if (ring_->order == o.ring_->order && scheme_ == o.scheme_) {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].comp != o.terms_[i].comp || terms_[i].mono != o.terms_[i].mono ||
          terms_[i].coeff != o.terms_[i].coeff)
        return false;
    return true;
  }
  return (*this - o.reorder(ring_, scheme_)).is_zero();
}

std::string FreeVec::to_string() const {
  std::string s = "(";
  auto parts = to_polys();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ", ";
    s += parts[i].to_string();
  }
  return s + ")";
}

}  // namespace versal
