#include "versal/monomial.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace versal {

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, Exponent power) {
  Monomial m(nvars);
  m.exps_[index] = power;
  m.degree_ = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  assert(size() == o.size());
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ = degree_ + o.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  assert(o.divides(*this));
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= o.exps_[i];
  r.degree_ = degree_ - o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  std::vector<Exponent> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Exponent e : m.exponents()) {
    h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool is_local(MonomialOrder order) { return order == MonomialOrder::NegDegRevLex; }

const char* order_name(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::DegRevLex: return "degrevlex";
    case MonomialOrder::Lex: return "lex";
    case MonomialOrder::NegDegRevLex: return "negdegrevlex";
  }
  return "?";
}

namespace {

// degrevlex tie-break for equal degrees: a > b iff the last nonzero entry of
// a - b is negative.
int revlex_tie(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int compare(MonomialOrder order, const Monomial& a, const Monomial& b) {
  switch (order) {
    case MonomialOrder::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case MonomialOrder::DegRevLex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return revlex_tie(a, b);
    case MonomialOrder::NegDegRevLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? 1 : -1;
      return revlex_tie(a, b);
  }
  return 0;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<Exponent> e(nvars, 0);
  // Enumerate compositions of `degree` into nvars parts.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, degree);
  return out;
}

}  // namespace versal
