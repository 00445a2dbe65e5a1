#include "versal/linalg.hpp"

#include <stdexcept>

namespace versal {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, FieldElem(field, 0)) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElem(field, 1);
  return m;
}

Matrix Matrix::from_columns(Field field, std::size_t rows, std::span<const Vec> cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("from_columns: column length");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vec Matrix::column(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r == c ? !at(r, c).is_one() : !at(r, c).is_zero()) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape");
  Matrix p(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem& a = at(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        if (!o.at(k, c).is_zero()) p.at(r, c) += a * o.at(k, c);
    }
  return p;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape");
  Matrix s = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += o.data_[i];
  return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape");
  Matrix s = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= o.data_[i];
  return s;
}

Vec Matrix::apply(std::span<const FieldElem> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix apply: length");
  Vec out(rows_, FieldElem(field_, 0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!v[c].is_zero() && !at(r, c).is_zero()) out[r] += at(r, c) * v[c];
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += at(r, c).to_string();
    }
  }
  return s + "]";
}

Echelon row_reduce(Matrix m) {
  Echelon e{std::move(m), {}};
  Matrix& a = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t c = col; c < a.cols(); ++c) std::swap(a.at(piv, c), a.at(row, c));
    FieldElem inv = a.at(row, col).inverse();
    for (std::size_t c = col; c < a.cols(); ++c)
      if (!a.at(row, c).is_zero()) a.at(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a.at(r, col).is_zero()) continue;
      FieldElem f = a.at(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (!a.at(row, c).is_zero()) a.at(r, c) -= f * a.at(row, c);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<Vec> nullspace(const Matrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[free] = FieldElem(m.field(), 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, std::span<const FieldElem> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: length");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced.at(r, m.cols());
  return x;
}

Vec zero_vec(const Field& field, std::size_t n) { return Vec(n, FieldElem(field, 0)); }

bool is_zero(std::span<const FieldElem> v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

SpanBuilder::SpanBuilder(Field field, std::size_t dim) : field_(field), dim_(dim) {}

Vec SpanBuilder::reduce(Vec v) const {
  if (v.size() != dim_) throw std::invalid_argument("SpanBuilder: length");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElem& f = v[pivots_[i]];
    if (f.is_zero()) continue;
    FieldElem c = f;
    for (std::size_t k = pivots_[i]; k < dim_; ++k)
      if (!rows_[i][k].is_zero()) v[k] -= c * rows_[i][k];
  }
  return v;
}

bool SpanBuilder::add(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  FieldElem inv = v[p].inverse();
  for (std::size_t k = p; k < dim_; ++k) v[k] *= inv;
  // Keep earlier rows reduced at the new pivot so reduce() stays one pass.
  for (auto& r : rows_) {
    if (r[p].is_zero()) continue;
    FieldElem c = r[p];
    for (std::size_t k = p; k < dim_; ++k)
      if (!v[k].is_zero()) r[k] -= c * v[k];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool SpanBuilder::contains(Vec v) const { return is_zero(reduce(std::move(v))); }

}  // namespace versal
