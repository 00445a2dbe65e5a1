#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "versal/field.hpp"

namespace versal {

using Vec = std::vector<FieldElem>;

/// Dense row-major matrix over an exact field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  static Matrix identity(Field field, std::size_t n);
  static Matrix from_columns(Field field, std::size_t rows, std::span<const Vec> cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FieldElem& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Vec apply(std::span<const FieldElem> v) const;
  bool operator==(const Matrix& o) const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<FieldElem> data_;
};

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0}.
std::vector<Vec> nullspace(const Matrix& m);
/// Some v with m v = b, if one exists.
std::optional<Vec> solve(const Matrix& m, std::span<const FieldElem> b);

Vec zero_vec(const Field& field, std::size_t n);
bool is_zero(std::span<const FieldElem> v);

/// Incremental independence tracker (rows kept in echelon form).
class SpanBuilder {
 public:
  SpanBuilder(Field field, std::size_t dim);
  /// Adds v; returns true if it enlarged the span.
  bool add(Vec v);
  bool contains(Vec v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  Vec reduce(Vec v) const;

  Field field_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace versal
