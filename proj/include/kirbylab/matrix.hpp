#pragma once

#include <string>
#include <vector>

#include "kirbylab/rational.hpp"

namespace kirby {

// Dense integer matrix, row-major.  Small sizes only; arithmetic is checked.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Int>>& rows);

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  Int at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Matrix transposed() const;
  friend Matrix operator*(const Matrix& x, const Matrix& y);
  bool operator==(const Matrix&) const = default;

  std::string str() const;
};

// Symmetric integer matrix (validated on construction).
struct IntSymMatrix {
  int n = 0;
  std::vector<Int> a;  // row-major n*n

  IntSymMatrix() = default;
  explicit IntSymMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0) {}

  static IntSymMatrix from_rows(const std::vector<std::vector<Int>>& rows);
  static IntSymMatrix diagonal(const std::vector<Int>& d);

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  Int at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  void set(int i, int j, Int v) { at(i, j) = v; at(j, i) = v; }

  Matrix as_matrix() const;
  bool operator==(const IntSymMatrix&) const = default;

  std::string str() const;
};

// Plain-text grid format: first line is the dimension, then the rows as
// whitespace-separated integers.
IntSymMatrix read_grid(const std::string& text);
std::string write_grid(const IntSymMatrix& m);

}  // namespace kirby
