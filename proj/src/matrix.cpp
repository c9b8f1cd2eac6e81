#include "kirbylab/matrix.hpp"

#include <sstream>

namespace kirby {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  Matrix m(static_cast<int>(rows.size()),
           rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols)
      throw Error(ErrorCode::BadArgument, "ragged matrix rows");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw Error(ErrorCode::BadArgument, "matrix shape mismatch");
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = add(r.at(i, j), mul(x.at(i, k), y.at(k, j)));
    }
  return r;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
    os << "\n";
  }
  return os.str();
}

IntSymMatrix IntSymMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  IntSymMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n; ++i) {
    if (static_cast<int>(rows[i].size()) != m.n)
      throw Error(ErrorCode::BadArgument, "matrix not square");
    for (int j = 0; j < m.n; ++j) m.at(i, j) = rows[i][j];
  }
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw Error(ErrorCode::BadArgument, "matrix not symmetric");
  return m;
}

IntSymMatrix IntSymMatrix::diagonal(const std::vector<Int>& d) {
  IntSymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n; ++i) m.at(i, i) = d[i];
  return m;
}

Matrix IntSymMatrix::as_matrix() const {
  Matrix m(n, n);
  m.a = a;
  return m;
}

std::string IntSymMatrix::str() const { return as_matrix().str(); }

IntSymMatrix read_grid(const std::string& text) {
  std::istringstream is(text);
  long long n = -1;
  if (!(is >> n) || n < 0 || n > 4096)
    throw Error(ErrorCode::BadArgument, "grid header must be a dimension");
  std::vector<std::vector<Int>> rows(static_cast<size_t>(n),
                                     std::vector<Int>(static_cast<size_t>(n)));
  for (auto& row : rows)
    for (auto& v : row)
      if (!(is >> v))
        throw Error(ErrorCode::BadArgument, "grid needs dimension^2 integers");
  long long extra;
  if (is >> extra) throw Error(ErrorCode::BadArgument, "trailing data in grid");
  return IntSymMatrix::from_rows(rows);
}

std::string write_grid(const IntSymMatrix& m) {
  std::ostringstream os;
  os << m.n << "\n" << m.str();
  return os.str();
}

}  // namespace kirby
