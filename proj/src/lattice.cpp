#include "kirbylab/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace kirby::lattice {

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Signature signature(const IntSymMatrix& m) {
  int n = m.n;
  std::vector<Rational> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = Rational(m.at(i, j));
  auto at = [&](int i, int j) -> Rational& { return a[static_cast<size_t>(i) * n + j]; };

  auto swap_rc = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(at(i, k), at(j, k));
    for (int k = 0; k < n; ++k) std::swap(at(k, i), at(k, j));
  };
  auto add_rc = [&](int dst, int src, const Rational& f) {
    // congruence step: row_dst += f*row_src, then the matching column op
    for (int k = 0; k < n; ++k) at(dst, k) = at(dst, k) + f * at(src, k);
    for (int k = 0; k < n; ++k) at(k, dst) = at(k, dst) + f * at(k, src);
  };

  Signature out;
  for (int k = 0; k < n; ++k) {
    if (at(k, k).zero()) {
      int di = -1;
      for (int i = k + 1; i < n && di < 0; ++i)
        if (!at(i, i).zero()) di = i;
      if (di >= 0) {
        swap_rc(k, di);
      } else {
        // all-zero diagonal: pull a nonzero pairing onto the diagonal
        int pi = -1, pj = -1;
        for (int i = k; i < n && pi < 0; ++i)
          for (int j = i + 1; j < n && pi < 0; ++j)
            if (!at(i, j).zero()) { pi = i; pj = j; }
        if (pi < 0) {
          out.nullity += n - k;
          break;
        }
        add_rc(pi, pj, Rational(1));  // makes at(pi,pi) = 2*at(pi,pj) != 0
        if (pi != k) swap_rc(k, pi);
      }
    }
    Rational piv = at(k, k);
    if (piv.sign() > 0) ++out.sig; else --out.sig;
    for (int i = k + 1; i < n; ++i) {
      if (at(i, k).zero()) continue;
      Rational f = Rational(0) - at(i, k) / piv;
      add_rc(i, k, f);
    }
  }
  return out;
}

namespace {

// Bareiss fraction-free elimination; returns the exact determinant.
Int bareiss(std::vector<Int> a, int n) {
  if (n == 0) return 1;
  auto at = [&](int i, int j) -> Int& { return a[static_cast<size_t>(i) * n + j]; };
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int s = -1;
      for (int i = k + 1; i < n && s < 0; ++i)
        if (at(i, k) != 0) s = i;
      if (s < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(s, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        __int128 num = __int128(at(i, j)) * at(k, k) - __int128(at(i, k)) * at(k, j);
        at(i, j) = checked(num / prev);  // divides exactly (Bareiss)
      }
    prev = at(k, k);
  }
  return mul(sign, at(n - 1, n - 1));
}

}  // namespace

Int determinant(const IntSymMatrix& m) { return bareiss(m.a, m.n); }

Int determinant(const Matrix& m) {
  if (m.rows != m.cols) throw Error(ErrorCode::BadArgument, "determinant needs a square matrix");
  return bareiss(m.a, m.rows);
}

Parity parity(const IntSymMatrix& m) {
  for (int i = 0; i < m.n; ++i)
    if (m.at(i, i) % 2 != 0) return Parity::Odd;
  return Parity::Even;
}

SmithResult smith_normal_form(const Matrix& a) {
  int r = a.rows, c = a.cols;
  SmithResult out{a, Matrix::identity(r), Matrix::identity(c)};
  Matrix& d = out.d;
  Matrix& u = out.u;
  Matrix& v = out.v;

  auto swap_rows = [&](int i, int j) {
    for (int k = 0; k < c; ++k) std::swap(d.at(i, k), d.at(j, k));
    for (int k = 0; k < r; ++k) std::swap(u.at(i, k), u.at(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    for (int k = 0; k < r; ++k) std::swap(d.at(k, i), d.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(v.at(k, i), v.at(k, j));
  };
  auto row_sub = [&](int dst, int src, Int q) {  // row dst -= q*row src
    for (int k = 0; k < c; ++k) d.at(dst, k) = sub(d.at(dst, k), mul(q, d.at(src, k)));
    for (int k = 0; k < r; ++k) u.at(dst, k) = sub(u.at(dst, k), mul(q, u.at(src, k)));
  };
  auto col_sub = [&](int dst, int src, Int q) {
    for (int k = 0; k < r; ++k) d.at(k, dst) = sub(d.at(k, dst), mul(q, d.at(k, src)));
    for (int k = 0; k < c; ++k) v.at(k, dst) = sub(v.at(k, dst), mul(q, v.at(k, src)));
  };
  auto negate_row = [&](int i) {
    for (int k = 0; k < c; ++k) d.at(i, k) = -d.at(i, k);
    for (int k = 0; k < r; ++k) u.at(i, k) = -u.at(i, k);
  };

  int lim = std::min(r, c);
  for (int t = 0; t < lim; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block as pivot
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j)
          if (d.at(i, j) != 0 &&
              (pi < 0 || std::llabs(d.at(i, j)) < std::llabs(d.at(pi, pj)))) {
            pi = i; pj = j;
          }
      if (pi < 0) return out;  // trailing block zero: done
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);

      bool reduced = true;
      for (int i = t + 1; i < r; ++i)
        if (d.at(i, t) != 0) {
          row_sub(i, t, d.at(i, t) / d.at(t, t));
          if (d.at(i, t) != 0) reduced = false;  // remainder: retry with smaller pivot
        }
      for (int j = t + 1; j < c; ++j)
        if (d.at(t, j) != 0) {
          col_sub(j, t, d.at(t, j) / d.at(t, t));
          if (d.at(t, j) != 0) reduced = false;
        }
      if (!reduced) continue;

      // enforce divisibility of the remaining block by the pivot
      int bi = -1, bj = -1;
      for (int i = t + 1; i < r && bi < 0; ++i)
        for (int j = t + 1; j < c && bi < 0; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) { bi = i; bj = j; }
      if (bi < 0) break;
      // fold the offending row into row t and restart the reduction
      for (int k = 0; k < c; ++k) d.at(t, k) = add(d.at(t, k), d.at(bi, k));
      for (int k = 0; k < r; ++k) u.at(t, k) = add(u.at(t, k), u.at(bi, k));
      (void)bj;
    }
    if (d.at(t, t) < 0) negate_row(t);
  }
  return out;
}

Int rank(const Matrix& a) {
  SmithResult s = smith_normal_form(a);
  Int r = 0;
  for (int t = 0; t < std::min(a.rows, a.cols); ++t)
    if (s.d.at(t, t) != 0) ++r;
  return r;
}

FormClass FormClass::from_triple(Int rank, Int sig, Parity par) {
  FormClass f;
  f.rank = rank;
  f.signature = sig;
  f.nullity = 0;
  f.parity = par;
  if (rank == 0) f.definiteness = Definiteness::PosDef;  // empty form, conventionally
  else if (sig == rank) f.definiteness = Definiteness::PosDef;
  else if (sig == -rank) f.definiteness = Definiteness::NegDef;
  else f.definiteness = Definiteness::Indefinite;
  return f;
}

FormClass classify(const IntSymMatrix& m) {
  Signature s = signature(m);
  FormClass f;
  f.rank = m.n;
  f.signature = s.sig;
  f.nullity = s.nullity;
  f.parity = parity(m);
  if (s.nullity > 0) f.definiteness = Definiteness::Degenerate;
  else f.definiteness = FormClass::from_triple(m.n, s.sig, f.parity).definiteness;
  return f;
}

std::pair<Int, Int> classify_indefinite_odd(Int rank, Int sig) {
  if (rank <= 0 || std::llabs(sig) >= rank)
    throw Error(ErrorCode::DefiniteInput,
                "no indefinite form of rank " + std::to_string(rank) +
                    " and signature " + std::to_string(sig));
  if ((rank - sig) % 2 != 0)
    throw Error(ErrorCode::ParityMismatch,
                "rank and signature must agree mod 2");
  return {(rank + sig) / 2, (rank - sig) / 2};
}

bool stable_equivalent(const FormClass& f1, const FormClass& f2) {
  if (f1.definiteness == Definiteness::Degenerate ||
      f2.definiteness == Definiteness::Degenerate)
    throw Error(ErrorCode::DegenerateInput, "stable equivalence needs nondegenerate forms");
  return f1.rank == f2.rank && f1.signature == f2.signature && f1.parity == f2.parity;
}

IntSymMatrix hyperbolic_form() {
  return IntSymMatrix::from_rows({{0, 1}, {1, 0}});
}

Complement orthogonal_complement(const IntSymMatrix& m,
                                 const std::vector<std::vector<Int>>& span) {
  int n = m.n;
  int k = static_cast<int>(span.size());
  if (k == 0 || k > n)
    throw Error(ErrorCode::BadArgument, "span must hold between 1 and n vectors");
  Matrix s(k, n);
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(span[i].size()) != n)
      throw Error(ErrorCode::BadArgument, "span vector length mismatch");
    for (int j = 0; j < n; ++j) s.at(i, j) = span[i][j];
  }
  // Gram of the span must be nondegenerate (also rules out dependent spans).
  Matrix gram_span = s * m.as_matrix() * s.transposed();
  if (determinant(gram_span) == 0)
    throw Error(ErrorCode::DegenerateSpan, "span Gram matrix is singular");

  // x is in the complement iff p * x == 0 with p = s * m; the saturated
  // kernel basis is the set of v-columns matching zero Smith entries.
  Matrix p = s * m.as_matrix();
  SmithResult sm = smith_normal_form(p);
  std::vector<int> zero_cols;
  for (int j = 0; j < n; ++j) {
    bool zero = j >= std::min(k, n) || sm.d.at(j, j) == 0;
    if (zero) zero_cols.push_back(j);
  }
  Complement out;
  out.basis = Matrix(static_cast<int>(zero_cols.size()), n);
  for (int i = 0; i < out.basis.rows; ++i)
    for (int j = 0; j < n; ++j) out.basis.at(i, j) = sm.v.at(j, zero_cols[i]);
  Matrix g = out.basis * m.as_matrix() * out.basis.transposed();
  out.gram = IntSymMatrix(g.rows);
  out.gram.a = g.a;
  return out;
}

bool rokhlin_constraint(const FormClass& f) {
  if (f.parity == Parity::Odd) return true;
  return f.signature % 16 == 0;
}

}  // namespace kirby::lattice
