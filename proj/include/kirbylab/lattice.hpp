#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kirbylab/matrix.hpp"

namespace kirby::lattice {

enum class Parity { Even, Odd };
enum class Definiteness { PosDef, NegDef, Indefinite, Degenerate };

const char* parity_name(Parity p);

struct Signature {
  Int sig = 0;       // #positive - #negative eigenvalue signs
  Int nullity = 0;   // dimension of the radical
  bool operator==(const Signature&) const = default;
};

// Exact signature by symmetric Gaussian elimination over the rationals
// (Sylvester's law; no floating point anywhere).
Signature signature(const IntSymMatrix& m);

// Exact determinant, fraction-free Bareiss elimination.
Int determinant(const IntSymMatrix& m);
Int determinant(const Matrix& m);

// Even iff every diagonal entry is even (characteristic-vector criterion for
// the forms handled here).
Parity parity(const IntSymMatrix& m);

// Smith normal form: u * a * v == d with u, v unimodular and the diagonal of
// d a nonnegative divisibility chain d1 | d2 | ...
struct SmithResult {
  Matrix d, u, v;
};
SmithResult smith_normal_form(const Matrix& a);

Int rank(const Matrix& a);  // rank over Q, via the Smith form

// Stable isomorphism class of a symmetric form.
struct FormClass {
  Int rank = 0;  // dimension of the underlying lattice
  Int signature = 0;
  Int nullity = 0;
  Parity parity = Parity::Even;
  Definiteness definiteness = Definiteness::Degenerate;

  static FormClass from_triple(Int rank, Int sig, Parity par);
  bool operator==(const FormClass&) const = default;
};

FormClass classify(const IntSymMatrix& m);

// Unique odd indefinite unimodular model m<1> + n<-1> for the given rank and
// signature.  DefiniteInput if |sig| >= rank, ParityMismatch if rank and sig
// disagree mod 2.
std::pair<Int, Int> classify_indefinite_odd(Int rank, Int sig);

// After one hyperbolic stabilization both sides are indefinite, so stable
// equivalence is decided by (rank, signature, parity).  Both inputs must be
// nondegenerate; unimodularity is the caller's assumption.
bool stable_equivalent(const FormClass& f1, const FormClass& f2);

// The hyperbolic plane H = [[0,1],[1,0]].
IntSymMatrix hyperbolic_form();

// Basis and Gram matrix of the saturated integral orthogonal complement of
// the span inside (Z^n, m).  DegenerateSpan if the span's Gram is singular.
struct Complement {
  Matrix basis;       // one complement vector per row
  IntSymMatrix gram;  // pairwise products of the basis rows under m
};
Complement orthogonal_complement(const IntSymMatrix& m,
                                 const std::vector<std::vector<Int>>& span);

// Even intersection forms of closed spin 4-manifolds have signature divisible
// by 16; odd forms are unconstrained.  True when the constraint is satisfied.
bool rokhlin_constraint(const FormClass& f);

}  // namespace kirby::lattice
