#pragma once

#include <string>
#include <vector>

#include "kirbylab/handles.hpp"
#include "kirbylab/report.hpp"

namespace kirby::rbd {

// Plumbing form of the negative-definite chain C_p: (p-1)x(p-1) tridiagonal,
// diagonal (-2, ..., -2, -p-2), +1 between consecutive elements.  BadP if
// p < 2.  |det| = p^2.
IntSymMatrix cp_matrix(Int p);

// A claimed copy of C_p realized by existing 2-handles, in chain order.
struct CpEmbedding {
  Int p = 0;
  std::vector<std::string> handle_labels;
};

// Summary of the rational ball B_p glued in by the blowdown.
struct BpDescriptor {
  Int p = 0;
  Int chi = 1;
  Int b2 = 0;
  Int h1_order = 0;  // |H1(B_p)| = p; |H1(boundary)| = p^2 matches |det C_p|
};

BpDescriptor bp_descriptor(Int p);

// Entrywise comparison of the named handles' Gram matrix with cp_matrix(p),
// one report item per matrix entry, plus the structural checks before them.
report::CheckReport verify_embedding(const handles::Presentation& x,
                                     const CpEmbedding& e);

// Removes the p-1 realizing handles and replaces the chain by the rational
// ball: ambient classes are dropped (they describe the old manifold), the
// topological form ledger is set from the integral orthogonal complement of
// the chain, and the ball contributes one 1-handle plus one classless
// 0-framed 2-handle linking it once (its p-torsion bookkeeping lives in the
// BpDescriptor).  EmbeddingInvalid if verify_embedding fails.
handles::Presentation rational_blowdown(const handles::Presentation& x,
                                        const CpEmbedding& e,
                                        const std::string& bp_label);

// All ordered tuples of distinct existing handle classes whose Gram equals
// cp_matrix(p), lexicographic by label tuple.  coeff_bound (>= 1) is
// reserved for the arbitrary-vector extension and unused by this search.
std::vector<CpEmbedding> enumerate_embeddings(const handles::Presentation& x,
                                              Int p, Int coeff_bound);

}  // namespace kirby::rbd
