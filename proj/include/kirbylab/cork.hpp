#pragma once

#include <string>
#include <vector>

#include "kirbylab/handles.hpp"
#include "kirbylab/report.hpp"

namespace kirby::cork {

// Algebraic shadow of the standard corks W_n: one 0-handle, one 1-handle,
// one 2-handle running over the 1-handle algebraically once.  Only the
// linking number is retained; the geometric clasping that makes the twist
// effective is exactly the data this layer cannot see.
struct CorkModel {
  std::string name;
  Int algebraic_link = 1;

  handles::Presentation presentation() const;
};

// Machine checks: handle counts, Euler characteristic 1, unit algebraic
// linking, trivial H1 shadow.  The genuine contractibility statement also
// needs simple connectivity, which is recorded as an assumption item.
report::CheckReport verify_contractible(const CorkModel& c);

// Exchanges the roles of the 1-handle at `one_index` and the 2-handle
// `two_label` (the dot-and-zero swap of the embedded cork).  The pair must
// look like a cork boundary pair inside x: valid index, classless 0-framed
// handle linking that 1-handle exactly once, and no other 2-handle running
// over the same 1-handle; otherwise EmbeddingTokensInvalid.  For such a
// pair the swapped presentation carries identical algebraic data, which is
// the precise sense in which this layer certifies invariance: the returned
// presentation equals the input, and the twist is an involution.
handles::Presentation cork_twist(const handles::Presentation& x,
                                 int one_index, const std::string& two_label);

// Everything a replay can say about one cork twist, split into what the
// machine verified and what has to be imported from geometry.
struct CorkCertificate {
  handles::Presentation before;
  handles::Presentation after;
  CorkModel cork;
  std::vector<std::string> external_facts;
};

report::CheckReport check_certificate(const CorkCertificate& cert);

}  // namespace kirby::cork
