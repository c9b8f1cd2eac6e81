#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kirbylab/lattice.hpp"

namespace kirby::handles {

// Ordered basis of the ambient second homology, each generator of square +1
// or -1 (diagonal convention; blowups append generators of square -1).
struct AmbientBasis {
  std::vector<std::string> labels;
  std::vector<Int> squares;

  int size() const { return static_cast<int>(labels.size()); }
  bool has(const std::string& label) const;
  int index(const std::string& label) const;  // UnknownHandle if absent
  void extend(const std::string& label, Int square);
  bool operator==(const AmbientBasis&) const = default;
};

// Integer vector of coefficients over the ambient basis.
struct HomologyClass {
  std::vector<Int> coeff;

  bool operator==(const HomologyClass&) const = default;
  std::string str(const AmbientBasis& basis) const;  // e.g. "7h -3e1 -2e2"
};

Int pair(const AmbientBasis& basis, const HomologyClass& x, const HomologyClass& y);
Int square(const AmbientBasis& basis, const HomologyClass& x);

// A 2-handle: label, optional homology class (framings are represented by
// classes when present; framing always equals the class's square), and the
// algebraic linking numbers of its attaching circle with each 1-handle.
struct TwoHandle {
  std::string label;
  std::optional<HomologyClass> cls;
  Int framing = 0;
  std::vector<Int> links;

  bool operator==(const TwoHandle&) const = default;
};

// Topological form ledger: what is known about the closed-up intersection
// form after surgeries whose effect is classified rather than recomputed
// from classes (rational blowdown, dot/zero surgeries).
struct FormLedger {
  Int rank = 0;
  Int sig = 0;
  lattice::Parity parity = lattice::Parity::Odd;
  std::optional<std::pair<Int, Int>> realized;  // m<1> + n<-1> model if known

  bool operator==(const FormLedger&) const = default;
};

// Handle presentation at the algebraic level.  Values are immutable; moves
// return new presentations.
struct Presentation {
  Int zero_handles = 0;
  int one_handles = 0;
  Int three_handles = 0;
  Int four_handles = 0;
  std::vector<TwoHandle> two;
  std::optional<AmbientBasis> ambient;
  bool closed = false;
  std::vector<std::string> assumptions;
  std::optional<FormLedger> ledger;

  const TwoHandle& handle(const std::string& label) const;  // UnknownHandle
  int handle_index(const std::string& label) const;         // -1 if absent
  bool operator==(const Presentation&) const = default;
};

Int euler_characteristic(const Presentation& x);

struct AbelianGroup {
  Int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;  // "0", "Z", "Z/7", "Z + Z/2", ...
  bool operator==(const AbelianGroup&) const = default;
};

struct Invariants {
  Int chi = 0;
  Int b2 = 0;          // #2-handles minus the rank of the 1-handle relations
  AbelianGroup h1;     // cokernel of the linking matrix
};

Invariants invariants(const Presentation& x);

// Gram matrix of all 2-handle classes.  Requires a closed presentation with
// no 1-handles and a class on every handle.
IntSymMatrix intersection_form(const Presentation& x);

// Gram matrix of the named handles' classes (any presentation state).
IntSymMatrix gram_of(const Presentation& x, const std::vector<std::string>& labels);

// What is known of (rank, signature, parity): the stored ledger if set, else
// computed from the handle shadow (b2 count, class Gram).  Empty when the
// presentation has no stored ledger and no classes to compute one from.
std::optional<FormLedger> effective_ledger(const Presentation& x);

// --- moves ------------------------------------------------------------
// sign is the square of the new generator (= the signature change): -1 for a
// standard blowup, +1 for the anti-blowup.  Each strand (label, m) replaces
// that handle's class c by c - m*e_new; the new handle's class is e_new.
Presentation blow_up(const Presentation& x, Int sign, const std::string& new_label,
                     const std::vector<std::pair<std::string, Int>>& strands);

// Inverse move: the named handle's class must be a bare ambient generator of
// square +-1 and its linking row zero.  Square -1 reflects the other classes
// by c + (c.v)v, square +1 by the mirror rule c - (c.v)v.
Presentation blow_down(const Presentation& x, const std::string& label);

// class(moving) += sign*class(over); framing recomputed; linking rows
// combined.  Classless presentations slide by rows alone, with the circles'
// geometric linking lk (default 0) feeding the framing update.
Presentation slide(const Presentation& x, const std::string& moving,
                   const std::string& over, Int sign,
                   std::optional<Int> lk = std::nullopt);

// Cancels a 1-handle against a 2-handle of unit algebraic linking.  The
// geometric half of the cancellation is imported via the assumption token.
// No other 2-handle may link the cancelled 1-handle (slide off first).
Presentation cancel_pair(const Presentation& x, int one_index,
                         const std::string& two_label, const std::string& token);

// Surgery trading the dotted circle for a 0-framed classless 2-handle.  With
// a geometric once-linking token the form ledger gains a hyperbolic summand;
// without it the ledger is dropped (the surgered bundle is not identified).
Presentation zero_dot_exchange(const Presentation& x, int one_index,
                               const std::string& new_label,
                               const std::optional<std::string>& once_token);

}  // namespace kirby::handles
