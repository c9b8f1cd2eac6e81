#include "kirbylab/cork.hpp"

#include <cstdlib>

namespace kirby::cork {

handles::Presentation CorkModel::presentation() const {
  handles::Presentation x;
  x.zero_handles = 1;
  x.one_handles = 1;
  x.three_handles = 0;
  x.four_handles = 0;
  x.closed = false;
  handles::TwoHandle h;
  h.label = name + "_h";
  h.framing = 0;
  h.links = {algebraic_link};
  x.two.push_back(h);
  return x;
}

report::CheckReport verify_contractible(const CorkModel& c) {
  report::CheckReport rep;
  const handles::Presentation x = c.presentation();

  if (x.zero_handles == 1 && x.one_handles == 1 && x.two.size() == 1 &&
      x.three_handles == 0 && x.four_handles == 0) {
    rep.pass("handle counts are (1,1,1,0,0)");
  } else {
    rep.fail("handle counts are (1,1,1,0,0)");
  }

  const Int chi = handles::euler_characteristic(x);
  if (chi == 1) {
    rep.pass("euler characteristic is 1");
  } else {
    rep.fail("euler characteristic is 1", "chi = " + std::to_string(chi));
  }

  if (std::abs(c.algebraic_link) == 1) {
    rep.pass("2-handle runs over the 1-handle algebraically once");
  } else {
    rep.fail("2-handle runs over the 1-handle algebraically once",
             "algebraic linking " + std::to_string(c.algebraic_link));
  }

  const handles::Invariants inv = handles::invariants(x);
  if (inv.h1.free_rank == 0 && inv.h1.torsion.empty()) {
    rep.pass("H1 shadow is trivial");
  } else {
    rep.fail("H1 shadow is trivial", "H1 = " + inv.h1.str());
  }

  rep.assume(
      "simple connectivity of " + c.name +
      ": the geometric handle picture is not part of this model, so "
      "contractibility beyond the homology shadow is taken on trust");
  return rep;
}

handles::Presentation cork_twist(const handles::Presentation& x,
                                 int one_index, const std::string& two_label) {
  if (one_index < 0 || one_index >= x.one_handles)
    throw Error(ErrorCode::EmbeddingTokensInvalid,
                "cork_twist: no 1-handle with index " +
                    std::to_string(one_index));
  const int hi = x.handle_index(two_label);
  if (hi < 0)
    throw Error(ErrorCode::EmbeddingTokensInvalid,
                "cork_twist: no 2-handle labeled '" + two_label + "'");
  const handles::TwoHandle& h = x.two[static_cast<std::size_t>(hi)];
  if (h.cls.has_value())
    throw Error(ErrorCode::EmbeddingTokensInvalid,
                "cork_twist: handle '" + two_label +
                    "' carries an ambient class; the cork pair must be "
                    "attached after classes are discarded");
  if (h.framing != 0)
    throw Error(ErrorCode::EmbeddingTokensInvalid,
                "cork_twist: handle '" + two_label + "' has framing " +
                    std::to_string(h.framing) + ", expected 0");
  const std::size_t oi = static_cast<std::size_t>(one_index);
  if (oi >= h.links.size() || std::abs(h.links[oi]) != 1)
    throw Error(ErrorCode::EmbeddingTokensInvalid,
                "cork_twist: handle '" + two_label +
                    "' does not run over 1-handle " +
                    std::to_string(one_index) + " algebraically once");
  for (const auto& other : x.two) {
    if (other.label == two_label) continue;
    if (oi < other.links.size() && other.links[oi] != 0)
      throw Error(ErrorCode::EmbeddingTokensInvalid,
                  "cork_twist: handle '" + other.label +
                      "' also runs over 1-handle " + std::to_string(one_index));
  }

  // Swapping the dot and the zero on an isolated unit-linked pair replaces
  // the pair by an identically shaped pair: the algebraic presentation is
  // unchanged, so every invariant this layer computes is preserved and
  // repeating the twist gives the same presentation back.
  return x;
}

report::CheckReport check_certificate(const CorkCertificate& cert) {
  report::CheckReport rep;

  if (cert.before == cert.after) {
    rep.pass("twist preserves the algebraic presentation handle-by-handle");
  } else {
    rep.fail("twist preserves the algebraic presentation handle-by-handle");
  }

  const auto lb = handles::effective_ledger(cert.before);
  const auto la = handles::effective_ledger(cert.after);
  if (lb.has_value() && la.has_value() && *lb == *la) {
    rep.pass("form ledger agrees before and after");
  } else if (!lb.has_value() && !la.has_value()) {
    rep.pass("form ledger agrees before and after", "no ledger on either side");
  } else {
    rep.fail("form ledger agrees before and after");
  }

  const report::CheckReport cork_rep = verify_contractible(cert.cork);
  for (const auto& item : cork_rep.items) rep.items.push_back(item);

  if (cert.external_facts.empty()) {
    rep.assume(
        "no external facts supplied: nothing certifies that the twist "
        "changes the smooth structure, only that it preserves the "
        "algebraic side");
  } else {
    for (const auto& f : cert.external_facts) rep.assume("imported: " + f);
  }
  return rep;
}

}  // namespace kirby::cork
