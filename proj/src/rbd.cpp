#include "kirbylab/rbd.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "kirbylab/lattice.hpp"

namespace kirby::rbd {

IntSymMatrix cp_matrix(Int p) {
  if (p < 2) throw Error(ErrorCode::BadP, "cp_matrix: p must be >= 2");
  const int n = static_cast<int>(p - 1);
  IntSymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, -2);
  m.set(n - 1, n - 1, -p - 2);
  for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1);
  return m;
}

BpDescriptor bp_descriptor(Int p) {
  if (p < 2) throw Error(ErrorCode::BadP, "bp_descriptor: p must be >= 2");
  BpDescriptor d;
  d.p = p;
  d.chi = 1;
  d.b2 = 0;
  d.h1_order = p;
  return d;
}

report::CheckReport verify_embedding(const handles::Presentation& x,
                                     const CpEmbedding& e) {
  report::CheckReport rep;
  bool structural_ok = true;

  if (e.p >= 2) {
    rep.pass("p >= 2");
  } else {
    rep.fail("p >= 2", "p = " + std::to_string(e.p));
    structural_ok = false;
  }

  if (x.ambient.has_value()) {
    rep.pass("ambient basis present");
  } else {
    rep.fail("ambient basis present", "presentation has no ambient basis");
    structural_ok = false;
  }

  {
    std::set<std::string> seen;
    bool distinct = true;
    for (const auto& l : e.handle_labels)
      if (!seen.insert(l).second) distinct = false;
    if (distinct) {
      rep.pass("chain labels distinct");
    } else {
      rep.fail("chain labels distinct", "a label repeats");
      structural_ok = false;
    }
  }

  if (e.p >= 2 &&
      e.handle_labels.size() == static_cast<std::size_t>(e.p - 1)) {
    rep.pass("chain length is p-1");
  } else {
    rep.fail("chain length is p-1",
             "got " + std::to_string(e.handle_labels.size()) + " labels");
    structural_ok = false;
  }

  for (const auto& l : e.handle_labels) {
    const int hi = x.handle_index(l);
    const bool classed =
        hi >= 0 && x.two[static_cast<std::size_t>(hi)].cls.has_value();
    if (classed) {
      rep.pass("handle " + l + " exists with a class");
    } else {
      rep.fail("handle " + l + " exists with a class",
               hi < 0 ? "no such handle" : "handle carries no class");
      structural_ok = false;
    }
  }

  if (!structural_ok) return rep;

  const IntSymMatrix expected = cp_matrix(e.p);
  const IntSymMatrix gram = handles::gram_of(x, e.handle_labels);
  for (int i = 0; i < gram.n; ++i) {
    for (int j = 0; j < gram.n; ++j) {
      const std::string what = "gram[" + e.handle_labels[static_cast<std::size_t>(i)] +
                               "," + e.handle_labels[static_cast<std::size_t>(j)] + "]";
      if (gram.at(i, j) == expected.at(i, j)) {
        rep.pass(what, "= " + std::to_string(gram.at(i, j)));
      } else {
        rep.fail(what, "got " + std::to_string(gram.at(i, j)) + ", expected " +
                           std::to_string(expected.at(i, j)));
      }
    }
  }
  return rep;
}

handles::Presentation rational_blowdown(const handles::Presentation& x,
                                        const CpEmbedding& e,
                                        const std::string& bp_label) {
  const report::CheckReport rep = verify_embedding(x, e);
  if (!rep.passed()) {
    const report::Item* f = rep.first_failure();
    throw Error(ErrorCode::EmbeddingInvalid,
                "rational_blowdown: embedding check failed: " + f->what +
                    (f->detail.empty() ? "" : " (" + f->detail + ")"));
  }
  if (x.handle_index(bp_label) >= 0 || x.ambient->has(bp_label))
    throw Error(ErrorCode::LabelClash,
                "rational_blowdown: label '" + bp_label + "' already in use");

  // Integral orthogonal complement of the chain inside the old ambient
  // lattice: this is what survives the replacement and fixes the new
  // topological form ledger.
  std::vector<std::vector<Int>> span;
  span.reserve(e.handle_labels.size());
  for (const auto& l : e.handle_labels)
    span.push_back(x.handle(l).cls->coeff);
  IntSymMatrix ambient_form(static_cast<int>(x.ambient->labels.size()));
  for (int i = 0; i < ambient_form.n; ++i)
    ambient_form.set(i, i, x.ambient->squares[static_cast<std::size_t>(i)]);
  const lattice::Complement comp =
      lattice::orthogonal_complement(ambient_form, span);

  const lattice::Signature sg = lattice::signature(comp.gram);
  handles::FormLedger ledger;
  ledger.rank = comp.gram.n - sg.nullity;
  ledger.sig = sg.sig;
  ledger.parity = lattice::parity(comp.gram);
  if (ledger.parity == lattice::Parity::Odd && sg.nullity == 0 &&
      std::abs(ledger.sig) < ledger.rank) {
    ledger.realized = lattice::classify_indefinite_odd(ledger.rank, ledger.sig);
  }

  handles::Presentation y = x;
  for (const auto& l : e.handle_labels) {
    const int idx = y.handle_index(l);
    y.two.erase(y.two.begin() + idx);
  }
  // The ambient basis and the surviving classes describe the old manifold,
  // not the new one; only the ledger carries the form forward.
  for (auto& h : y.two) h.cls.reset();
  y.ambient.reset();
  y.ledger = ledger;

  // The rational ball itself: one 1-handle, one 2-handle running over it
  // once algebraically.  Its framing-zero attachment keeps the pair visible
  // to later carving moves.
  for (auto& h : y.two) h.links.push_back(0);
  y.one_handles += 1;
  handles::TwoHandle bp;
  bp.label = bp_label;
  bp.framing = 0;
  bp.links.assign(static_cast<std::size_t>(y.one_handles), 0);
  bp.links.back() = 1;
  y.two.push_back(bp);

  const std::string tag = "rational blowdown (p=" + std::to_string(e.p) + ")";
  y.assumptions.push_back(
      tag + ": chain neighborhood replaced by the rational ball via the "
            "standard boundary identification");
  y.assumptions.push_back(
      tag + ": simple connectivity of the result imported from the gluing "
            "argument, not recomputed from this presentation");
  return y;
}

std::vector<CpEmbedding> enumerate_embeddings(const handles::Presentation& x,
                                              Int p, Int coeff_bound) {
  if (p < 2) throw Error(ErrorCode::BadP, "enumerate_embeddings: p must be >= 2");
  if (coeff_bound < 1)
    throw Error(ErrorCode::BadArgument,
                "enumerate_embeddings: coeff_bound must be >= 1");
  if (!x.ambient.has_value())
    throw Error(ErrorCode::NoAmbient,
                "enumerate_embeddings: presentation has no ambient basis");

  std::vector<std::string> labels;
  for (const auto& h : x.two)
    if (h.cls.has_value()) labels.push_back(h.label);
  std::sort(labels.begin(), labels.end());

  const IntSymMatrix expected = cp_matrix(p);
  const int n = expected.n;
  std::vector<CpEmbedding> out;
  std::vector<std::string> chosen;
  std::vector<const handles::HomologyClass*> cls;

  auto pairing = [&](const handles::HomologyClass& a,
                     const handles::HomologyClass& b) {
    return handles::pair(*x.ambient, a, b);
  };

  std::function<void(int)> dfs = [&](int depth) {
    if (depth == n) {
      out.push_back(CpEmbedding{p, chosen});
      return;
    }
    for (const auto& l : labels) {
      if (std::find(chosen.begin(), chosen.end(), l) != chosen.end()) continue;
      const handles::HomologyClass& c = *x.handle(l).cls;
      if (handles::square(*x.ambient, c) != expected.at(depth, depth)) continue;
      bool ok = true;
      for (int j = 0; j < depth; ++j) {
        if (pairing(*cls[static_cast<std::size_t>(j)], c) !=
            expected.at(j, depth)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(l);
      cls.push_back(&c);
      dfs(depth + 1);
      chosen.pop_back();
      cls.pop_back();
    }
  };
  dfs(0);
  return out;
}

}  // namespace kirby::rbd
