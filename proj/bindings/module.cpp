// Python bindings for the exact-arithmetic core: form classification,
// Smith/complement computations, and script parse/replay.  Matrices cross
// the boundary as plain lists of rows.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kirbylab/lattice.hpp"
#include "kirbylab/rbd.hpp"
#include "kirbylab/script.hpp"

namespace py = pybind11;
using namespace kirby;

namespace {

using Rows = std::vector<std::vector<Int>>;

IntSymMatrix sym_from_rows(const Rows& rows) {
  return IntSymMatrix::from_rows(rows);
}

Rows matrix_rows(const Matrix& m) {
  Rows out(static_cast<std::size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i) {
    out[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols));
    for (int j = 0; j < m.cols; ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          m.at(i, j);
  }
  return out;
}

Rows sym_rows(const IntSymMatrix& m) { return matrix_rows(m.as_matrix()); }

lattice::Parity parity_from_word(const std::string& w) {
  if (w == "odd") return lattice::Parity::Odd;
  if (w == "even") return lattice::Parity::Even;
  throw Error(ErrorCode::BadArgument, "parity must be 'odd' or 'even'");
}

}  // namespace

PYBIND11_MODULE(kirbylab, m) {
  m.doc() = "exact-arithmetic engine for the algebraic layer of handle "
            "calculus";

  m.def("cp_matrix",
        [](Int p) { return sym_rows(rbd::cp_matrix(p)); },
        py::arg("p"),
        "Plumbing form of the p-chain: (p-1)x(p-1), determinant p^2 in "
        "absolute value");

  m.def("signature",
        [](const Rows& rows) {
          const auto s = lattice::signature(sym_from_rows(rows));
          return py::make_tuple(s.sig, s.nullity);
        },
        py::arg("rows"), "(signature, nullity) of a symmetric form");

  m.def("determinant",
        [](const Rows& rows) {
          return lattice::determinant(sym_from_rows(rows));
        },
        py::arg("rows"), "exact determinant");

  m.def("parity",
        [](const Rows& rows) {
          return std::string(
              lattice::parity_name(lattice::parity(sym_from_rows(rows))));
        },
        py::arg("rows"), "'even' iff every diagonal entry is even");

  m.def("smith_normal_form",
        [](const Rows& rows) {
          const auto r = lattice::smith_normal_form(Matrix::from_rows(rows));
          py::dict out;
          out["d"] = matrix_rows(r.d);
          out["u"] = matrix_rows(r.u);
          out["v"] = matrix_rows(r.v);
          return out;
        },
        py::arg("rows"), "u*a*v == d with a nonnegative divisibility chain");

  m.def("classify",
        [](const Rows& rows) {
          const auto fc = lattice::classify(sym_from_rows(rows));
          py::dict out;
          out["rank"] = fc.rank;
          out["signature"] = fc.signature;
          out["nullity"] = fc.nullity;
          out["parity"] = std::string(lattice::parity_name(fc.parity));
          out["definite"] =
              fc.definiteness == lattice::Definiteness::PosDef ||
              fc.definiteness == lattice::Definiteness::NegDef;
          return out;
        },
        py::arg("rows"), "rank / signature / nullity / parity summary");

  m.def("classify_indefinite_odd",
        [](Int rank, Int sig) {
          const auto mn = lattice::classify_indefinite_odd(rank, sig);
          return py::make_tuple(mn.first, mn.second);
        },
        py::arg("rank"), py::arg("sig"),
        "(m, n) with the form equivalent to m<+1> + n<-1>");

  m.def("stable_equivalent",
        [](Int r1, Int s1, const std::string& p1, Int r2, Int s2,
           const std::string& p2) {
          return lattice::stable_equivalent(
              lattice::FormClass::from_triple(r1, s1, parity_from_word(p1)),
              lattice::FormClass::from_triple(r2, s2, parity_from_word(p2)));
        },
        py::arg("rank1"), py::arg("sig1"), py::arg("parity1"),
        py::arg("rank2"), py::arg("sig2"), py::arg("parity2"),
        "equality of (rank, signature, parity) for nondegenerate forms");

  m.def("orthogonal_complement",
        [](const Rows& form, const Rows& span) {
          const auto c =
              lattice::orthogonal_complement(sym_from_rows(form), span);
          py::dict out;
          out["basis"] = matrix_rows(c.basis);
          out["gram"] = sym_rows(c.gram);
          return out;
        },
        py::arg("form"), py::arg("span"),
        "saturated integral complement of the span, with its Gram matrix");

  m.def("rokhlin_constraint",
        [](Int rank, Int sig, const std::string& par) {
          return lattice::rokhlin_constraint(
              lattice::FormClass::from_triple(rank, sig,
                                              parity_from_word(par)));
        },
        py::arg("rank"), py::arg("sig"), py::arg("parity"),
        "even forms need signature divisible by 16; odd forms always pass");

  m.def("canonicalize",
        [](const std::string& text) {
          return script::print(script::parse(text));
        },
        py::arg("text"), "parse a script and print it back canonically");

  m.def("replay",
        [](const std::string& text) { return script::replay(script::parse(text)).json(); },
        py::arg("text"),
        "replay a script; returns the structured report as a JSON string");

  m.def("replay_text",
        [](const std::string& text, bool verbose) {
          return script::replay(script::parse(text)).text(verbose, false);
        },
        py::arg("text"), py::arg("verbose") = false,
        "replay a script; returns the human-readable report, no header");
}
