// Chain plumbing matrices, embedding verification, the blowdown surgery,
// and the chain search.  The pipeline state used here is rebuilt through
// the direct API so these tests do not depend on the script layer.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>

#include "doctest.h"
#include "kirbylab/rbd.hpp"

using namespace kirby;
using namespace kirby::rbd;

namespace {

handles::Presentation pipeline_state() {
  using namespace kirby::handles;
  Presentation x;
  x.zero_handles = 1;
  x.one_handles = 2;
  x.four_handles = 1;
  x.closed = true;
  x.ambient = AmbientBasis{};
  x.ambient->extend("h", 1);
  auto add = [&x](const std::string& label, std::vector<Int> coeff,
                  std::vector<Int> links) {
    TwoHandle h;
    h.label = label;
    h.cls = HomologyClass{std::move(coeff)};
    h.framing = square(*x.ambient, *h.cls);
    h.links = std::move(links);
    x.two.push_back(std::move(h));
  };
  add("a", {1}, {0, 1});
  add("b", {2}, {1, 0});
  add("u6", {5}, {0, 0});
  x = blow_up(x, -1, "e1", {{"u6", 3}});
  x = blow_up(x, -1, "e2", {{"u6", 2}});
  x = slide(x, "u6", "b", 1);
  for (int i = 3; i <= 13; ++i)
    x = blow_up(x, -1, "e" + std::to_string(i), {{"u6", 2}});
  x = slide(x, "e9", "e10", -1);
  x = slide(x, "e10", "e11", -1);
  x = slide(x, "e11", "e12", -1);
  x = slide(x, "e12", "e13", -1);
  x = blow_up(x, -1, "e14", {{"u6", 1}, {"e13", 1}});
  return x;
}

const std::vector<std::string> chain_labels = {"e9",  "e10", "e11",
                                               "e12", "e13", "u6"};

}  // namespace

TEST_CASE("cp matrices: shape, determinant, signature, parity") {
  CHECK_THROWS_WITH_AS(cp_matrix(1), doctest::Contains("BadP"), Error);
  CHECK_THROWS_WITH_AS(cp_matrix(0), doctest::Contains("BadP"), Error);

  const IntSymMatrix m2 = cp_matrix(2);
  CHECK(m2.n == 1);
  CHECK(m2.at(0, 0) == -4);

  const IntSymMatrix m7 = cp_matrix(7);
  REQUIRE(m7.n == 6);
  for (int i = 0; i < 5; ++i) CHECK(m7.at(i, i) == -2);
  CHECK(m7.at(5, 5) == -9);
  for (int i = 0; i + 1 < 6; ++i) {
    CHECK(m7.at(i, i + 1) == 1);
    CHECK(m7.at(i + 1, i) == 1);
  }
  for (int i = 0; i < 6; ++i)
    for (int j = i + 2; j < 6; ++j) CHECK(m7.at(i, j) == 0);

  for (Int p = 2; p <= 12; ++p) {
    const IntSymMatrix m = cp_matrix(p);
    CHECK(std::abs(lattice::determinant(m)) == p * p);
    const auto s = lattice::signature(m);
    CHECK(s.sig == -(p - 1));  // negative definite chain
    CHECK(s.nullity == 0);
    // The last diagonal entry -p-2 decides the parity.
    const auto par = lattice::parity(m);
    CHECK(par == (p % 2 == 0 ? lattice::Parity::Even : lattice::Parity::Odd));
  }
}

TEST_CASE("rational ball descriptor") {
  const BpDescriptor d = bp_descriptor(7);
  CHECK(d.p == 7);
  CHECK(d.chi == 1);
  CHECK(d.b2 == 0);
  CHECK(d.h1_order == 7);
  CHECK_THROWS_WITH_AS(bp_descriptor(1), doctest::Contains("BadP"), Error);
}

TEST_CASE("embedding verification reports one item per Gram entry") {
  const handles::Presentation x = pipeline_state();
  const report::CheckReport rep =
      verify_embedding(x, CpEmbedding{7, chain_labels});
  CHECK(rep.passed());
  int gram_items = 0;
  for (const auto& item : rep.items)
    if (item.what.rfind("gram[", 0) == 0) ++gram_items;
  CHECK(gram_items == 36);

  // A wrong chain order fails on a specific entry, not globally.
  const report::CheckReport bad = verify_embedding(
      x, CpEmbedding{7, {"e10", "e9", "e11", "e12", "e13", "u6"}});
  CHECK_FALSE(bad.passed());
  CHECK(bad.failures() >= 1);

  const report::CheckReport short_chain =
      verify_embedding(x, CpEmbedding{7, {"e9", "e10"}});
  CHECK_FALSE(short_chain.passed());

  const report::CheckReport no_such =
      verify_embedding(x, CpEmbedding{2, {"zz"}});
  CHECK_FALSE(no_such.passed());
}

TEST_CASE("rational blowdown rewires the presentation and sets the ledger") {
  const handles::Presentation x = pipeline_state();
  const handles::Presentation y =
      rational_blowdown(x, CpEmbedding{7, chain_labels}, "bp7");

  CHECK(y.two.size() == 12);
  CHECK(y.one_handles == 3);
  CHECK_FALSE(y.ambient.has_value());
  for (const auto& h : y.two) CHECK_FALSE(h.cls.has_value());
  CHECK(y.handle_index("u6") == -1);
  CHECK(y.handle_index("e9") == -1);

  const auto& bp = y.handle("bp7");
  CHECK(bp.framing == 0);
  CHECK(bp.links == std::vector<Int>{0, 0, 1});
  // Surviving handles keep framings and zero-extended linking rows.
  CHECK(y.handle("a").links == std::vector<Int>{0, 1, 0});
  CHECK(y.handle("e14").framing == -1);

  REQUIRE(y.ledger.has_value());
  CHECK(y.ledger->rank == 9);
  CHECK(y.ledger->sig == -7);
  CHECK(y.ledger->parity == lattice::Parity::Odd);
  REQUIRE(y.ledger->realized.has_value());
  CHECK(*y.ledger->realized == std::pair<Int, Int>(1, 8));

  CHECK(y.assumptions.size() == x.assumptions.size() + 2);
  CHECK(euler_characteristic(y) == 11);
  CHECK(handles::invariants(y).b2 == 9);
  CHECK(handles::invariants(y).h1.trivial());
}

TEST_CASE("rational blowdown rejects bad embeddings and label clashes") {
  const handles::Presentation x = pipeline_state();
  CHECK_THROWS_WITH_AS(
      rational_blowdown(x, CpEmbedding{7, {"e9", "e10", "e11", "e12", "e13", "e14"}},
                        "bp7"),
      doctest::Contains("EmbeddingInvalid"), Error);
  CHECK_THROWS_WITH_AS(rational_blowdown(x, CpEmbedding{7, chain_labels}, "a"),
                       doctest::Contains("LabelClash"), Error);
  CHECK_THROWS_WITH_AS(rational_blowdown(x, CpEmbedding{7, chain_labels}, "h"),
                       doctest::Contains("LabelClash"), Error);
}

TEST_CASE("chain search finds exactly the known embedding") {
  const handles::Presentation x = pipeline_state();
  const auto found = enumerate_embeddings(x, 7, 1);
  REQUIRE(found.size() == 1);
  CHECK(found[0].handle_labels == chain_labels);

  // Oracle for p=2: a single class of square -4; scan all handles directly.
  int squares_m4 = 0;
  for (const auto& h : x.two)
    if (h.cls.has_value() && handles::square(*x.ambient, *h.cls) == -4)
      ++squares_m4;
  const auto found2 = enumerate_embeddings(x, 2, 1);
  CHECK(static_cast<int>(found2.size()) == squares_m4);
  CHECK(found2.empty());

  CHECK_THROWS_WITH_AS(enumerate_embeddings(x, 1, 1),
                       doctest::Contains("BadP"), Error);
  CHECK_THROWS_WITH_AS(enumerate_embeddings(x, 7, 0),
                       doctest::Contains("BadArgument"), Error);
  handles::Presentation bare;
  CHECK_THROWS_WITH_AS(enumerate_embeddings(bare, 7, 1),
                       doctest::Contains("NoAmbient"), Error);
}

TEST_CASE("search order is lexicographic in the label tuple") {
  // Two disjoint -4-spheres: both single-handle chains for p=2 appear, in
  // label order.
  using namespace kirby::handles;
  Presentation x;
  x.zero_handles = 1;
  x.ambient = AmbientBasis{};
  x.ambient->extend("g1", -1);
  x.ambient->extend("g2", -1);
  x.ambient->extend("g3", -1);
  x.ambient->extend("g4", -1);
  auto add = [&x](const std::string& label, std::vector<Int> coeff) {
    TwoHandle h;
    h.label = label;
    h.cls = HomologyClass{std::move(coeff)};
    h.framing = square(*x.ambient, *h.cls);
    x.two.push_back(std::move(h));
  };
  add("q", {0, 0, 1, 1});  // square -2: not a p=2 chain
  add("n", {1, 1, 1, 1});  // square -4
  add("m", {2, 0, 0, 0});  // square -4
  const auto found = enumerate_embeddings(x, 2, 1);
  REQUIRE(found.size() == 2);
  CHECK(found[0].handle_labels == std::vector<std::string>{"m"});
  CHECK(found[1].handle_labels == std::vector<std::string>{"n"});
}
