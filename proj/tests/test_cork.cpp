// The cork layer: the (1,1,1,0,0) model, contractibility shadow checks, the
// dot-and-zero twist with its validation gates, and the certificate that
// separates machine-verified items from imported ones.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "kirbylab/cork.hpp"

using namespace kirby;
using namespace kirby::cork;

namespace {

// A roomy host: two 1-handles, the cork pair attached at index 1, plus an
// unrelated classless handle that links 1-handle 0.
handles::Presentation host_state() {
  handles::Presentation x;
  x.zero_handles = 1;
  x.one_handles = 2;
  handles::TwoHandle spectator;
  spectator.label = "s";
  spectator.framing = -2;
  spectator.links = {1, 0};
  x.two.push_back(spectator);
  handles::TwoHandle pair;
  pair.label = "w";
  pair.framing = 0;
  pair.links = {0, 1};
  x.two.push_back(pair);
  return x;
}

}  // namespace

TEST_CASE("cork model presentation shape") {
  const CorkModel c{"W2", 1};
  const handles::Presentation x = c.presentation();
  CHECK(x.zero_handles == 1);
  CHECK(x.one_handles == 1);
  CHECK(x.three_handles == 0);
  CHECK(x.four_handles == 0);
  CHECK_FALSE(x.closed);
  REQUIRE(x.two.size() == 1);
  CHECK(x.two[0].label == "W2_h");
  CHECK(x.two[0].framing == 0);
  CHECK_FALSE(x.two[0].cls.has_value());
  CHECK(x.two[0].links == std::vector<Int>{1});
  CHECK(handles::euler_characteristic(x) == 1);
}

TEST_CASE("contractibility shadow: four machine items plus one assumption") {
  const report::CheckReport rep = verify_contractible(CorkModel{"W2", 1});
  CHECK(rep.passed());
  CHECK(rep.checks() == 4);
  CHECK(rep.assumptions() == 1);
  CHECK(rep.items.back().outcome == report::Outcome::Assumed);
  CHECK(rep.items.back().what.find("simple connectivity of W2") != std::string::npos);

  // Linking number -1 is still a unit; 2 is not, and also leaves H1 = Z/2.
  CHECK(verify_contractible(CorkModel{"Wm", -1}).passed());
  const report::CheckReport bad = verify_contractible(CorkModel{"Wx", 2});
  CHECK_FALSE(bad.passed());
  CHECK(bad.failures() == 2);
}

TEST_CASE("cork twist validation gates") {
  const handles::Presentation x = host_state();

  CHECK_THROWS_WITH_AS(cork_twist(x, 2, "w"),
                       doctest::Contains("EmbeddingTokensInvalid"), Error);
  CHECK_THROWS_WITH_AS(cork_twist(x, -1, "w"),
                       doctest::Contains("EmbeddingTokensInvalid"), Error);
  CHECK_THROWS_WITH_AS(cork_twist(x, 1, "zz"),
                       doctest::Contains("no 2-handle"), Error);

  // Nonzero framing on the named handle.
  {
    handles::Presentation y = x;
    y.two[1].framing = 1;
    CHECK_THROWS_WITH_AS(cork_twist(y, 1, "w"), doctest::Contains("framing"),
                         Error);
  }
  // A class on the named handle.
  {
    handles::Presentation y = x;
    y.ambient = handles::AmbientBasis{};
    y.ambient->extend("h", 1);
    y.two[1].cls = handles::HomologyClass{{1}};
    CHECK_THROWS_WITH_AS(cork_twist(y, 1, "w"), doctest::Contains("class"),
                         Error);
  }
  // Not a unit link at the index.
  {
    handles::Presentation y = x;
    y.two[1].links = {0, 2};
    CHECK_THROWS_WITH_AS(cork_twist(y, 1, "w"),
                         doctest::Contains("algebraically once"), Error);
  }
  // Another handle running over the same 1-handle breaks isolation.
  {
    handles::Presentation y = x;
    y.two[0].links = {1, 1};
    CHECK_THROWS_WITH_AS(cork_twist(y, 1, "w"),
                         doctest::Contains("also runs over"), Error);
  }
}

TEST_CASE("cork twist is the identity on data and an involution") {
  const handles::Presentation x = host_state();
  const handles::Presentation once = cork_twist(x, 1, "w");
  CHECK(once == x);
  const handles::Presentation twice = cork_twist(once, 1, "w");
  CHECK(twice == x);
  CHECK(handles::euler_characteristic(once) == handles::euler_characteristic(x));
  CHECK(handles::invariants(once).b2 == handles::invariants(x).b2);
  // A negative unit link is accepted too.
  handles::Presentation y = x;
  y.two[1].links = {0, -1};
  CHECK(cork_twist(y, 1, "w") == y);
}

TEST_CASE("certificate separates verified items from imported facts") {
  const handles::Presentation x = host_state();
  CorkCertificate cert;
  cert.before = x;
  cert.after = cork_twist(x, 1, "w");
  cert.cork = CorkModel{"W2", 1};
  cert.external_facts = {"an external smooth-category argument"};

  const report::CheckReport rep = check_certificate(cert);
  CHECK(rep.passed());
  // presentation equality + ledger agreement + four cork machine items.
  CHECK(rep.checks() == 6);
  // cork simple-connectivity + one imported fact.
  CHECK(rep.assumptions() == 2);
  bool imported = false;
  for (const auto& item : rep.items)
    if (item.outcome == report::Outcome::Assumed &&
        item.what.rfind("imported: ", 0) == 0)
      imported = true;
  CHECK(imported);
}

TEST_CASE("certificate without external facts warns it proves nothing smooth") {
  CorkCertificate cert;
  cert.before = host_state();
  cert.after = cert.before;
  cert.cork = CorkModel{"W2", 1};
  const report::CheckReport rep = check_certificate(cert);
  CHECK(rep.passed());
  bool warned = false;
  for (const auto& item : rep.items)
    if (item.outcome == report::Outcome::Assumed &&
        item.what.find("nothing certifies") != std::string::npos)
      warned = true;
  CHECK(warned);
}

TEST_CASE("certificate fails when the sides differ") {
  CorkCertificate cert;
  cert.before = host_state();
  cert.after = cert.before;
  cert.after.two[0].framing = 7;
  cert.cork = CorkModel{"W2", 1};
  const report::CheckReport rep = check_certificate(cert);
  CHECK_FALSE(rep.passed());
  CHECK(rep.items[0].outcome == report::Outcome::Fail);
}
