// The script layer: lexing/parsing with positioned errors, canonical
// printing (parse -> print -> parse is the identity on payloads), and the
// replay engine's failure, assumption, and bookkeeping behavior.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kirbylab/script.hpp"

using namespace kirby;
using namespace kirby::script;

namespace {

// Bundled scripts: honored from the environment first so ctest can point at
// the source tree, with relative fallbacks for ad-hoc runs.
std::string scripts_dir() {
  if (const char* env = std::getenv("KIRBYLAB_SCRIPT_PATH")) return env;
  for (const char* cand : {"scripts", "../scripts"})
    if (std::filesystem::exists(std::string(cand) + "/r8.kcs")) return cand;
  return "";
}

Report run(const std::string& text) { return replay(parse(text)); }

}  // namespace

TEST_CASE("round trip on the bundled scripts") {
  const std::string dir = scripts_dir();
  REQUIRE(!dir.empty());
  for (const char* name :
       {"cp2_14.kcs", "r8.kcs", "cork_twist.kcs", "stabilize.kcs"}) {
    CAPTURE(name);
    const Script s1 = parse_file(dir + "/" + name);
    const std::string printed = print(s1);
    const Script s2 = parse(printed);
    CHECK(s2 == s1);
    CHECK(print(s2) == printed);  // canonical text is a fixpoint
  }
}

TEST_CASE("round trip on one of every statement form") {
  const std::string text =
      "begin t\n"
      "# a full-line comment survives\n"
      "\n"
      "ambient h +1\n"
      "counts 1 2 0 1\n"
      "closed true\n"
      "handle a class 7h -3e1 -2e2 framing 36 links [ 1 0 ]\n"
      "handle plain\n"
      "blowup -1 e strands u6 3 e13 1\n"
      "blowup +1 f\n"
      "blowdown e\n"
      "slide x over y sign -1 lk 2\n"
      "slide x over y sign +1\n"
      "cancel 2 bp7 token \"geometric cancellation of the pair\"\n"
      "exchange 0\n"
      "exchange 1 as st once \"0-framed partner meets the belt circle once\"\n"
      "rbd p 7 handles [ e9 u6 ] label bp7\n"
      "rbd p 3 handles [ q r ]\n"
      "cork W2 link 1\n"
      "twist cork W2 one 2 two bp7\n"
      "certify fact \"one\" fact \"two\"\n"
      "certify\n"
      "assume \"imported boundary fact\"\n"
      "assert b2 15\n"
      "assert chi 17\n"
      "assert sigma -13\n"
      "assert parity odd\n"
      "assert framing u6 -9\n"
      "assert class u6 7h -12e3\n"
      "assert ledger 9 -7 odd\n"
      "assert model 1 8\n"
      "assert gram [ a b ] cp 3\n"
      "assert stable 11 -7 odd 9 -7 even false\n";
  const Script s1 = parse(text);
  const Script s2 = parse(print(s1));
  CHECK(s2 == s1);
  CHECK(print(s2) == print(s1));
}

TEST_CASE("printing canonicalizes spelled-out signs and unit coefficients") {
  CHECK(print(parse("blowup -1 e strands u6 +3").statements[0]) ==
        "blowup -1 e strands u6 3");
  CHECK(print(parse("handle a class +h").statements[0]) == "handle a class h");
  CHECK(print(parse("handle a class -1e1").statements[0]) ==
        "handle a class -e1");
  CHECK(print(parse("ambient h +1").statements[0]) == "ambient h +1");
  CHECK(print(parse("slide a over b sign -1").statements[0]) ==
        "slide a over b sign -1");
  // Trailing comments are dropped; whole-line comments are kept verbatim.
  CHECK(print(parse("closed true   # glue the 4-handle").statements[0]) ==
        "closed true");
  CHECK(print(parse("  # indented note").statements[0]) == "  # indented note");
}

TEST_CASE("parse errors carry 1-based line and column") {
  CHECK_THROWS_WITH_AS(parse("bogus x"),
                       "line 1, column 1: expected statement keyword, found "
                       "'bogus'",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("slide a over b sign +2"),
                       "line 1, column 21: expected '+1' or '-1', found '+2'",
                       ParseError);
  try {
    parse("begin t\nhandle 5x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() == 8);
    CHECK(e.expected() == "label");
  }
  try {
    parse("assume \"abc");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 8);
    CHECK(e.expected() == "closing '\"'");
  }
  CHECK_THROWS_WITH_AS(parse("counts 1 2 3"),
                       "line 1, column 13: expected integer, found end of line",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("closed true extra"),
                       "line 1, column 13: expected end of line, found 'extra'",
                       ParseError);
  CHECK_THROWS_AS(parse("handle a links [ 1"), ParseError);
  CHECK_THROWS_AS(parse("rbd p 7 handles [ ]"), ParseError);
  CHECK_THROWS_WITH_AS(parse("assert b2 99999999999999999999999999"),
                       doctest::Contains("integer in range"), ParseError);
  // A reserved word can never start a class combination term.
  CHECK_THROWS_WITH_AS(parse("assert class a 3sigma"),
                       doctest::Contains("class term"), ParseError);
}

TEST_CASE("every keyword is reserved and rejected as a label") {
  const char* words[] = {
      "begin",  "ambient", "counts",  "closed",   "handle", "class",
      "framing", "links",  "blowup",  "strands",  "blowdown", "slide",
      "over",   "sign",    "lk",      "cancel",   "token",  "exchange",
      "as",     "once",    "rbd",     "p",        "handles", "label",
      "cork",   "link",    "twist",   "one",      "two",    "certify",
      "fact",   "assume",  "assert",  "b2",       "chi",    "sigma",
      "parity", "odd",     "even",    "ledger",   "model",  "gram",
      "cp",     "stable",  "true",    "false",
  };
  for (const char* w : words) {
    CAPTURE(w);
    CHECK_THROWS_AS(parse(std::string("handle ") + w), ParseError);
  }
  CHECK_NOTHROW(parse("handle b2x"));  // merely containing a keyword is fine
}

TEST_CASE("parse_file: missing path errors, script name defaults") {
  CHECK_THROWS_WITH_AS(parse_file("/nonexistent/x.kcs"),
                       doctest::Contains("BadArgument"), Error);
  const std::string tmp = "/tmp/kirbylab_test_noname.kcs";
  std::ofstream(tmp) << "closed false\n";
  CHECK(parse_file(tmp).name == tmp);
  std::ofstream(tmp) << "begin named\nclosed false\n";
  CHECK(parse_file(tmp).name == "named");
  std::filesystem::remove(tmp);
  CHECK(parse("begin zz").name == "zz");
  CHECK(parse("closed true").name.empty());
}

TEST_CASE("windows line endings parse") {
  const Script s = parse("begin t\r\nclosed true\r\n");
  REQUIRE(s.statements.size() == 2);
  CHECK(s.statements[1].payload == Payload{StClosed{true}});
}

TEST_CASE("replay: an engine error becomes a fail entry and replay continues") {
  const Report r = run(
      "begin t\n"
      "ambient h +1\n"
      "handle a class h\n"
      "slide a over zz sign +1\n"
      "assert b2 1\n");
  CHECK(r.failures == 1);
  CHECK_FALSE(r.ok());
  REQUIRE(r.entries.size() == 5);
  CHECK(r.entries[3].outcome == "fail");
  CHECK(r.entries[3].detail.find("UnknownHandle") != std::string::npos);
  CHECK(r.entries[4].outcome == "ok");  // state survived the failed slide
  CHECK(r.checks == 1);
  CHECK(r.statements == 5);
}

TEST_CASE("replay: builder statements validate their input") {
  SUBCASE("counts cannot contradict existing linking rows") {
    const Report r = run(
        "begin t\ncounts 1 1 0 0\nhandle a links [ 1 ]\ncounts 1 2 0 0\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail.find("different length") !=
          std::string::npos);
  }
  SUBCASE("duplicate handle labels") {
    const Report r = run("begin t\nhandle a\nhandle a\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail.find("duplicate handle label") !=
          std::string::npos);
  }
  SUBCASE("declared framing must match the class square") {
    const Report r = run("begin t\nambient h +1\nhandle a class h framing 3\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail.find("does not equal the class square") !=
          std::string::npos);
  }
  SUBCASE("a class needs an ambient basis") {
    const Report r = run("begin t\nhandle a class h\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail.find("no ambient basis") !=
          std::string::npos);
  }
  SUBCASE("a class may only use known generators") {
    const Report r = run("begin t\nambient h +1\nhandle a class zz2\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail.find("unknown ambient generator 'zz2'") !=
          std::string::npos);
  }
  SUBCASE("duplicate ambient generators") {
    const Report r = run("begin t\nambient h +1\nambient h -1\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail.find("LabelClash") != std::string::npos);
  }
  SUBCASE("linking row length must match the 1-handle count") {
    const Report r = run("begin t\ncounts 1 2 0 0\nhandle a links [ 1 ]\n");
    CHECK(r.failures == 1);
  }
}

TEST_CASE("replay: begin switches states and re-begin resets") {
  const Report r = run(
      "begin a\n"
      "ambient h +1\n"
      "counts 1 0 0 1\n"
      "closed true\n"
      "handle x class h\n"
      "assert b2 1\n"
      "assert sigma 1\n"
      "begin b\n"
      "ambient g -1\n"
      "counts 1 0 0 1\n"
      "closed true\n"
      "handle y class g\n"
      "assert sigma -1\n"
      "begin a\n"
      "assert b2 0\n");
  CHECK(r.failures == 0);
  CHECK(r.checks == 4);
  CHECK(r.script_name == "a");
  // The final state is the freshly reset "a".
  CHECK(r.b2 == Int{0});
  CHECK_FALSE(r.sigma.has_value());
}

TEST_CASE("replay: exchange keeps the ledger only with a once token") {
  // With the token and form data on record the ledger gains a hyperbolic
  // summand and stays classified.
  const Report good = run(
      "begin t\n"
      "ambient f +1\n"
      "counts 1 1 0 1\n"
      "closed true\n"
      "handle s0 class f links [ 0 ]\n"
      "handle t framing 0 links [ 1 ]\n"
      "exchange 0 as x once \"the 0-framed partner meets the belt circle "
      "once\"\n"
      "assert ledger 3 1 odd\n"
      "assert model 2 1\n");
  CHECK(good.failures == 0);
  CHECK(good.assumptions.size() == 1);
  CHECK(good.model == std::pair<Int, Int>(2, 1));

  // The token alone is not enough: with no form data before the exchange
  // there is nothing to carry over, and the assertion fails honestly.
  const Report bare = run(
      "begin t\n"
      "counts 1 1 0 1\n"
      "handle s0 framing 1 links [ 0 ]\n"
      "handle t framing 0 links [ 1 ]\n"
      "exchange 0 as x once \"token\"\n"
      "assert sigma 1\n");
  CHECK(bare.failures == 1);
  CHECK(bare.entries.back().detail.find("no form data") != std::string::npos);
}

TEST_CASE("replay: cork, twist, certify bookkeeping") {
  const std::string text =
      "begin t\n"
      "counts 1 2 0 0\n"
      "handle s framing -2 links [ 1 0 ]\n"
      "handle w framing 0 links [ 0 1 ]\n"
      "cork W2 link 1\n"
      "twist cork W2 one 1 two w\n"
      "certify fact \"external smooth-category input\"\n"
      "assert chi 1\n";
  const Report r = run(text);
  CHECK(r.failures == 0);
  // cork model 4 + certificate 6 + one assertion
  CHECK(r.checks == 11);
  // the model's standing assumption (listed once) + the imported fact
  REQUIRE(r.assumptions.size() == 2);
  CHECK(r.assumptions[0].find("simple connectivity of W2") !=
        std::string::npos);
  CHECK(r.assumptions[1] == "imported: external smooth-category input");
}

TEST_CASE("replay: twist and certify preconditions") {
  SUBCASE("unknown cork name") {
    const Report r = run("begin t\ntwist cork QQ one 0 two w\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail == "no cork named 'QQ'");
  }
  SUBCASE("certify before any twist") {
    const Report r = run("begin t\ncertify fact \"x\"\n");
    CHECK(r.failures == 1);
    CHECK(r.entries.back().detail == "no twist to certify");
  }
  SUBCASE("a failed twist does not arm certify") {
    const Report r = run(
        "begin t\n"
        "counts 1 1 0 0\n"
        "handle w framing 0 links [ 1 ]\n"
        "cork W2 link 1\n"
        "twist cork W2 one 5 two w\n"
        "certify\n");
    CHECK(r.failures == 2);
    CHECK(r.entries[4].detail.find("EmbeddingTokensInvalid") !=
          std::string::npos);
    CHECK(r.entries[5].detail == "no twist to certify");
  }
}

TEST_CASE("replay: entry indices skip comments, statement count does not") {
  const Report r = run("begin t\n# note\nassert chi 1\n");
  CHECK(r.statements == 2);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].index == 0);
  CHECK(r.entries[0].line == 1);
  CHECK(r.entries[1].index == 2);  // the comment still occupies index 1
  CHECK(r.entries[1].line == 3);
  CHECK(r.entries[1].text == "assert chi 1");
}

TEST_CASE("replay: empty script reports no ledger") {
  const Report r = replay(Script{});
  CHECK(r.statements == 0);
  CHECK(r.ok());
  CHECK_FALSE(r.b2.has_value());
  CHECK(r.text(true, false).find("ledger: none") != std::string::npos);
  CHECK(r.json().find("\"ledger\": null") != std::string::npos);
  const ReplayResult full = replay_full(Script{});
  CHECK_FALSE(full.final_state.has_value());
}

TEST_CASE("replay_full also hands back the final presentation") {
  const ReplayResult full =
      replay_full(parse("begin t\ncounts 1 0 0 0\nhandle a framing 5\n"));
  REQUIRE(full.final_state.has_value());
  REQUIRE(full.final_state->two.size() == 1);
  CHECK(full.final_state->two[0].framing == 5);
  CHECK(full.report.b2 == Int{1});
}

TEST_CASE("report text: quiet mode shows failures only, verbose shows all") {
  const Report r = run("begin t\nassert b2 7\nassert chi 0\n");
  CHECK(r.failures == 1);
  const std::string quiet = r.text(false, false);
  CHECK(quiet.find("assert b2 7") != std::string::npos);
  CHECK(quiet.find("assert chi 0") == std::string::npos);
  CHECK(quiet.find("summary: statements=3 checks=2 failures=1") !=
        std::string::npos);
  const std::string verbose = r.text(true, false);
  CHECK(verbose.find("begin t -- ok") != std::string::npos);
  CHECK(verbose.find("assert chi 0 -- ok") != std::string::npos);
  // Only the header line carries a timestamp.
  CHECK(r.text(true, true).rfind("# t replayed ", 0) == 0);
}

TEST_CASE("report json is byte-stable across replays") {
  const std::string dir = scripts_dir();
  REQUIRE(!dir.empty());
  const Script s = parse_file(dir + "/r8.kcs");
  const std::string a = replay(s).json();
  const std::string b = replay(s).json();
  CHECK(a == b);
  CHECK(a.find("\"ok\": true") != std::string::npos);
  CHECK(a.find('\t') == std::string::npos);
  // And the same for the human transcript without its header.
  CHECK(replay(s).text(true, false) == replay(s).text(true, false));
}

TEST_CASE("bundled scripts replay with the pinned headline numbers") {
  const std::string dir = scripts_dir();
  REQUIRE(!dir.empty());

  const Report cp = replay(parse_file(dir + "/cp2_14.kcs"));
  CHECK(cp.ok());
  CHECK(cp.b2 == Int{15});
  CHECK(cp.chi == Int{17});
  CHECK(cp.sigma == Int{-13});
  CHECK(cp.parity == lattice::Parity::Odd);

  const Report r8 = replay(parse_file(dir + "/r8.kcs"));
  CHECK(r8.ok());
  CHECK(r8.b2 == Int{9});
  CHECK(r8.chi == Int{11});
  CHECK(r8.sigma == Int{-7});
  CHECK(r8.model == std::pair<Int, Int>(1, 8));
  CHECK(r8.text(false, false).find("ledger: b2=9 sigma=-7 parity=odd") !=
        std::string::npos);

  const Report tw = replay(parse_file(dir + "/cork_twist.kcs"));
  CHECK(tw.ok());
  CHECK(!tw.assumptions.empty());

  const Report st = replay(parse_file(dir + "/stabilize.kcs"));
  CHECK(st.ok());
  CHECK(st.b2 == Int{11});
  CHECK(st.model == std::pair<Int, Int>(2, 9));
}
