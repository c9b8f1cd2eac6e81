#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kirbylab/handles.hpp"

namespace kirby::script {

// One signed term of a class combination, e.g. "7h", "-3e1", "e2".
struct ComboTerm {
  Int coeff = 1;
  std::string label;
  bool operator==(const ComboTerm&) const = default;
};
using Combo = std::vector<ComboTerm>;

// ---- statement payloads ----------------------------------------------

struct StBegin {
  std::string name;
  bool operator==(const StBegin&) const = default;
};
struct StAmbient {
  std::string label;
  Int square = 1;
  bool operator==(const StAmbient&) const = default;
};
struct StCounts {
  Int zero = 0, one = 0, three = 0, four = 0;
  bool operator==(const StCounts&) const = default;
};
struct StClosed {
  bool value = false;
  bool operator==(const StClosed&) const = default;
};
struct StHandle {
  std::string label;
  std::optional<Combo> cls;
  std::optional<Int> framing;
  std::optional<std::vector<Int>> links;
  bool operator==(const StHandle&) const = default;
};
struct StBlowup {
  Int sign = -1;
  std::string label;
  std::vector<std::pair<std::string, Int>> strands;
  bool operator==(const StBlowup&) const = default;
};
struct StBlowdown {
  std::string label;
  bool operator==(const StBlowdown&) const = default;
};
struct StSlide {
  std::string moving, over;
  Int sign = 1;
  std::optional<Int> lk;
  bool operator==(const StSlide&) const = default;
};
struct StCancel {
  int one_index = 0;
  std::string two_label;
  std::string token;
  bool operator==(const StCancel&) const = default;
};
struct StExchange {
  int one_index = 0;
  std::optional<std::string> as_label;
  std::optional<std::string> once_token;
  bool operator==(const StExchange&) const = default;
};
struct StRbd {
  Int p = 0;
  std::vector<std::string> labels;
  std::optional<std::string> bp_label;
  bool operator==(const StRbd&) const = default;
};
struct StCork {
  std::string name;
  Int link = 1;
  bool operator==(const StCork&) const = default;
};
struct StTwist {
  std::string cork_name;
  int one_index = 0;
  std::string two_label;
  bool operator==(const StTwist&) const = default;
};
struct StCertify {
  std::vector<std::string> facts;
  bool operator==(const StCertify&) const = default;
};
struct StAssume {
  std::string text;
  bool operator==(const StAssume&) const = default;
};

enum class AssertKind {
  B2,
  Chi,
  Sigma,
  Parity,
  Framing,
  Class,
  Ledger,
  Model,
  Gram,
  Stable,
};

struct StAssert {
  AssertKind kind = AssertKind::B2;
  Int a = 0, b = 0;            // b2/chi/sigma value; framing value; model m,n;
                               // ledger rank,sig; gram p (in a)
  lattice::Parity parity = lattice::Parity::Odd;  // parity / ledger parity
  std::string label;                              // framing / class handle
  Combo combo;                                    // class combination
  std::vector<std::string> labels;                // gram chain labels
  Int r1 = 0, s1 = 0, r2 = 0, s2 = 0;             // stable: two triples
  lattice::Parity p1 = lattice::Parity::Odd;
  lattice::Parity p2 = lattice::Parity::Odd;
  bool expected = false;                          // stable: expected verdict
  bool operator==(const StAssert&) const = default;
};

struct StComment {
  std::string text;  // raw line, '#' included
  bool operator==(const StComment&) const = default;
};
struct StBlank {
  bool operator==(const StBlank&) const = default;
};

using Payload =
    std::variant<StBegin, StAmbient, StCounts, StClosed, StHandle, StBlowup,
                 StBlowdown, StSlide, StCancel, StExchange, StRbd, StCork,
                 StTwist, StCertify, StAssume, StAssert, StComment, StBlank>;

// Source position is carried for diagnostics but ignored by equality, so a
// parse -> print -> parse round trip compares equal.
struct Statement {
  int line = 0;
  Payload payload;
  bool operator==(const Statement& o) const { return payload == o.payload; }
};

struct Script {
  std::string name;  // from "begin" of the first state, or empty
  std::vector<Statement> statements;
  bool operator==(const Script& o) const {
    return statements == o.statements;
  }
};

// ---- parse / print ----------------------------------------------------

// ParseError (1-based line/column) on malformed text.
Script parse(const std::string& text);
// Error(BadArgument) when the file cannot be read.
Script parse_file(const std::string& path);

std::string print(const Statement& st);
std::string print(const Script& s);  // one statement per line

// ---- replay -----------------------------------------------------------

struct Entry {
  int index = 0;  // statement index within the script
  int line = 0;
  std::string text;     // canonical statement text
  std::string outcome;  // "ok" or "fail"
  std::string detail;
  bool operator==(const Entry&) const = default;
};

struct Report {
  std::string script_name;
  int statements = 0;
  std::vector<Entry> entries;
  std::vector<std::string> assumptions;
  int checks = 0;
  int failures = 0;
  std::optional<Int> b2, chi, sigma;
  std::optional<lattice::Parity> parity;
  std::optional<std::pair<Int, Int>> model;

  bool ok() const { return failures == 0; }
  // Human-readable transcript; the header line (the only part carrying a
  // timestamp) can be suppressed for byte-stable output.
  std::string text(bool verbose, bool header) const;
  // Machine-readable form: sorted keys, fixed indentation, no timestamp.
  std::string json() const;
};

// Runs every statement in order.  Engine errors and failed assertions become
// "fail" entries (replay continues on the last good state); they never
// propagate as exceptions.
Report replay(const Script& s);

// Full report plus the presentation that was current when the last
// statement ran, for callers that want to keep computing.
struct ReplayResult {
  Report report;
  std::optional<handles::Presentation> final_state;
};
ReplayResult replay_full(const Script& s);

}  // namespace kirby::script
