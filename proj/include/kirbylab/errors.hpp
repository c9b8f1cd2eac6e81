#pragma once

#include <stdexcept>
#include <string>

namespace kirby {

// Hard precondition violations raised by engine operations.  Replay catches
// these and records checked-fail entries; direct API users see exceptions.
enum class ErrorCode {
  ArithmeticOverflow,
  BadArgument,
  BadP,
  CancelObstructed,
  DefiniteInput,
  DegenerateInput,
  DegenerateSpan,
  DanglingOneHandles,
  DuplicateLabel,
  EmbeddingInvalid,
  EmbeddingTokensInvalid,
  LabelClash,
  LinkedHandle,
  MissingAssumptionToken,
  MissingClass,
  MixedRepresentation,
  NoAmbient,
  NonUnitLinking,
  NoSuchOneHandle,
  NotClosed,
  NotExceptional,
  NotGenerator,
  ParityMismatch,
  SelfSlide,
  UnknownHandle,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Script text that does not lex/parse.  Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& expected,
             const std::string& found)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": expected " + expected +
                           ", found " + found),
        line_(line), col_(col), expected_(expected) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

}  // namespace kirby
