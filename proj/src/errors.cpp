#include "kirbylab/errors.hpp"

namespace kirby {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::BadP: return "BadP";
    case ErrorCode::CancelObstructed: return "CancelObstructed";
    case ErrorCode::DefiniteInput: return "DefiniteInput";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::DanglingOneHandles: return "DanglingOneHandles";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EmbeddingInvalid: return "EmbeddingInvalid";
    case ErrorCode::EmbeddingTokensInvalid: return "EmbeddingTokensInvalid";
    case ErrorCode::LabelClash: return "LabelClash";
    case ErrorCode::LinkedHandle: return "LinkedHandle";
    case ErrorCode::MissingAssumptionToken: return "MissingAssumptionToken";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::MixedRepresentation: return "MixedRepresentation";
    case ErrorCode::NoAmbient: return "NoAmbient";
    case ErrorCode::NonUnitLinking: return "NonUnitLinking";
    case ErrorCode::NoSuchOneHandle: return "NoSuchOneHandle";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotExceptional: return "NotExceptional";
    case ErrorCode::NotGenerator: return "NotGenerator";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::SelfSlide: return "SelfSlide";
    case ErrorCode::UnknownHandle: return "UnknownHandle";
  }
  return "Error";
}

}  // namespace kirby
