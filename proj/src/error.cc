#include "puzzte/error.h"

namespace puzzte {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kUnknownPredicate: return "UnknownPredicate";
    case ErrorCode::kUnknownIndividual: return "UnknownIndividual";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kInconsistentTheory: return "InconsistentTheory";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kGrammarSyntaxError: return "GrammarSyntaxError";
    case ErrorCode::kDuplicateStartSymbol: return "DuplicateStartSymbol";
    case ErrorCode::kNoParse: return "NoParse";
    case ErrorCode::kReductionBudgetExceeded: return "ReductionBudgetExceeded";
    case ErrorCode::kResidualLambda: return "ResidualLambda";
    case ErrorCode::kCategoryArityError: return "CategoryArityError";
    case ErrorCode::kAmbiguousClue: return "AmbiguousClue";
    case ErrorCode::kEmptyPuzzle: return "EmptyPuzzle";
    case ErrorCode::kMissingTemplate: return "MissingTemplate";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      position_(position),
      detail_(message) {}

}  // namespace puzzte
