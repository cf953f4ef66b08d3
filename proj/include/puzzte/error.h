#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace puzzte {

enum class ErrorCode {
  kUnboundVariable,
  kUnknownPredicate,
  kUnknownIndividual,
  kSyntaxError,
  kInconsistentTheory,
  kTruncated,
  kGrammarSyntaxError,
  kDuplicateStartSymbol,
  kNoParse,
  kReductionBudgetExceeded,
  kResidualLambda,
  kCategoryArityError,
  kAmbiguousClue,
  kEmptyPuzzle,
  kMissingTemplate,
  kIndexOutOfRange,
  kInvalidArgument,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `position` carries a 1-based line
// number (grammar/FOL files) or sentence number (puzzles) when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
  std::string detail_;
};

}  // namespace puzzte
