#pragma once

#include <stdexcept>
#include <string>

namespace eeftc {

enum class ErrorCode {
  EmptyClass,
  VocabularyTooSmall,
  DegenerateClass,
  ZeroProbabilityCell,
  InvalidK,
  DegenerateReduction,
  NonpositiveCell,
  TooLarge,
  EmptyTestSplit,
  InvalidMode,
  InvalidArgument,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this type; `code()` identifies
/// the failure class, `what()` carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The context without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::VocabularyTooSmall: return "VocabularyTooSmall";
    case ErrorCode::DegenerateClass: return "DegenerateClass";
    case ErrorCode::ZeroProbabilityCell: return "ZeroProbabilityCell";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::DegenerateReduction: return "DegenerateReduction";
    case ErrorCode::NonpositiveCell: return "NonpositiveCell";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyTestSplit: return "EmptyTestSplit";
    case ErrorCode::InvalidMode: return "InvalidMode";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace eeftc
