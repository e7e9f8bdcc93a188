#pragma once

#include <stdexcept>
#include <string>

namespace patecon {

enum class ErrorCode {
  MalformedRow,
  UnknownColumn,
  DuplicatePatentId,
  EmptyAuthority,
  InvertedWindow,
  NotARobot,
  NegativeValue,
  WrongTransform,
  TooShort,
  YearMismatch,
  RankDeficient,
  DegenerateSeries,
  ZeroLongRunVariance,
  NonConvergence,
  NoIntegrationOrder,
  InvalidSpec,
  UnsupportedCombination,
  ValidationError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace patecon
