#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphan {

enum class ErrorKind {
  InvalidInput,
  NotQGorenstein,
  NotComplete,
  NotFano,
  NotAmpleCondition1,
  NotAmpleCondition2,
  DegenerateQ,
  UnboundedBody,
  OriginNotInterior,
  NotFullDimensional,
  NotLatticePolytope,
  InvalidColoredFan,
  IncompleteCoefficients,
  PreconditionViolated,
  RankTooLarge,
  InternalInvariant,
};

std::string_view errorKindName(ErrorKind kind);

/// Every failure raised by the library carries a kind so that callers (the CLI
/// in particular) can map it onto a report entry or an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace sphan
