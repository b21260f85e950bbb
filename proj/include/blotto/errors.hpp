#pragma once

#include <stdexcept>
#include <string>

namespace blotto {

// Domain error with a stable machine-readable name (used by the CLI for
// diagnostics and exit-code mapping).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define BLOTTO_ERROR(Name)                              \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& msg)               \
        : Error(#Name, msg) {}                          \
  }

BLOTTO_ERROR(EmptyItem);
BLOTTO_ERROR(InvalidClass);
BLOTTO_ERROR(InvalidArrangement);
BLOTTO_ERROR(SearchTooLarge);
BLOTTO_ERROR(PreconditionViolated);
BLOTTO_ERROR(ConstructionUnstable);
BLOTTO_ERROR(OutcomeMismatch);
BLOTTO_ERROR(DegenerateItem);
BLOTTO_ERROR(ParseError);

#undef BLOTTO_ERROR

}  // namespace blotto
