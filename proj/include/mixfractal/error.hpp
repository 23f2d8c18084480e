#pragma once

#include <stdexcept>
#include <string>

namespace mixfractal {

/// Base of every error raised by the library. `code()` is a short stable
/// token used as the machine-parsable prefix of CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define MIXFRACTAL_DEFINE_ERROR(Name, token)                           \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(token, what) {}     \
  }

MIXFRACTAL_DEFINE_ERROR(DomainError, "domain");
MIXFRACTAL_DEFINE_ERROR(SynthesisError, "synthesis");
MIXFRACTAL_DEFINE_ERROR(KindError, "kind");
MIXFRACTAL_DEFINE_ERROR(SizeError, "size");
MIXFRACTAL_DEFINE_ERROR(InsufficientDataError, "insufficient-data");
MIXFRACTAL_DEFINE_ERROR(UnsupportedOrderError, "unsupported-order");
MIXFRACTAL_DEFINE_ERROR(NoCrossoverError, "no-crossover");
MIXFRACTAL_DEFINE_ERROR(OrderingError, "ordering");
MIXFRACTAL_DEFINE_ERROR(ParseError, "parse");
MIXFRACTAL_DEFINE_ERROR(SpacingError, "spacing");
MIXFRACTAL_DEFINE_ERROR(EmptyInputError, "empty-input");
MIXFRACTAL_DEFINE_ERROR(IoError, "io");
MIXFRACTAL_DEFINE_ERROR(ConfigError, "config");

#undef MIXFRACTAL_DEFINE_ERROR

}  // namespace mixfractal
