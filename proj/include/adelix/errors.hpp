#pragma once

#include <stdexcept>
#include <string>

namespace adelix {

// Base class; every library failure derives from it so the CLI can map
// error kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ADELIX_ERROR(Name)                                      \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

ADELIX_ERROR(PrecisionExhausted)
ADELIX_ERROR(NotAUnit)
ADELIX_ERROR(NotCoprime)
ADELIX_ERROR(NotSquarefreeModP)
ADELIX_ERROR(NotDetOne)
ADELIX_ERROR(WindowUnstable)
ADELIX_ERROR(SharedComponent)
ADELIX_ERROR(DoesNotSplit)
ADELIX_ERROR(NotInvertible)
ADELIX_ERROR(ParseError)
ADELIX_ERROR(DomainError)

#undef ADELIX_ERROR

}  // namespace adelix
