#pragma once

#include <stdexcept>
#include <string>

namespace ratseries {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Star requested on an element outside the star domain D(S).
struct NotInStarDomain : Error {
  explicit NotInStarDomain(const std::string& what) : Error(what) {}
};

// Operands belong to different semirings.
struct SemiringMismatch : Error {
  explicit SemiringMismatch(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct AlphabetMismatch : Error {
  explicit AlphabetMismatch(const std::string& what) : Error(what) {}
};

// Coefficient queried beyond the truncation bound; this signals the
// truncation window, not a mathematical zero.
struct OutOfWindow : Error {
  explicit OutOfWindow(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        pos(position) {}
  std::size_t pos;
};

struct NotAMorphismExtension : Error {
  explicit NotAMorphismExtension(const std::string& what) : Error(what) {}
};

struct PremiseViolated : Error {
  explicit PremiseViolated(const std::string& what) : Error(what) {}
};

struct SearchBudgetExceeded : Error {
  explicit SearchBudgetExceeded(const std::string& what) : Error(what) {}
};

}  // namespace ratseries
