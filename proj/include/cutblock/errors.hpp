#pragma once
#include <stdexcept>

namespace cutblock {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrimePower : Error { using Error::Error; };
struct FieldTooLarge : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct NotSubfield : Error { using Error::Error; };
struct DegenerateLine : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EnumerationTooLarge : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct NotHiggledyPiggledy : Error { using Error::Error; };
struct NotMinimal : Error { using Error::Error; };
struct NotMinimalCode : Error { using Error::Error; };
struct RegimeViolation : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace cutblock
