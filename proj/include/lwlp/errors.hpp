#pragma once

#include <stdexcept>
#include <string>

namespace lwlp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumOverflow : Error { using Error::Error; };
struct IntervalOutOfWindow : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NonpositiveWeight : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct NonDyadicLength : Error { using Error::Error; };
struct WindowOverflow : Error { using Error::Error; };
struct CoverageGap : Error { using Error::Error; };
struct SignMixed : Error { using Error::Error; };
struct PlanMismatch : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct UnknownCatalogEntry : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace lwlp
