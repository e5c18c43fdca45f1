#pragma once

#include <stdexcept>
#include <string>

namespace georep {

// Base error carrying a stable kind string ("Validation", "ZeroVariance", ...)
// used for CLI messages and exit-code mapping: every Error is an
// input/validation failure and exits 2; anything else is internal and exits 1.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GEOREP_DEFINE_ERROR(Name, Kind)                                      \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& msg) : Error(Kind, msg) {}          \
    }

GEOREP_DEFINE_ERROR(ParseError, "Parse");
GEOREP_DEFINE_ERROR(ValidationError, "Validation");
GEOREP_DEFINE_ERROR(DomainError, "Domain");
GEOREP_DEFINE_ERROR(UnknownSceneError, "UnknownScene");
GEOREP_DEFINE_ERROR(ConfigError, "Config");
GEOREP_DEFINE_ERROR(ZeroVarianceError, "ZeroVariance");
GEOREP_DEFINE_ERROR(ZeroDeviationError, "ZeroDeviation");
GEOREP_DEFINE_ERROR(InsufficientDataError, "InsufficientData");
GEOREP_DEFINE_ERROR(DegenerateError, "Degenerate");
GEOREP_DEFINE_ERROR(LengthMismatchError, "LengthMismatch");

#undef GEOREP_DEFINE_ERROR

}  // namespace georep
