#pragma once

#include <stdexcept>
#include <string>

namespace mss {

enum class ErrorKind {
    NoInverse,
    ChartEscape,
    NonOrientationPreserving,
    NonHyperbolicOrbit,
    NotASaddle,
    OutsideN,
    ChartTooLarge,
    DegenerateEigenframe,
    TooShort,
    TangencyDetected,
    CycleDetected,
    NotTrapping,
    NotInBasin,
    InvalidArgument,
    ParseError,
    UnknownMap,
    IoError,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    // Errors meaning the map under study violates the Morse-Smale assumptions.
    bool out_of_scope() const {
        return kind_ == ErrorKind::NonHyperbolicOrbit || kind_ == ErrorKind::TangencyDetected ||
               kind_ == ErrorKind::CycleDetected || kind_ == ErrorKind::NonOrientationPreserving ||
               kind_ == ErrorKind::ChartEscape;
    }

private:
    ErrorKind kind_;
};

}  // namespace mss
