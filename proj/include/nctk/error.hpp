#pragma once

#include <stdexcept>
#include <string>

namespace nctk {

enum class ErrorCode {
    ParseError,
    DimensionMismatch,
    InvalidArgument,
    IllDefinedInducedMap,
    NotNilpotent,
    RelativeMonodromyNonexistent,
    FiltrationNotPreserved,
    NonCommutingOperators,
    PairingDegenerate,
    MissingHodgeFiltration,
    Internal,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string module, const std::string& message)
        : std::runtime_error(message), code_(code), module_(std::move(module)) {}

    ErrorCode code() const { return code_; }
    const std::string& module() const { return module_; }

private:
    ErrorCode code_;
    std::string module_;
};

}  // namespace nctk
