#pragma once

#include <stdexcept>
#include <string>

namespace polytree {

enum class ErrorKind {
    LengthMismatch,
    TooFewSamples,
    NonFinite,
    InvalidPermutation,
    DimensionMismatch,
    InvalidModel,
};

class Error : public std::invalid_argument {
public:
    Error(ErrorKind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace polytree
