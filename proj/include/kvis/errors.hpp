#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kvis {

// Error taxonomy mapped to CLI exit code 2. The what() string ends up in the
// error JSON, so messages should be self-contained.
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error("parameter", m) {}
};
struct StructuralError : Error {
    explicit StructuralError(const std::string& m) : Error("structural", m) {}
};
struct CapacityError : Error {
    explicit CapacityError(const std::string& m) : Error("capacity", m) {}
};
struct ContractError : Error {
    explicit ContractError(const std::string& m) : Error("contract", m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error("io", m) {}
};

} // namespace kvis
