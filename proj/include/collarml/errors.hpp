#pragma once

#include <stdexcept>
#include <string>

namespace collarml {

// Bad or malformed input data (CSV rows, timestamps, annotation ranges).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller violated an operation contract (bad spec values, shape mismatches).
class ContractError : public std::invalid_argument {
public:
    explicit ContractError(const std::string& msg) : std::invalid_argument(msg) {}
};

// An internal invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace collarml
