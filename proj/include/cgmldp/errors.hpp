#pragma once

#include <stdexcept>
#include <string>

namespace cgmldp {

/// Invalid run configuration or malformed input file (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation (CLI exit code 2).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Two routes that must agree disagreed, or an internal invariant broke
/// (CLI exit code 3).
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace cgmldp
