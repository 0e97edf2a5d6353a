#pragma once

#include <stdexcept>
#include <string>

namespace zcssc {

// Invalid argument to a library call (bad length, out-of-range index, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested payload does not fit the dictionary.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A decoder produced a selection outside the message index space.
class DecodeInvalid : public std::runtime_error {
public:
    explicit DecodeInvalid(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent simulator configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zcssc
