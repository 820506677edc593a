#pragma once

#include <stdexcept>
#include <string>

namespace coordscan {

// Bad flag, config-file or parameter value. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or unusable input data. The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Mean of an empty edge set was requested. Callers must guard.
class UndefinedMeanError : public std::logic_error {
public:
    UndefinedMeanError() : std::logic_error("mean of empty edge set is undefined") {}
};

} // namespace coordscan
