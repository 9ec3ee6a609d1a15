#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cogatr/types.hpp"

namespace cogatr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

/// Zero-power input where a signal is required (undefined SNR, empty feature).
class DegenerateSignal : public Error {
public:
    using Error::Error;
};

/// Training left one or more (class, sector) cells without samples.
class EmptyCell : public Error {
public:
    explicit EmptyCell(std::vector<std::pair<TargetClass, int>> cells);

    const std::vector<std::pair<TargetClass, int>>& cells() const noexcept { return cells_; }

private:
    std::vector<std::pair<TargetClass, int>> cells_;
};

class MixedDomain : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class MissingBank : public Error {
public:
    using Error::Error;
};

class NoVotes : public Error {
public:
    using Error::Error;
};

/// Malformed dataset, bank or config file contents.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration value; `key()` names the offending config key.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace cogatr
