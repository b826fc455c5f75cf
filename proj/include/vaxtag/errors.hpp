#pragma once

#include <stdexcept>
#include <string>

namespace vaxtag {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError -> 1, DataError -> 2, BackendError -> 3.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class BackendError : public std::runtime_error {
public:
    explicit BackendError(const std::string& msg) : std::runtime_error(msg) {}
};

// 429 from the completion endpoint; retried separately from hard 5xx failures.
class RateLimitError : public BackendError {
public:
    explicit RateLimitError(const std::string& msg) : BackendError(msg) {}
};

} // namespace vaxtag
