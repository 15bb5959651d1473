#pragma once

#include <stdexcept>
#include <string>

namespace heatsim {

/// Invalid numeric input (non-positive, non-finite, out of range).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally invalid configuration (bad grid, mismatched lengths, bad keys).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
    ConfigError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    /// 1-based line number of the offending config line, or 0 if not tied to one.
    int line() const { return line_; }

private:
    int line_ = 0;
};

/// Unknown catalog key.
class LookupError : public std::runtime_error {
public:
    explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

/// Query that is well-formed but has no defined answer (e.g. steady profile
/// under two Neumann ends).
class UnsupportedQueryError : public std::runtime_error {
public:
    explicit UnsupportedQueryError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure, message carries the path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heatsim
