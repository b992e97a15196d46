#pragma once

#include <stdexcept>
#include <string>

namespace qifrow {

/// Invalid construction, bad dimensions, or violated preconditions.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Loss-mode leakage or capacity whose denominator (posterior risk) is zero.
/// Kept as a distinct error instead of returning infinity so that numeric
/// comparisons on results stay total.
class InfiniteLeakageError : public std::runtime_error {
public:
    explicit InfiniteLeakageError(const std::string& what) : std::runtime_error(what) {}
};

/// File parsing or serialization failure; the message carries location info.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qifrow
