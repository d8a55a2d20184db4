#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coverbound {

// Input rejected by a validation rule (malformed geometry, out-of-range
// parameter, empty ground set, ...).
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError
{
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A configured resource cap (memory, enumeration size) would be exceeded.
class ResourceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace coverbound
