#pragma once

#include <stdexcept>
#include <string>

namespace rsteg {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unsupported input data (bad PGM header, progressive JPEG, ...).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

// Message does not fit the available cover capacity.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// Syndrome coding could not satisfy the requested message (e.g. wet cover).
class EmbedError : public Error {
public:
    explicit EmbedError(const std::string& msg) : Error(msg) {}
};

} // namespace rsteg
