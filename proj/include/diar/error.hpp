#pragma once

#include <stdexcept>
#include <string>

namespace diar {

// Base class for all errors caused by user input (bad files, bad config,
// infeasible requests). The CLI maps these to exit code 1; anything else
// escaping to main is treated as an internal invariant violation (exit 2).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line_number)
        : Error("line " + std::to_string(line_number) + ": " + message),
          line_number_(line_number) {}

    int line_number() const { return line_number_; }

private:
    int line_number_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace diar
