#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyberterrain {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad syntax, wrong field types, unknown tokens.
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input was well-formed but breaks a domain rule. Carries one entry per violation.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items) {
            if (!out.empty()) out += "; ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

/// Bad arguments or states detected while computing (invalid config, non-convergence, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace cyberterrain
