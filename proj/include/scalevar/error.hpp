#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalevar {

/// Invalid input or violated precondition (bad parameters, domain exits,
/// schema violations). The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Syntax or name-resolution error in expression text. `column` is 1-based.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t column)
        : ValidationError("column " + std::to_string(column) + ": " + what), column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Numerical failure at run time: non-finite values, vanishing wavefunction,
/// division by zero during evaluation, divergence. CLI exit status 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace scalevar
