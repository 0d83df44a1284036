#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bcc {

/// Malformed input file or inconsistent flags. Carries 1-based line/column
/// positions when they are known (0 = not applicable).
class InputError : public std::runtime_error {
public:
    InputError(std::string message, std::uint64_t line = 0, std::uint64_t column = 0)
        : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

    std::uint64_t line() const { return line_; }
    std::uint64_t column() const { return column_; }

private:
    static std::string format(const std::string& message, std::uint64_t line,
                              std::uint64_t column) {
        if (line == 0) return message;
        std::string s = message + " (line " + std::to_string(line);
        if (column > 0) s += ", column " + std::to_string(column);
        s += ")";
        return s;
    }

    std::uint64_t line_;
    std::uint64_t column_;
};

/// An enumeration guard or resource budget refused to start/finish the work.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace bcc
