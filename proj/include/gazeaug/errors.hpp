#pragma once

#include <stdexcept>
#include <string>

namespace gazeaug {

// Bad or inconsistent input data (schema violations, invariant breaches).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed serialized input; carries the 1-based line/row it was found on.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& msg, long line, long column = 0)
        : ValidationError(format(msg, line, column)), line_(line), column_(column) {}

    long line() const { return line_; }
    long column() const { return column_; }

private:
    static std::string format(const std::string& msg, long line, long column) {
        std::string s = msg + " (line " + std::to_string(line);
        if (column > 0) {
            s += ", column " + std::to_string(column);
        }
        return s + ")";
    }

    long line_;
    long column_;
};

// Training produced a non-finite loss or gradient.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gazeaug
