#pragma once

#include <stdexcept>
#include <string>

namespace antcloud {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidProfileError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Argument outside its mathematical domain (e.g. utilization > 1).
class DomainError : public Error {
public:
    using Error::Error;
};

class PolicyViolationError : public Error {
public:
    using Error::Error;
};

class DegenerateVmError : public Error {
public:
    using Error::Error;
};

/// Event-queue corruption: time regression, negative billing interval.
class EngineError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ComparisonError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Scenario problem; `field` names the offending key path, `line`/`column`
/// are set for syntax errors.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what, int line = 0, int column = 0)
        : Error(format(field, what, line, column)), field_(std::move(field)), line_(line), column_(column) {}

    const std::string& field() const { return field_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& field, const std::string& what, int line, int column) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
        if (!field.empty()) out += field + ": ";
        return out + what;
    }

    std::string field_;
    int line_ = 0;
    int column_ = 0;
};

} // namespace antcloud
