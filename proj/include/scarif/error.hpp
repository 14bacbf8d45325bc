#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scarif {

// Base for every error raised by the library. The CLI maps these onto exit
// codes; ModelOutOfRange (model.hpp) is the only one that is not exit 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class MissingCalibration : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class AugmentationError : public Error {
public:
    using Error::Error;
};

class CapacityExceeded : public Error {
public:
    using Error::Error;
};

class MissingRegion : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed CSV input. `row` is 1-based and counts the header as row 1.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::string column, const std::string& what)
        : Error("row " + std::to_string(row) + (column.empty() ? "" : ", column '" + column + "'") + ": " + what),
          row_(row), column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

/// Least-squares design without full column rank. Dependent columns are
/// listed lowest index first.
class DegenerateFit : public Error {
public:
    DegenerateFit(std::vector<std::string> columns, const std::string& what)
        : Error(what), columns_(std::move(columns)) {}

    const std::vector<std::string>& dependent_columns() const noexcept { return columns_; }

private:
    std::vector<std::string> columns_;
};

}  // namespace scarif
