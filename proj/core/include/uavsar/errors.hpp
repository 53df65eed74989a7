#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uavsar {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A row of an input file could not be parsed or violates a track invariant.
/// `row` is 1-based and counts the header as row 1.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::string column, std::string reason)
        : Error("row " + std::to_string(row) + (column.empty() ? "" : ", column '" + column + "'") +
                ": " + reason),
          row_(row),
          column_(std::move(column)),
          reason_(std::move(reason)) {}

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] const std::string& column() const noexcept { return column_; }
    [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t row_;
    std::string column_;
    std::string reason_;
};

class EmptyTrack : public Error {
public:
    using Error::Error;
};

class InsufficientHistory : public Error {
public:
    using Error::Error;
};

class EmptySlice : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace uavsar
