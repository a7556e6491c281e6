#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace exwsd {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance file. Carries the 1-based line where parsing stopped.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& detail, const std::string& source = {})
        : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + detail),
          line_(line),
          detail_(detail) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class DuplicateIdError : public Error {
public:
    using Error::Error;
};

/// Header word/POS disagrees with the target token or with earlier records.
class TargetMismatchError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class EmptyTraining : public Error {
public:
    EmptyTraining() : Error("training set is empty") {}
    using Error::Error;
};

class SchemaMismatch : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class VersionMismatch : public Error {
public:
    using Error::Error;
};

class CorruptModel : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Invalid evaluation or schema parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace exwsd
