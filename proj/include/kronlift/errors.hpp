#pragma once

#include <stdexcept>
#include <string>

namespace kronlift {

/// Error categories surfaced by the library. Each maps onto a stable
/// machine-readable code used by the CLI.
enum class ErrorKind {
    Dimension,
    Domain,
    Capacity,
    Numerical,
    Singularity,
    DegenerateLift,
    Parse,
    Io,
    Usage,
};

const char* error_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    const char* code() const noexcept { return error_code(kind_); }

private:
    ErrorKind kind_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorKind::Dimension, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct CapacityError : Error {
    explicit CapacityError(const std::string& w) : Error(ErrorKind::Capacity, w) {}
};
struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};
struct SingularityError : Error {
    explicit SingularityError(const std::string& w) : Error(ErrorKind::Singularity, w) {}
};
struct DegenerateLiftError : Error {
    explicit DegenerateLiftError(const std::string& w) : Error(ErrorKind::DegenerateLift, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};
struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error(ErrorKind::Usage, w) {}
};

} // namespace kronlift
