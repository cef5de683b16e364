// errors.hpp: exception types shared by every module.
//
// The C API maps each kind onto a status code; the CLI maps status codes
// onto process exit codes (config/domain/geometry -> 2, numerical -> 3).

#pragma once

#include <stdexcept>
#include <string>

namespace plasmon {

enum class ErrorKind {
    domain,     // argument outside the mathematical domain of an operation
    geometry,   // emitter/detector placement inconsistent with the sphere
    config,     // configuration document or override rejected
    numerical,  // a computation failed or produced an unphysical value
    io,         // file-system failure while writing outputs
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};
struct GeometryError : Error {
    explicit GeometryError(const std::string& what) : Error(ErrorKind::geometry, what) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};
struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

} // namespace plasmon
