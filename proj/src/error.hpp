#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

enum class ErrorKind {
    InvalidArgument,
    DomainError,
    PoleOnPath,
    NoConvergence,
    ImaginaryResidue,
    NoCrossing,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const char* what) {
    if (!ok) throw Error(kind, what);
}

}  // namespace casimir
