#pragma once

#include <stdexcept>
#include <string>

namespace skellab {

enum class Err {
    Syntax,
    IllTyped,
    NotAVariable,
    TypeMismatch,
    Capture,
    DomainError,
    BudgetExceeded,
    NotNumeral,
    PreconditionFailed,
};

class Error : public std::runtime_error {
public:
    Error(Err code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

} // namespace skellab
