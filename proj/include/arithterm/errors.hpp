#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arithterm {

enum class ErrorKind {
    BitBudgetExceeded,
    ArityMismatch,
    ExactDivisionViolation,
    SyntaxError,
    UnknownOperator,
    DomainError,
    EnumerationBudgetExceeded,
    AssertionFailure,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::BitBudgetExceeded: return "BitBudgetExceeded";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ExactDivisionViolation: return "ExactDivisionViolation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::AssertionFailure: return "AssertionFailure";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct BitBudgetExceeded : Error {
    explicit BitBudgetExceeded(const std::string& m) : Error(ErrorKind::BitBudgetExceeded, m) {}
};
struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& m) : Error(ErrorKind::ArityMismatch, m) {}
};
struct ExactDivisionViolation : Error {
    explicit ExactDivisionViolation(const std::string& m) : Error(ErrorKind::ExactDivisionViolation, m) {}
};
struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& m)
        : Error(ErrorKind::SyntaxError, "at " + std::to_string(pos) + ": " + m), pos(pos) {}
    std::size_t pos;
};
struct UnknownOperator : Error {
    UnknownOperator(std::size_t pos, const std::string& op)
        : Error(ErrorKind::UnknownOperator, "'" + op + "' at " + std::to_string(pos)), pos(pos) {}
    std::size_t pos;
};
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorKind::DomainError, m) {}
};
struct EnumerationBudgetExceeded : Error {
    explicit EnumerationBudgetExceeded(const std::string& m) : Error(ErrorKind::EnumerationBudgetExceeded, m) {}
};
struct AssertionFailure : Error {
    explicit AssertionFailure(const std::string& m) : Error(ErrorKind::AssertionFailure, m) {}
};

}  // namespace arithterm
