#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace obstrukt {

enum class ErrorKind {
    InvalidInput,
    NotAssociative,
    NoIdentity,
    NotInvertible,
    UnsupportedParameter,
    NotAHomomorphism,
    GeneratorsDontGenerate,
    NotNormal,
    CodomainMismatch,
    PhiNotSurjective,
    SearchBudgetExceeded,
    BudgetExceeded,
    GroupMismatch,
    NotACocycle,
    NotEquivariant,
    TypeMismatch,
    ExtensionMismatch,
    NotInKernel,
    KernelNotAbelian,
    ProblemMismatch,
    NoSolution,
    Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// Internal consistency check that stays on in release builds.
inline void ensure(bool cond, const char* what) {
    if (!cond)
        throw Error(ErrorKind::Internal, what);
}

} // namespace obstrukt
