#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holodyn {

enum class ErrorKind {
    InvalidArgument,
    InvalidMap,
    DegenerateImage,
    NotPeriodic,
    ChartSingularity,
    PrecisionExhausted,
    SolverDiverged,
    AtomBudgetExceeded,
    ExceptionalStart,
    EmptyMeasure,
    NoBranchSurvived,
    ContinuationAmbiguous,
    SpaceMismatch,
    ProjectionFailure,
    DegeneratePeriod,
    NotDominant,
    DerivativeSingular,
    Config,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that the driver can
// map it onto a process exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Process exit statuses used by the command line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitAcceptance = 5;

int exit_status(ErrorKind kind);

}  // namespace holodyn
