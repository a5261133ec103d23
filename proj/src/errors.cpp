#include "holodyn/errors.hpp"

namespace holodyn {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidMap: return "InvalidMap";
        case ErrorKind::DegenerateImage: return "DegenerateImage";
        case ErrorKind::NotPeriodic: return "NotPeriodic";
        case ErrorKind::ChartSingularity: return "ChartSingularity";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::SolverDiverged: return "SolverDiverged";
        case ErrorKind::AtomBudgetExceeded: return "AtomBudgetExceeded";
        case ErrorKind::ExceptionalStart: return "ExceptionalStart";
        case ErrorKind::EmptyMeasure: return "EmptyMeasure";
        case ErrorKind::NoBranchSurvived: return "NoBranchSurvived";
        case ErrorKind::ContinuationAmbiguous: return "ContinuationAmbiguous";
        case ErrorKind::SpaceMismatch: return "SpaceMismatch";
        case ErrorKind::ProjectionFailure: return "ProjectionFailure";
        case ErrorKind::DegeneratePeriod: return "DegeneratePeriod";
        case ErrorKind::NotDominant: return "NotDominant";
        case ErrorKind::DerivativeSingular: return "DerivativeSingular";
        case ErrorKind::Config: return "ConfigError";
    }
    return "UnknownError";
}

int exit_status(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PrecisionExhausted:
        case ErrorKind::AtomBudgetExceeded:
            return kExitBudget;
        case ErrorKind::DegenerateImage:
        case ErrorKind::NotPeriodic:
        case ErrorKind::ChartSingularity:
        case ErrorKind::SolverDiverged:
        case ErrorKind::NoBranchSurvived:
        case ErrorKind::ContinuationAmbiguous:
        case ErrorKind::ProjectionFailure:
        case ErrorKind::DerivativeSingular:
            return kExitSolver;
        default:
            return kExitConfig;
    }
}

}  // namespace holodyn
