#include "gclust/error.hpp"

namespace gclust {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidMatrix: return "InvalidMatrix";
        case ErrorCode::ClosureBoundExceeded: return "ClosureBoundExceeded";
        case ErrorCode::ForeignElement: return "ForeignElement";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::InvalidWalk: return "InvalidWalk";
        case ErrorCode::NotWeaklyConnected: return "NotWeaklyConnected";
        case ErrorCode::NotRooted: return "NotRooted";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::NotSurjective: return "NotSurjective";
        case ErrorCode::ShapeError: return "ShapeError";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::Diverged: return "Diverged";
        case ErrorCode::CriterionNotMet: return "CriterionNotMet";
        case ErrorCode::InsufficientBound: return "InsufficientBound";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

}  // namespace gclust
