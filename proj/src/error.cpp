#include "lorentzseq/error.hpp"

namespace lorentzseq {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::MalformedFasta: return "MalformedFasta";
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::MissingLabel: return "MissingLabel";
        case ErrorCode::InvalidResidue: return "InvalidResidue";
        case ErrorCode::InvalidKmer: return "InvalidKmer";
        case ErrorCode::InvalidAlphabet: return "InvalidAlphabet";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidVector: return "InvalidVector";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NumericalError: return "NumericalError";
        case ErrorCode::EmptyMatrix: return "EmptyMatrix";
        case ErrorCode::InvalidComponents: return "InvalidComponents";
        case ErrorCode::NoTrainingData: return "NoTrainingData";
        case ErrorCode::EmptyEvaluation: return "EmptyEvaluation";
        case ErrorCode::SplitInfeasible: return "SplitInfeasible";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput:
        case ErrorCode::MalformedFasta:
        case ErrorCode::DuplicateLabel:
        case ErrorCode::MalformedRow:
        case ErrorCode::MissingLabel:
        case ErrorCode::InvalidResidue:
        case ErrorCode::InvalidKmer:
        case ErrorCode::InvalidAlphabet:
        case ErrorCode::InvalidArgument:
        case ErrorCode::IoError:
        case ErrorCode::InvalidComponents:
        case ErrorCode::SplitInfeasible:
            return true;
        default:
            return false;
    }
}

}  // namespace lorentzseq
