#ifndef LORENTZSEQ_ERROR_HPP
#define LORENTZSEQ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorentzseq {

enum class ErrorCode {
    // input and validation
    EmptyInput,
    MalformedFasta,
    DuplicateLabel,
    MalformedRow,
    MissingLabel,
    InvalidResidue,
    InvalidKmer,
    InvalidAlphabet,
    InvalidArgument,
    IoError,
    // geometry and linear algebra
    InvalidVector,
    DimensionMismatch,
    DomainError,
    NumericalError,
    EmptyMatrix,
    InvalidComponents,
    // classification and evaluation
    NoTrainingData,
    EmptyEvaluation,
    SplitInfeasible,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by bad input or configuration (CLI exit code 2);
/// false for failures inside a computation (exit code 1).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lorentzseq

#endif  // LORENTZSEQ_ERROR_HPP
