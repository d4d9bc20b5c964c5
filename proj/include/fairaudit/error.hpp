#pragma once

#include <stdexcept>
#include <string>

namespace fairaudit {

// Every failure the library reports, split into two tiers: validation
// errors (bad input data, bad condition, bad configuration) and inference
// errors (the estimate itself cannot be produced). The CLI maps the tiers
// to exit codes 2 and 3.
enum class ErrorCode {
    // validation
    MissingColumn,
    MissingValue,
    MalformedInput,
    NonBinaryOutcome,
    ProbOutOfRange,
    GroupCardinality,
    EmptyInput,
    UnparsableCondition,
    ConditionTypeMismatch,
    EmptySubgroup,
    InvalidPlantedParameters,
    InvalidConfig,
    // inference
    UndefinedPointEstimate,
    TooManyDegenerateReplicates,
    EmptyReplicateSet,
};

const char* error_code_name(ErrorCode code);
bool is_inference_error(ErrorCode code);

class AuditError : public std::runtime_error {
public:
    AuditError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fairaudit
