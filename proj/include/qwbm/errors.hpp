#pragma once

#include <stdexcept>
#include <string>

namespace qwbm {

// Input/config problems (CLI exit code 2).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runtime/capacity problems (CLI exit code 3).
struct RuntimeFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleDetected : ValidationError {
    using ValidationError::ValidationError;
};
struct CptShapeMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingValue : ValidationError {
    using ValidationError::ValidationError;
};
struct ZeroEvidenceProbability : RuntimeFault {
    using RuntimeFault::RuntimeFault;
};
struct BudgetExceeded : RuntimeFault {
    using RuntimeFault::RuntimeFault;
};
struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};
struct UnknownLabel : ValidationError {
    using ValidationError::ValidationError;
};
struct IndexOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct DuplicateQubit : ValidationError {
    using ValidationError::ValidationError;
};
struct TooManyQubits : RuntimeFault {
    using RuntimeFault::RuntimeFault;
};
struct InvalidConfig : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingClass : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptyClass : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptySampleSet : ValidationError {
    using ValidationError::ValidationError;
};
struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace qwbm
