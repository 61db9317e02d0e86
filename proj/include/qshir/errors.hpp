#pragma once

#include <stdexcept>
#include <string>

namespace qshir {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotNormalizedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnitarityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstraintViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroProbabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qshir
