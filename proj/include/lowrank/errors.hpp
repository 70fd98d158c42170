#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowrank {

enum class Errc {
    InvalidArgument,
    CompositeCharacteristic,
    OrderUnreachable,
    ShapeMismatch,
    FieldMismatch,
    DiagonalOutOfRange,
    StrideTooSmall,
    NotInImage,
    OrderTooSmall,
    FieldTooSmall,
    NotRank1,
    NoNullspace,
    DuplicatePoints,
    AdviceTooLarge,
    InconsistentSyndrome,
    NotEchelon,
    OracleFailure,
    RankPromiseViolated,
    InconsistentEvaluations,
    LengthMismatch,
    DecodeFailure,
    TooLarge,
    ParseError,
};

std::string_view errc_name(Errc code);

// Promise violations are failures of the input data rather than of the call.
bool is_promise_violation(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace lowrank
