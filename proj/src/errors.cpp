#include "lowrank/errors.hpp"

namespace lowrank {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::CompositeCharacteristic: return "CompositeCharacteristic";
        case Errc::OrderUnreachable: return "OrderUnreachable";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::DiagonalOutOfRange: return "DiagonalOutOfRange";
        case Errc::StrideTooSmall: return "StrideTooSmall";
        case Errc::NotInImage: return "NotInImage";
        case Errc::OrderTooSmall: return "OrderTooSmall";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::NotRank1: return "NotRank1";
        case Errc::NoNullspace: return "NoNullspace";
        case Errc::DuplicatePoints: return "DuplicatePoints";
        case Errc::AdviceTooLarge: return "AdviceTooLarge";
        case Errc::InconsistentSyndrome: return "InconsistentSyndrome";
        case Errc::NotEchelon: return "NotEchelon";
        case Errc::OracleFailure: return "OracleFailure";
        case Errc::RankPromiseViolated: return "RankPromiseViolated";
        case Errc::InconsistentEvaluations: return "InconsistentEvaluations";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::DecodeFailure: return "DecodeFailure";
        case Errc::TooLarge: return "TooLarge";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool is_promise_violation(Errc code) {
    switch (code) {
        case Errc::InconsistentSyndrome:
        case Errc::RankPromiseViolated:
        case Errc::InconsistentEvaluations:
        case Errc::DecodeFailure:
        case Errc::OracleFailure:
            return true;
        default:
            return false;
    }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace lowrank
