#include "bgchaos/errors.hpp"

namespace bgchaos {

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::NonPositiveParameter: return "NonPositiveParameter";
        case Errc::DomainError: return "DomainError";
        case Errc::OrderOutOfRange: return "OrderOutOfRange";
        case Errc::BoundInapplicable: return "BoundInapplicable";
        case Errc::NegativeRadicand: return "NegativeRadicand";
        case Errc::MeanNotZero: return "MeanNotZero";
        case Errc::NotSymmetric: return "NotSymmetric";
        case Errc::EigenFailure: return "EigenFailure";
        case Errc::DimMismatch: return "DimMismatch";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::GridTooCoarse: return "GridTooCoarse";
        case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
        case Errc::TooFewSamples: return "TooFewSamples";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::EmptyDictionary: return "EmptyDictionary";
        case Errc::NumericalInconsistency: return "NumericalInconsistency";
    }
    return "Unknown";
}

}  // namespace bgchaos
