#include "gafault/error.hpp"

namespace gafault {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::AntiparallelPlanes: return "AntiparallelPlanes";
        case ErrorCode::ZeroBivector: return "ZeroBivector";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::NoNonNegativeEigenvalue: return "NoNonNegativeEigenvalue";
        case ErrorCode::SingularNormalization: return "SingularNormalization";
        case ErrorCode::NotAnEllipse: return "NotAnEllipse";
        case ErrorCode::DegenerateCloud: return "DegenerateCloud";
        case ErrorCode::NonUniformSampling: return "NonUniformSampling";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::AmbiguousPattern: return "AmbiguousPattern";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

}  // namespace gafault
