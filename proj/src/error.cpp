#include "ghz/error.hpp"

namespace ghz {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::config: return "config";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::non_hermitian: return "non_hermitian";
    case ErrorCode::schedule: return "schedule";
    case ErrorCode::undefined_angle: return "undefined_angle";
    case ErrorCode::refinement: return "refinement";
    case ErrorCode::mismatch: return "mismatch";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::unknown_scenario: return "unknown_scenario";
    }
    return "unknown";
}

} // namespace ghz
