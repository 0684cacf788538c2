// error.hpp: error categories shared by every module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghz {

enum class ErrorCode {
    config,           // invalid parameters or configuration keys
    truncation,       // a generator would exceed the photon cutoff
    dimension,        // operator/space/state size mismatch
    non_hermitian,    // matrix expected to be Hermitian is not
    schedule,         // pulse schedule outside its validity domain
    undefined_angle,  // mixing angle requested where Omega = 0
    refinement,       // solver drift above tolerance; more steps needed
    mismatch,         // target/method or model-variant mismatch
    out_of_range,     // index outside its allowed range
    unknown_scenario,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ghz
