#pragma once

#include <germinv/errors.hpp>

#include <chrono>
#include <cstdint>
#include <optional>

namespace germinv {

/// Resource guards for basis computations. Exceeding any of them raises
/// ResourceError; it is never reported as a mathematical answer.
struct EngineContext {
    std::uint32_t max_degree = 400;   // total degree cap for any computed term
    std::size_t max_basis = 20000;    // cap on completed basis size
    std::optional<std::chrono::steady_clock::time_point> deadline;
    bool paranoid = false;            // re-verify every completed basis post hoc

    void set_timeout(double seconds) {
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::microseconds(static_cast<std::int64_t>(seconds * 1e6));
    }

    void check_deadline() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw ResourceError("wall-clock timeout exceeded");
    }
};

} // namespace germinv
