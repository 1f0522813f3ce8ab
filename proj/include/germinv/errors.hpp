#pragma once

#include <stdexcept>
#include <string>

namespace germinv {

// Exit code classes used by the CLI. Library code throws, the CLI maps.
enum class ExitCode : int {
    Ok = 0,
    Validation = 2,
    Resource = 3,
    IdentityFailure = 4,
    Internal = 5,
};

struct GermError : std::runtime_error {
    explicit GermError(const std::string& msg) : std::runtime_error(msg) {}
    virtual ExitCode exit_code() const { return ExitCode::Internal; }
};

// Bad input: schema violations, parse errors, germs outside the tool's scope
// (non-ICIS, non-finite, non-A-finite).
struct ValidationError : GermError {
    using GermError::GermError;
    ExitCode exit_code() const override { return ExitCode::Validation; }
};

// A configured limit (degree bound, basis size, timeout, Hilbert budget) was
// exceeded. Never a statement about the answer.
struct ResourceError : GermError {
    using GermError::GermError;
    ExitCode exit_code() const override { return ExitCode::Resource; }
};

// A cross-check identity between two independent computation paths failed.
struct IdentityError : GermError {
    using GermError::GermError;
    ExitCode exit_code() const override { return ExitCode::IdentityFailure; }
};

// States that are impossible when the implementation is correct.
struct InternalError : GermError {
    using GermError::GermError;
    ExitCode exit_code() const override { return ExitCode::Internal; }
};

} // namespace germinv
