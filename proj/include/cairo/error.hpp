// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cairo {

enum class ErrorKind {
    config,               // field/modulus misuse
    format,               // malformed files or structurally inconsistent data
    missing_memory,       // read of an unmapped address
    not_an_instruction,   // word outside [0, 2^63) or component out of range
    undefined_behavior,   // instruction with an unconstrained next-state component
    assert_failed,        // instruction assertion does not hold
    division_by_zero,
    degenerate_challenge, // challenge collides with a committed value
    inconsistent_memory,  // conflicting values for one address
    range,                // value outside [0, 2^16) where a range check applies
    extraction,           // witness extraction failed a defensive check
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cairo
