// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dnas {

enum class ErrorCode {
    // ledger
    EmptyBlock,
    IndexOutOfRange,
    ParentMismatch,
    HeightGap,
    GasLimitExceeded,
    MerkleMismatch,
    // consensus
    NotYourTurn,
    NonceSpaceExhausted,
    InvalidFraction,
    // registry / execution preconditions
    BadSignature,
    BadNonce,
    StateRootMismatch,
    UnknownPid,
    UnknownEntity,
    UnknownCategory,
    Unauthorized,
    // tag emulation
    TagDisabled,
    TagLocked,
    // keyring
    KeyNotActive,
    // simulator / cli
    UnknownScenario,
    ChainUnavailable,
    NotFound,
    ParseError,
};

const char* error_code_name(ErrorCode code);

/// Thrown for protocol and precondition violations. Method-level transaction
/// outcomes (Unauthorized, DuplicatePid, ...) are receipt statuses, not
/// exceptions; see registry.hpp.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dnas
