// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/errors.hpp"

namespace dnas {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyBlock: return "EmptyBlock";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ParentMismatch: return "ParentMismatch";
        case ErrorCode::HeightGap: return "HeightGap";
        case ErrorCode::GasLimitExceeded: return "GasLimitExceeded";
        case ErrorCode::MerkleMismatch: return "MerkleMismatch";
        case ErrorCode::NotYourTurn: return "NotYourTurn";
        case ErrorCode::NonceSpaceExhausted: return "NonceSpaceExhausted";
        case ErrorCode::InvalidFraction: return "InvalidFraction";
        case ErrorCode::BadSignature: return "BadSignature";
        case ErrorCode::BadNonce: return "BadNonce";
        case ErrorCode::StateRootMismatch: return "StateRootMismatch";
        case ErrorCode::UnknownPid: return "UnknownPid";
        case ErrorCode::UnknownEntity: return "UnknownEntity";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::Unauthorized: return "Unauthorized";
        case ErrorCode::TagDisabled: return "TagDisabled";
        case ErrorCode::TagLocked: return "TagLocked";
        case ErrorCode::KeyNotActive: return "KeyNotActive";
        case ErrorCode::UnknownScenario: return "UnknownScenario";
        case ErrorCode::ChainUnavailable: return "ChainUnavailable";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace dnas
