// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/validation.hpp"

#include <json.hpp>

#include <algorithm>

#include "dnas/codec.hpp"
#include "dnas/crypto.hpp"
#include "dnas/errors.hpp"

namespace dnas {

using nlohmann::json;

std::string_view check_name(CheckId c) {
    switch (c) {
        case CheckId::TagReadable: return "tag_readable";
        case CheckId::ProductKnown: return "product_known";
        case CheckId::Signature: return "signature";
        case CheckId::UidBinding: return "uid_binding";
        case CheckId::PayloadDigest: return "payload_digest";
        case CheckId::WriteCount: return "write_count";
        case CheckId::ReadCount: return "read_count";
        case CheckId::Status: return "status";
    }
    throw Error(ErrorCode::ParseError, "invalid check id");
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Genuine: return "Genuine";
        case Outcome::CloneDetected: return "CloneDetected";
        case Outcome::ModificationDetected: return "ModificationDetected";
        case Outcome::ReapplicationDetected: return "ReapplicationDetected";
        case Outcome::TagUnreadable: return "TagUnreadable";
        case Outcome::UnknownProduct: return "UnknownProduct";
        case Outcome::StatusViolation: return "StatusViolation";
    }
    throw Error(ErrorCode::ParseError, "invalid outcome");
}

std::string Verdict::to_json() const {
    json ev = json::array();
    for (auto c : evidence) ev.push_back(std::string(check_name(c)));
    return json{{"outcome", std::string(outcome_name(outcome))}, {"evidence", ev}}.dump();
}

Outcome classify_evidence(const std::vector<CheckId>& evidence) {
    if (evidence.empty())
        throw Error(ErrorCode::ParseError, "classify_evidence requires a non-empty failure set");
    const auto has = [&](CheckId c) {
        return std::find(evidence.begin(), evidence.end(), c) != evidence.end();
    };
    if (has(CheckId::TagReadable)) return Outcome::TagUnreadable;
    if (has(CheckId::ProductKnown)) return Outcome::UnknownProduct;
    if (has(CheckId::Signature)) return Outcome::ModificationDetected;
    const bool counters = has(CheckId::WriteCount) || has(CheckId::ReadCount);
    if (has(CheckId::UidBinding)) {
        if (has(CheckId::PayloadDigest)) return Outcome::ReapplicationDetected;
        if (counters) return Outcome::CloneDetected;
        return Outcome::ReapplicationDetected;
    }
    if (has(CheckId::PayloadDigest)) return Outcome::ModificationDetected;
    if (counters) return Outcome::CloneDetected;
    return Outcome::StatusViolation;
}

Digest tag_binding_digest(const TagUid& uid, const std::string& pid) {
    CanonicalWriter w;
    w.field(uid).field(pid);
    return crypto::sha256(w.bytes());
}

namespace {

std::string evidence_context(const std::vector<CheckId>& evidence) {
    std::string out = "failed checks:";
    for (auto c : evidence) {
        out += ' ';
        out += check_name(c);
    }
    return out;
}

}  // namespace

Verdict validate_product(TagState& tag, const std::string& expected_pid, ValidationContext& ctx) {
    if (!ctx.chain_available || ctx.state == nullptr)
        throw Error(ErrorCode::ChainUnavailable, "validating node has no finalized tip");

    Verdict verdict;

    TagReadResult read;
    try {
        read = tag_read(tag);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TagDisabled) throw;
        verdict.outcome = Outcome::TagUnreadable;
        verdict.evidence = {CheckId::TagReadable};
        if (ctx.store != nullptr)
            ctx.store->record_unsuccessful(tag.uid.hex(), std::string(outcome_name(verdict.outcome)),
                                           evidence_context(verdict.evidence), ctx.sim_time);
        return verdict;
    }

    if (!ctx.state->has_product(expected_pid)) {
        verdict.outcome = Outcome::UnknownProduct;
        verdict.evidence = {CheckId::ProductKnown};
        if (ctx.store != nullptr)
            ctx.store->record_unsuccessful(expected_pid, std::string(outcome_name(verdict.outcome)),
                                           evidence_context(verdict.evidence), ctx.sim_time);
        return verdict;
    }

    const OnChainProduct& product = ctx.state->query_product(expected_pid);
    const Address& producer = ctx.state->product_registrant(expected_pid);
    const Account* producer_account = ctx.state->account(producer);

    // All remaining checks always run; evidence is order-independent.
    std::vector<CheckId> evidence;

    bool signature_ok = false;
    if (producer_account != nullptr) {
        const Digest message = tag_message_digest(read.payload);
        for (const auto& key : ctx.state->entity_key_history(producer_account->entity)) {
            if (crypto::verify(key, message, read.signature)) {
                signature_ok = true;
                break;
            }
        }
    }
    if (!signature_ok) evidence.push_back(CheckId::Signature);

    if (tag_binding_digest(read.uid, expected_pid) != product.tag_uid_digest)
        evidence.push_back(CheckId::UidBinding);

    if (crypto::sha256(read.payload) != product.payload_digest)
        evidence.push_back(CheckId::PayloadDigest);

    if (read.write_count != product.write_count) evidence.push_back(CheckId::WriteCount);

    // Reads beyond the shadow are legitimate consumer scans; a tag counter
    // behind the shadow indicates rewound (cloned) hardware.
    const std::uint64_t shadow =
        ctx.store != nullptr ? ctx.store->read_shadow(expected_pid) : 0;
    if (read.read_count < shadow) evidence.push_back(CheckId::ReadCount);

    if (product.status != ProductStatus::Registered && product.status != ProductStatus::InTransit)
        evidence.push_back(CheckId::Status);

    if (evidence.empty()) {
        verdict.outcome = Outcome::Genuine;
        if (ctx.store != nullptr) {
            const TagPayload payload = TagPayload::decode(as_span(read.payload));
            ctx.store->upsert_pedigree(expected_pid, {payload.pid, payload.producer, payload.vintage,
                                                      payload.bottling_date});
            ctx.store->append_step(expected_pid,
                                   {ctx.node_entity, "validation", ctx.sim_time});
            ctx.store->sync_shadows(expected_pid, read.read_count, read.write_count);
        }
        return verdict;
    }

    verdict.evidence = std::move(evidence);
    verdict.outcome = classify_evidence(verdict.evidence);
    if (ctx.store != nullptr)
        ctx.store->record_unsuccessful(expected_pid, std::string(outcome_name(verdict.outcome)),
                                       evidence_context(verdict.evidence), ctx.sim_time);
    return verdict;
}

}  // namespace dnas
