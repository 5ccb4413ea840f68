// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/tx.hpp"

#include "dnas/codec.hpp"
#include "dnas/errors.hpp"

namespace dnas {

std::string_view method_id(Method m) {
    switch (m) {
        case Method::RegisterEntity: return "register_entity";
        case Method::RegisterProduct: return "register_product";
        case Method::TransferCustody: return "transfer_custody";
        case Method::RecordSale: return "record_sale";
        case Method::FlagProduct: return "flag_product";
    }
    throw Error(ErrorCode::ParseError, "invalid method enum");
}

Method method_from_id(std::string_view id) {
    if (id == "register_entity") return Method::RegisterEntity;
    if (id == "register_product") return Method::RegisterProduct;
    if (id == "transfer_custody") return Method::TransferCustody;
    if (id == "record_sale") return Method::RecordSale;
    if (id == "flag_product") return Method::FlagProduct;
    throw Error(ErrorCode::ParseError, "unknown method id: " + std::string(id));
}

std::string_view role_name(Role r) {
    switch (r) {
        case Role::None: return "None";
        case Role::Administrator: return "Administrator";
        case Role::Producer: return "Producer";
        case Role::Distributor: return "Distributor";
        case Role::Retailer: return "Retailer";
        case Role::Consumer: return "Consumer";
    }
    throw Error(ErrorCode::ParseError, "invalid role enum");
}

Role role_from_name(std::string_view name) {
    if (name == "None") return Role::None;
    if (name == "Administrator") return Role::Administrator;
    if (name == "Producer") return Role::Producer;
    if (name == "Distributor") return Role::Distributor;
    if (name == "Retailer") return Role::Retailer;
    if (name == "Consumer") return Role::Consumer;
    throw Error(ErrorCode::ParseError, "unknown role: " + std::string(name));
}

Digest Transaction::digest() const {
    CanonicalWriter w;
    w.field(sender)
        .field_u64(nonce)
        .field(method_id(method))
        .field(params)
        .field_u64(gas_limit)
        .field_u64(gas_price);
    return crypto::sha256(w.bytes());
}

Transaction make_signed_tx(const crypto::SecretKey& key, const Address& sender,
                           std::uint64_t nonce, Method method, Bytes params,
                           std::uint64_t gas_limit, std::uint64_t gas_price) {
    Transaction tx;
    tx.sender = sender;
    tx.nonce = nonce;
    tx.method = method;
    tx.params = std::move(params);
    tx.gas_limit = gas_limit;
    tx.gas_price = gas_price;
    tx.signature = crypto::sign(key, tx.digest());
    return tx;
}

Bytes RegisterEntityParams::encode() const {
    CanonicalWriter w;
    w.field(entity)
        .field(address)
        .field(role_name(role))
        .field(ByteSpan{public_key.bytes.data(), public_key.bytes.size()});
    return w.take();
}

RegisterEntityParams RegisterEntityParams::decode(ByteSpan raw) {
    CanonicalReader r(raw);
    RegisterEntityParams p;
    p.entity = r.field_string();
    p.address = r.field_address();
    p.role = role_from_name(r.field_string());
    const Bytes pk = r.field();
    if (pk.size() != p.public_key.bytes.size())
        throw Error(ErrorCode::ParseError, "bad public key length");
    std::copy(pk.begin(), pk.end(), p.public_key.bytes.begin());
    return p;
}

Bytes RegisterProductParams::encode() const {
    CanonicalWriter w;
    w.field(pid).field(tag_uid_digest).field(payload_digest);
    return w.take();
}

RegisterProductParams RegisterProductParams::decode(ByteSpan raw) {
    CanonicalReader r(raw);
    RegisterProductParams p;
    p.pid = r.field_string();
    p.tag_uid_digest = r.field_digest();
    p.payload_digest = r.field_digest();
    return p;
}

Bytes TransferCustodyParams::encode() const {
    CanonicalWriter w;
    w.field(pid).field(to).field(new_payload_digest);
    return w.take();
}

TransferCustodyParams TransferCustodyParams::decode(ByteSpan raw) {
    CanonicalReader r(raw);
    TransferCustodyParams p;
    p.pid = r.field_string();
    p.to = r.field_address();
    p.new_payload_digest = r.field_digest();
    return p;
}

Bytes RecordSaleParams::encode() const {
    CanonicalWriter w;
    w.field(pid);
    return w.take();
}

RecordSaleParams RecordSaleParams::decode(ByteSpan raw) {
    CanonicalReader r(raw);
    RecordSaleParams p;
    p.pid = r.field_string();
    return p;
}

Bytes FlagProductParams::encode() const {
    CanonicalWriter w;
    w.field(pid).field(reason);
    return w.take();
}

FlagProductParams FlagProductParams::decode(ByteSpan raw) {
    CanonicalReader r(raw);
    FlagProductParams p;
    p.pid = r.field_string();
    p.reason = r.field_string();
    return p;
}

}  // namespace dnas
