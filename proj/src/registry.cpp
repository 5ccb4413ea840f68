// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/registry.hpp"

#include <algorithm>

#include "dnas/codec.hpp"
#include "dnas/errors.hpp"

namespace dnas {

namespace {

bool is_supply_chain_role(Role r) {
    return r == Role::Producer || r == Role::Distributor || r == Role::Retailer;
}

}  // namespace

std::string_view product_status_name(ProductStatus s) {
    switch (s) {
        case ProductStatus::Registered: return "Registered";
        case ProductStatus::InTransit: return "InTransit";
        case ProductStatus::Sold: return "Sold";
        case ProductStatus::Deactivated: return "Deactivated";
        case ProductStatus::Flagged: return "Flagged";
    }
    throw Error(ErrorCode::ParseError, "invalid product status");
}

ProductStatus product_status_from_name(std::string_view name) {
    if (name == "Registered") return ProductStatus::Registered;
    if (name == "InTransit") return ProductStatus::InTransit;
    if (name == "Sold") return ProductStatus::Sold;
    if (name == "Deactivated") return ProductStatus::Deactivated;
    if (name == "Flagged") return ProductStatus::Flagged;
    throw Error(ErrorCode::ParseError, "unknown product status: " + std::string(name));
}

std::uint64_t GasSchedule::cost(Method m) const {
    switch (m) {
        case Method::RegisterEntity: return register_entity_cost;
        case Method::RegisterProduct: return register_product_cost;
        case Method::TransferCustody: return transfer_custody_cost;
        case Method::RecordSale: return record_sale_cost;
        case Method::FlagProduct: return flag_product_cost;
    }
    throw Error(ErrorCode::ParseError, "invalid method enum");
}

std::string_view tx_status_name(TxStatus s) {
    switch (s) {
        case TxStatus::Ok: return "Ok";
        case TxStatus::Unauthorized: return "Unauthorized";
        case TxStatus::AlreadyRegistered: return "AlreadyRegistered";
        case TxStatus::DuplicatePid: return "DuplicatePid";
        case TxStatus::UnknownPid: return "UnknownPid";
        case TxStatus::NotCustodian: return "NotCustodian";
        case TxStatus::InvalidRecipient: return "InvalidRecipient";
        case TxStatus::BadStatus: return "BadStatus";
        case TxStatus::OutOfGas: return "OutOfGas";
    }
    return "UnknownStatus";
}

bool role_may_invoke(Role role, Method method) {
    switch (method) {
        case Method::RegisterEntity: return role == Role::Administrator;
        case Method::RegisterProduct: return role == Role::Producer;
        case Method::TransferCustody: return is_supply_chain_role(role);
        case Method::RecordSale: return role == Role::Retailer;
        case Method::FlagProduct: return is_supply_chain_role(role);
    }
    return false;
}

RegistryState RegistryState::genesis(const std::string& admin_entity, const Address& admin,
                                     const crypto::PublicKey& admin_key) {
    RegistryState state;
    Account account;
    account.address = admin;
    account.role = Role::Administrator;
    account.entity = admin_entity;
    account.public_key = admin_key;
    state.accounts_[admin] = account;
    state.rotation_.append(admin_entity, admin, 0);
    state.entity_addresses_[admin_entity].push_back(admin);
    return state;
}

Receipt RegistryState::execute_transaction(const Transaction& tx, std::uint64_t height,
                                           std::uint32_t ordinal, const GasSchedule& gas) {
    Receipt receipt;
    receipt.tx_hash = tx.digest();
    receipt.height = height;
    receipt.ordinal = ordinal;

    auto sender_it = accounts_.find(tx.sender);
    if (sender_it == accounts_.end())
        throw Error(ErrorCode::BadSignature, "sender has no key bound on-chain");
    Account& sender = sender_it->second;
    if (!crypto::verify(sender.public_key, receipt.tx_hash, tx.signature))
        throw Error(ErrorCode::BadSignature, "signature does not verify under sender key");
    if (tx.nonce != sender.nonce)
        throw Error(ErrorCode::BadNonce, "expected nonce " + std::to_string(sender.nonce) +
                                             ", got " + std::to_string(tx.nonce));

    const std::uint64_t cost = gas.cost(tx.method);
    if (tx.gas_limit < cost) {
        receipt.status = TxStatus::OutOfGas;
        receipt.gas_used = tx.gas_limit;
        receipt.total_cost = receipt.gas_used * tx.gas_price;
        return receipt;
    }

    std::vector<Event> events;
    TxStatus status = TxStatus::Ok;
    switch (tx.method) {
        case Method::RegisterEntity:
            status = apply_register_entity(sender, RegisterEntityParams::decode(as_span(tx.params)),
                                           height, ordinal, events);
            break;
        case Method::RegisterProduct:
            status = apply_register_product(sender,
                                            RegisterProductParams::decode(as_span(tx.params)),
                                            height, ordinal, events);
            break;
        case Method::TransferCustody:
            status = apply_transfer_custody(sender,
                                            TransferCustodyParams::decode(as_span(tx.params)),
                                            height, ordinal, events);
            break;
        case Method::RecordSale:
            status = apply_record_sale(sender, RecordSaleParams::decode(as_span(tx.params)), height,
                                       ordinal, events);
            break;
        case Method::FlagProduct:
            status = apply_flag_product(sender, FlagProductParams::decode(as_span(tx.params)),
                                        height, ordinal, events);
            break;
    }

    receipt.status = status;
    receipt.gas_used = cost;
    receipt.total_cost = receipt.gas_used * tx.gas_price;
    if (status == TxStatus::Ok) {
        sender.nonce += 1;
        for (const auto& e : events) events_.push_back(e);
        receipt.events = std::move(events);
    }
    return receipt;
}

TxStatus RegistryState::apply_register_entity(const Account& sender,
                                              const RegisterEntityParams& p, std::uint64_t height,
                                              std::uint32_t ordinal, std::vector<Event>& events) {
    if (sender.role != Role::Administrator) return TxStatus::Unauthorized;
    if (crypto::derive_address(p.public_key) != p.address) return TxStatus::InvalidRecipient;
    if (accounts_.count(p.address) != 0) return TxStatus::AlreadyRegistered;

    // Re-pointing an existing entity to a new address retires the old
    // address's role; this is the on-chain half of key rotation.
    auto prev = entity_addresses_.find(p.entity);
    if (prev != entity_addresses_.end() && !prev->second.empty())
        accounts_.at(prev->second.back()).role = Role::None;

    Account account;
    account.address = p.address;
    account.role = p.role;
    account.entity = p.entity;
    account.public_key = p.public_key;
    accounts_[p.address] = account;
    rotation_.append(p.entity, p.address, height);
    entity_addresses_[p.entity].push_back(p.address);
    events.push_back({"RoleGranted", "", sender.address, height, ordinal});
    return TxStatus::Ok;
}

TxStatus RegistryState::apply_register_product(const Account& sender,
                                               const RegisterProductParams& p, std::uint64_t height,
                                               std::uint32_t ordinal, std::vector<Event>& events) {
    if (sender.role != Role::Producer) return TxStatus::Unauthorized;
    if (products_.count(p.pid) != 0) return TxStatus::DuplicatePid;

    OnChainProduct product;
    product.pid = p.pid;
    product.tag_uid_digest = p.tag_uid_digest;
    product.payload_digest = p.payload_digest;
    product.write_count = 1;
    product.custodian = sender.address;
    product.status = ProductStatus::Registered;
    products_[p.pid] = product;
    registrant_[p.pid] = sender.address;
    events.push_back({"ProductRegistered", p.pid, sender.address, height, ordinal});
    return TxStatus::Ok;
}

TxStatus RegistryState::apply_transfer_custody(const Account& sender,
                                               const TransferCustodyParams& p, std::uint64_t height,
                                               std::uint32_t ordinal, std::vector<Event>& events) {
    if (!role_may_invoke(sender.role, Method::TransferCustody)) return TxStatus::Unauthorized;
    auto it = products_.find(p.pid);
    if (it == products_.end()) return TxStatus::UnknownPid;
    OnChainProduct& product = it->second;
    if (product.custodian != sender.address) return TxStatus::NotCustodian;
    const Account* recipient = account(p.to);
    if (recipient == nullptr || !is_supply_chain_role(recipient->role))
        return TxStatus::InvalidRecipient;
    if (product.status == ProductStatus::Sold || product.status == ProductStatus::Deactivated ||
        product.status == ProductStatus::Flagged)
        return TxStatus::BadStatus;

    product.custodian = p.to;
    product.write_count += 1;
    product.payload_digest = p.new_payload_digest;
    product.status = ProductStatus::InTransit;
    events.push_back({"CustodyTransferred", p.pid, sender.address, height, ordinal});
    return TxStatus::Ok;
}

TxStatus RegistryState::apply_record_sale(const Account& sender, const RecordSaleParams& p,
                                          std::uint64_t height, std::uint32_t ordinal,
                                          std::vector<Event>& events) {
    if (sender.role != Role::Retailer) return TxStatus::Unauthorized;
    auto it = products_.find(p.pid);
    if (it == products_.end()) return TxStatus::UnknownPid;
    OnChainProduct& product = it->second;
    if (product.custodian != sender.address) return TxStatus::Unauthorized;
    if (product.status != ProductStatus::Registered && product.status != ProductStatus::InTransit)
        return TxStatus::BadStatus;

    // Sold then Deactivated in one atomic transition.
    product.status = ProductStatus::Deactivated;
    events.push_back({"TagDeactivated", p.pid, sender.address, height, ordinal});
    return TxStatus::Ok;
}

TxStatus RegistryState::apply_flag_product(const Account& sender, const FlagProductParams& p,
                                           std::uint64_t height, std::uint32_t ordinal,
                                           std::vector<Event>& events) {
    if (!role_may_invoke(sender.role, Method::FlagProduct)) return TxStatus::Unauthorized;
    auto it = products_.find(p.pid);
    if (it == products_.end()) return TxStatus::UnknownPid;
    OnChainProduct& product = it->second;

    product.status = ProductStatus::Flagged;  // idempotent
    if (product.flag_reason.empty()) product.flag_reason = p.reason;
    events.push_back({"ProductFlagged", p.pid, sender.address, height, ordinal});
    return TxStatus::Ok;
}

const OnChainProduct& RegistryState::query_product(const std::string& pid) const {
    auto it = products_.find(pid);
    if (it == products_.end()) throw Error(ErrorCode::UnknownPid, pid);
    return it->second;
}

const Account* RegistryState::account(const Address& address) const {
    auto it = accounts_.find(address);
    return it == accounts_.end() ? nullptr : &it->second;
}

const Address& RegistryState::product_registrant(const std::string& pid) const {
    auto it = registrant_.find(pid);
    if (it == registrant_.end()) throw Error(ErrorCode::UnknownPid, pid);
    return it->second;
}

std::vector<crypto::PublicKey> RegistryState::entity_key_history(const std::string& entity) const {
    std::vector<crypto::PublicKey> out;
    auto it = entity_addresses_.find(entity);
    if (it == entity_addresses_.end()) return out;
    for (const auto& address : it->second) {
        auto acc = accounts_.find(address);
        if (acc != accounts_.end()) out.push_back(acc->second.public_key);
    }
    return out;
}

std::vector<Event> RegistryState::events_for_pid(const std::string& pid) const {
    std::vector<Event> out;
    for (const auto& e : events_)
        if (e.pid == pid) out.push_back(e);
    return out;
}

Digest RegistryState::state_digest() const {
    CanonicalWriter w;
    for (const auto& [address, account] : accounts_) {
        w.field(address)
            .field_u64(account.kind == AccountKind::Contract ? 1 : 0)
            .field_u64(account.nonce)
            .field(role_name(account.role))
            .field(account.entity)
            .field(ByteSpan{account.public_key.bytes.data(), account.public_key.bytes.size()});
    }
    for (const auto& [pid, product] : products_) {
        w.field(pid)
            .field(product.tag_uid_digest)
            .field(product.payload_digest)
            .field_u64(product.write_count)
            .field(product.custodian)
            .field(product_status_name(product.status))
            .field(product.flag_reason);
    }
    for (const auto& [entity, records] : rotation_.all()) {
        w.field(entity);
        for (const auto& record : records) w.field(record.address).field_u64(record.activation_height);
    }
    return crypto::sha256(w.bytes());
}

}  // namespace dnas
