// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dnas/bytes.hpp"
#include "dnas/crypto.hpp"
#include "dnas/keyring.hpp"
#include "dnas/tx.hpp"

namespace dnas {

enum class AccountKind { ExternallyOwned, Contract };

struct Account {
    Address address;
    AccountKind kind = AccountKind::ExternallyOwned;
    std::uint64_t nonce = 0;
    Role role = Role::None;
    std::string entity;
    crypto::PublicKey public_key;
};

enum class ProductStatus { Registered, InTransit, Sold, Deactivated, Flagged };

std::string_view product_status_name(ProductStatus s);
ProductStatus product_status_from_name(std::string_view name);

/// On-chain product entry: digests and counters only, full records live in
/// the off-chain provenance store.
struct OnChainProduct {
    std::string pid;
    Digest tag_uid_digest;   // sha256(uid || pid), binds the physical tag
    Digest payload_digest;   // sha256 of the current signed tag payload
    std::uint64_t write_count = 0;
    Address custodian;
    ProductStatus status = ProductStatus::Registered;
    std::string flag_reason;
};

struct Event {
    std::string name;
    std::string pid;
    Address emitter;
    std::uint64_t height = 0;
    std::uint32_t ordinal = 0;
};

/// Per-method base gas costs. The paper fixes the cost formula
/// (total = gas used x gas price) but no schedule; these constants are the
/// artifact's schedule, versioned in docs/formats.md.
struct GasSchedule {
    std::uint64_t register_entity_cost = 50;
    std::uint64_t register_product_cost = 100;
    std::uint64_t transfer_custody_cost = 80;
    std::uint64_t record_sale_cost = 60;
    std::uint64_t flag_product_cost = 40;
    std::uint64_t block_gas_limit = 800;

    std::uint64_t cost(Method m) const;
};

enum class TxStatus {
    Ok,
    Unauthorized,
    AlreadyRegistered,
    DuplicatePid,
    UnknownPid,
    NotCustodian,
    InvalidRecipient,
    BadStatus,
    OutOfGas,
};

std::string_view tx_status_name(TxStatus s);

struct Receipt {
    Digest tx_hash;
    TxStatus status = TxStatus::Ok;
    std::uint64_t gas_used = 0;
    std::uint64_t total_cost = 0;
    std::vector<Event> events;
    std::uint64_t height = 0;
    std::uint32_t ordinal = 0;

    bool ok() const { return status == TxStatus::Ok; }
};

/// Role gate per method; the full 6x5 authorization matrix is pinned by the
/// role-matrix test and documented in docs/formats.md.
bool role_may_invoke(Role role, Method method);

/// Account-based global state holding the role table, the product registry
/// and the on-chain address-rotation history. One executor mutates it,
/// sequentially per block; snapshots may be copied freely for queries.
class RegistryState {
public:
    RegistryState() = default;

    /// Initial state with the administrator role table entry committed by
    /// the genesis block.
    static RegistryState genesis(const std::string& admin_entity, const Address& admin,
                                 const crypto::PublicKey& admin_key);

    /// Verifies signature and nonce (throwing BadSignature / BadNonce),
    /// meters gas and dispatches the method. Failed methods leave state
    /// untouched, including the sender nonce, and consume base gas
    /// (OutOfGas consumes the full gas limit).
    Receipt execute_transaction(const Transaction& tx, std::uint64_t height, std::uint32_t ordinal,
                                const GasSchedule& gas);

    const OnChainProduct& query_product(const std::string& pid) const;  // throws UnknownPid
    bool has_product(const std::string& pid) const { return products_.count(pid) != 0; }
    const Account* account(const Address& address) const;
    const std::map<Address, Account>& accounts() const { return accounts_; }
    const std::map<std::string, OnChainProduct>& products() const { return products_; }
    const RotationRegistry& rotation() const { return rotation_; }

    /// Producer address that registered the pid (from the on-chain event
    /// history). Throws UnknownPid.
    const Address& product_registrant(const std::string& pid) const;

    /// Every public key historically bound on-chain to the entity, oldest
    /// first; used for historical signature verification across rotations.
    std::vector<crypto::PublicKey> entity_key_history(const std::string& entity) const;

    const std::vector<Event>& event_log() const { return events_; }
    std::vector<Event> events_for_pid(const std::string& pid) const;

    /// Flat digest over sorted (address -> account) and (pid -> product)
    /// entries plus the rotation history; replicas must agree byte-exactly.
    Digest state_digest() const;

private:
    TxStatus apply_register_entity(const Account& sender, const RegisterEntityParams& p,
                                   std::uint64_t height, std::uint32_t ordinal,
                                   std::vector<Event>& events);
    TxStatus apply_register_product(const Account& sender, const RegisterProductParams& p,
                                    std::uint64_t height, std::uint32_t ordinal,
                                    std::vector<Event>& events);
    TxStatus apply_transfer_custody(const Account& sender, const TransferCustodyParams& p,
                                    std::uint64_t height, std::uint32_t ordinal,
                                    std::vector<Event>& events);
    TxStatus apply_record_sale(const Account& sender, const RecordSaleParams& p,
                               std::uint64_t height, std::uint32_t ordinal,
                               std::vector<Event>& events);
    TxStatus apply_flag_product(const Account& sender, const FlagProductParams& p,
                                std::uint64_t height, std::uint32_t ordinal,
                                std::vector<Event>& events);

    std::map<Address, Account> accounts_;
    std::map<std::string, OnChainProduct> products_;
    RotationRegistry rotation_;
    std::vector<Event> events_;
    std::map<std::string, Address> registrant_;         // pid -> producer, from events
    std::map<std::string, std::vector<Address>> entity_addresses_;
};

}  // namespace dnas
