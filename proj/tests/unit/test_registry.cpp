// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <random>

#include "dnas/errors.hpp"
#include "dnas/keyring.hpp"
#include "dnas/registry.hpp"

using namespace dnas;

namespace {

/// Small world: one account per role, nonces tracked, signing memoized so
/// the 10^4-sequence fuzz below stays fast.
struct World {
    Keystore keystore{crypto::sha256(as_span(std::string_view{"registry tests"}))};
    RegistryState state;
    GasSchedule gas;
    std::map<std::string, Address> address;
    std::map<Digest, crypto::Signature> sig_cache;
    std::uint64_t height = 1;
    std::uint32_t ordinal = 0;

    World() {
        const EntityKey& admin = keystore.generate("admin", 0);
        address["admin"] = admin.address;
        state = RegistryState::genesis("admin", admin.address, admin.material.public_key);
    }

    const EntityKey& key(const std::string& entity) { return keystore.current_key(entity); }

    void grant(const std::string& entity, Role role) {
        if (!keystore.has(entity)) keystore.generate(entity, 0);
        const EntityKey& k = key(entity);
        address[entity] = k.address;
        const Receipt r = exec("admin", Method::RegisterEntity,
                               RegisterEntityParams{entity, k.address, role,
                                                    k.material.public_key}.encode());
        REQUIRE(r.ok());
    }

    Transaction tx_for(const std::string& sender, Method method, Bytes params,
                       std::uint64_t gas_limit = 200, std::uint64_t gas_price = 1,
                       std::optional<std::uint64_t> nonce_override = {}) {
        Transaction tx;
        tx.sender = address.at(sender);
        const Account* account = state.account(tx.sender);
        tx.nonce = nonce_override ? *nonce_override : (account != nullptr ? account->nonce : 0);
        tx.method = method;
        tx.params = std::move(params);
        tx.gas_limit = gas_limit;
        tx.gas_price = gas_price;
        const Digest digest = tx.digest();
        auto it = sig_cache.find(digest);
        if (it == sig_cache.end())
            it = sig_cache.emplace(digest, crypto::sign(key(sender).material.secret_key, digest))
                     .first;
        tx.signature = it->second;
        return tx;
    }

    Receipt exec(const std::string& sender, Method method, Bytes params,
                 std::uint64_t gas_limit = 200, std::uint64_t gas_price = 1) {
        return state.execute_transaction(tx_for(sender, method, std::move(params), gas_limit,
                                                gas_price),
                                         height, ordinal++, gas);
    }

    Receipt register_product(const std::string& producer, const std::string& pid) {
        Digest uid_digest, payload_digest;
        uid_digest.bytes[0] = 0x01;
        payload_digest.bytes[0] = 0x02;
        return exec(producer, Method::RegisterProduct,
                    RegisterProductParams{pid, uid_digest, payload_digest}.encode());
    }
};

}  // namespace

TEST_CASE("entity registration is admin-gated and duplicate-safe") {
    World w;
    w.keystore.generate("producer", 0);
    const EntityKey& pk = w.key("producer");
    w.address["producer"] = pk.address;
    const auto params =
        RegisterEntityParams{"producer", pk.address, Role::Producer, pk.material.public_key};

    const Receipt granted = w.exec("admin", Method::RegisterEntity, params.encode());
    CHECK(granted.ok());
    CHECK(granted.events.size() == 1);
    CHECK(granted.events[0].name == "RoleGranted");
    CHECK(w.state.account(pk.address)->role == Role::Producer);

    const Receipt again = w.exec("admin", Method::RegisterEntity, params.encode());
    CHECK(again.status == TxStatus::AlreadyRegistered);

    // A non-admin cannot grant roles.
    w.grant("retailer", Role::Retailer);
    w.keystore.generate("x", 0);
    const EntityKey& xk = w.key("x");
    const Receipt denied =
        w.exec("retailer", Method::RegisterEntity,
               RegisterEntityParams{"x", xk.address, Role::Producer, xk.material.public_key}
                   .encode());
    CHECK(denied.status == TxStatus::Unauthorized);
}

TEST_CASE("product registration honors role restriction and pid uniqueness") {
    World w;
    w.grant("producer", Role::Producer);
    w.grant("distributor", Role::Distributor);

    const Receipt ok = w.register_product("producer", "W-0001");
    CHECK(ok.ok());
    CHECK(w.state.query_product("W-0001").write_count == 1);
    CHECK(w.state.query_product("W-0001").status == ProductStatus::Registered);
    CHECK(w.state.product_registrant("W-0001") == w.address["producer"]);

    CHECK(w.register_product("distributor", "W-0002").status == TxStatus::Unauthorized);
    CHECK(w.register_product("producer", "W-0001").status == TxStatus::DuplicatePid);
}

TEST_CASE("custody transfer updates counters and enforces preconditions") {
    World w;
    w.grant("producer", Role::Producer);
    w.grant("distributor", Role::Distributor);
    w.grant("retailer", Role::Retailer);
    w.grant("consumer", Role::Consumer);
    REQUIRE(w.register_product("producer", "W-0001").ok());

    Digest new_payload;
    new_payload.bytes[1] = 9;
    const Receipt moved =
        w.exec("producer", Method::TransferCustody,
               TransferCustodyParams{"W-0001", w.address["distributor"], new_payload}.encode());
    CHECK(moved.ok());
    const auto& product = w.state.query_product("W-0001");
    CHECK(product.custodian == w.address["distributor"]);
    CHECK(product.write_count == 2);
    CHECK(product.payload_digest == new_payload);
    CHECK(product.status == ProductStatus::InTransit);

    // Non-custodian, bad recipient, bad status.
    CHECK(w.exec("producer", Method::TransferCustody,
                 TransferCustodyParams{"W-0001", w.address["retailer"], new_payload}.encode())
              .status == TxStatus::NotCustodian);
    CHECK(w.exec("distributor", Method::TransferCustody,
                 TransferCustodyParams{"W-0001", w.address["consumer"], new_payload}.encode())
              .status == TxStatus::InvalidRecipient);
    CHECK(w.exec("distributor", Method::TransferCustody,
                 TransferCustodyParams{"GHOST", w.address["retailer"], new_payload}.encode())
              .status == TxStatus::UnknownPid);

    REQUIRE(w.exec("distributor", Method::TransferCustody,
                   TransferCustodyParams{"W-0001", w.address["retailer"], new_payload}.encode())
                .ok());
    REQUIRE(w.exec("retailer", Method::RecordSale, RecordSaleParams{"W-0001"}.encode()).ok());
    CHECK(w.exec("retailer", Method::TransferCustody,
                 TransferCustodyParams{"W-0001", w.address["distributor"], new_payload}.encode())
              .status == TxStatus::BadStatus);
}

TEST_CASE("sale deactivates once and only for the retailer custodian") {
    World w;
    w.grant("producer", Role::Producer);
    w.grant("retailer", Role::Retailer);
    w.grant("distributor", Role::Distributor);
    REQUIRE(w.register_product("producer", "W-0001").ok());
    Digest d;
    REQUIRE(w.exec("producer", Method::TransferCustody,
                   TransferCustodyParams{"W-0001", w.address["retailer"], d}.encode())
                .ok());

    CHECK(w.exec("distributor", Method::RecordSale, RecordSaleParams{"W-0001"}.encode()).status ==
          TxStatus::Unauthorized);
    const Receipt sold = w.exec("retailer", Method::RecordSale, RecordSaleParams{"W-0001"}.encode());
    CHECK(sold.ok());
    CHECK(sold.events[0].name == "TagDeactivated");
    CHECK(w.state.query_product("W-0001").status == ProductStatus::Deactivated);
    CHECK(w.exec("retailer", Method::RecordSale, RecordSaleParams{"W-0001"}.encode()).status ==
          TxStatus::BadStatus);
}

TEST_CASE("flagging works from any custody role and is idempotent") {
    World w;
    w.grant("producer", Role::Producer);
    w.grant("distributor", Role::Distributor);
    REQUIRE(w.register_product("producer", "W-0001").ok());

    CHECK(w.exec("distributor", Method::FlagProduct,
                 FlagProductParams{"GHOST", "failed validation"}.encode())
              .status == TxStatus::UnknownPid);
    CHECK(w.exec("distributor", Method::FlagProduct,
                 FlagProductParams{"W-0001", "failed validation"}.encode())
              .ok());
    CHECK(w.state.query_product("W-0001").status == ProductStatus::Flagged);
    CHECK(w.state.query_product("W-0001").flag_reason == "failed validation");
    CHECK(w.exec("distributor", Method::FlagProduct, FlagProductParams{"W-0001", "again"}.encode())
              .ok());
    CHECK(w.state.query_product("W-0001").status == ProductStatus::Flagged);
    CHECK(w.state.query_product("W-0001").flag_reason == "failed validation");
}

TEST_CASE("gas accounting: cost formula, out-of-gas and revert atomicity") {
    World w;
    w.grant("producer", Role::Producer);

    // 100-unit method at price 3 costs exactly 300.
    Digest d1, d2;
    const Receipt r = w.exec("producer", Method::RegisterProduct,
                             RegisterProductParams{"W-0001", d1, d2}.encode(), 150, 3);
    CHECK(r.ok());
    CHECK(r.gas_used == 100);
    CHECK(r.total_cost == 300);

    // gas_limit below the method cost: OutOfGas, state unchanged.
    const Digest before = w.state.state_digest();
    const Receipt oog = w.exec("producer", Method::RegisterProduct,
                               RegisterProductParams{"W-0002", d1, d2}.encode(), 50, 3);
    CHECK(oog.status == TxStatus::OutOfGas);
    CHECK(oog.gas_used == 50);
    CHECK(oog.total_cost == 150);
    CHECK(w.state.state_digest() == before);
    CHECK_FALSE(w.state.has_product("W-0002"));

    // A failing method also leaves the state root untouched.
    const Receipt dup = w.exec("producer", Method::RegisterProduct,
                               RegisterProductParams{"W-0001", d1, d2}.encode(), 150, 3);
    CHECK(dup.status == TxStatus::DuplicatePid);
    CHECK(dup.gas_used == 100);
    CHECK(w.state.state_digest() == before);
}

TEST_CASE("signature and nonce violations throw") {
    World w;
    w.grant("producer", Role::Producer);

    Transaction replayed = w.tx_for("producer", Method::RegisterProduct,
                                    RegisterProductParams{"W-0001", {}, {}}.encode());
    REQUIRE(w.state.execute_transaction(replayed, 1, 0, w.gas).ok());
    CHECK_THROWS_AS(w.state.execute_transaction(replayed, 1, 1, w.gas), Error);  // BadNonce

    Transaction forged = w.tx_for("producer", Method::RegisterProduct,
                                  RegisterProductParams{"W-0002", {}, {}}.encode());
    forged.signature.bytes[0] ^= 1;
    CHECK_THROWS_AS(w.state.execute_transaction(forged, 1, 2, w.gas), Error);  // BadSignature

    Transaction stranger = forged;
    stranger.sender.bytes[0] ^= 0xff;
    CHECK_THROWS_AS(w.state.execute_transaction(stranger, 1, 3, w.gas), Error);
}

TEST_CASE("authorization matrix matches the pinned table for all roles and methods") {
    // Checked-in role matrix (docs/formats.md): rows map role -> method gate.
    const std::map<Role, std::map<Method, bool>> matrix{
        {Role::None,
         {{Method::RegisterEntity, false},
          {Method::RegisterProduct, false},
          {Method::TransferCustody, false},
          {Method::RecordSale, false},
          {Method::FlagProduct, false}}},
        {Role::Administrator,
         {{Method::RegisterEntity, true},
          {Method::RegisterProduct, false},
          {Method::TransferCustody, false},
          {Method::RecordSale, false},
          {Method::FlagProduct, false}}},
        {Role::Producer,
         {{Method::RegisterEntity, false},
          {Method::RegisterProduct, true},
          {Method::TransferCustody, true},
          {Method::RecordSale, false},
          {Method::FlagProduct, true}}},
        {Role::Distributor,
         {{Method::RegisterEntity, false},
          {Method::RegisterProduct, false},
          {Method::TransferCustody, true},
          {Method::RecordSale, false},
          {Method::FlagProduct, true}}},
        {Role::Retailer,
         {{Method::RegisterEntity, false},
          {Method::RegisterProduct, false},
          {Method::TransferCustody, true},
          {Method::RecordSale, true},
          {Method::FlagProduct, true}}},
        {Role::Consumer,
         {{Method::RegisterEntity, false},
          {Method::RegisterProduct, false},
          {Method::TransferCustody, false},
          {Method::RecordSale, false},
          {Method::FlagProduct, false}}},
    };
    for (const auto& [role, row] : matrix)
        for (const auto& [method, allowed] : row)
            CHECK(role_may_invoke(role, method) == allowed);

    // Exercised end to end: each role attempts each method; the role gate
    // decides whether the receipt can ever be Unauthorized-free.
    World w;
    w.grant("producer", Role::Producer);
    w.grant("distributor", Role::Distributor);
    w.grant("retailer", Role::Retailer);
    w.grant("consumer", Role::Consumer);
    w.grant("nobody", Role::None);
    REQUIRE(w.register_product("producer", "W-0001").ok());

    const std::map<Role, std::string> sender_of{{Role::Administrator, "admin"},
                                                {Role::Producer, "producer"},
                                                {Role::Distributor, "distributor"},
                                                {Role::Retailer, "retailer"},
                                                {Role::Consumer, "consumer"},
                                                {Role::None, "nobody"}};
    for (const auto& [role, sender] : sender_of) {
        for (const auto method : {Method::RegisterEntity, Method::RegisterProduct,
                                  Method::TransferCustody, Method::RecordSale,
                                  Method::FlagProduct}) {
            Bytes params;
            switch (method) {
                case Method::RegisterEntity: {
                    const auto& k = w.key("producer");
                    params = RegisterEntityParams{"fresh-" + sender, k.address, Role::Producer,
                                                  k.material.public_key}
                                 .encode();
                    break;
                }
                case Method::RegisterProduct:
                    params = RegisterProductParams{"X-" + sender, {}, {}}.encode();
                    break;
                case Method::TransferCustody:
                    params = TransferCustodyParams{"W-0001", w.address["retailer"], {}}.encode();
                    break;
                case Method::RecordSale:
                    params = RecordSaleParams{"W-0001"}.encode();
                    break;
                case Method::FlagProduct:
                    params = FlagProductParams{"W-0001", "r"}.encode();
                    break;
            }
            const Receipt receipt = w.exec(sender, method, std::move(params));
            const bool gate_open = matrix.at(role).at(method);
            if (!gate_open)
                CHECK(receipt.status == TxStatus::Unauthorized);
            else
                CHECK(receipt.status != TxStatus::Unauthorized);
        }
    }
}

TEST_CASE("random method sequences never break status or counter invariants") {
    std::mt19937_64 rng(1234);
    const auto legal = [](ProductStatus from, ProductStatus to) {
        if (from == to) return true;
        switch (from) {
            case ProductStatus::Registered:
                return to == ProductStatus::InTransit || to == ProductStatus::Deactivated ||
                       to == ProductStatus::Flagged;
            case ProductStatus::InTransit:
                return to == ProductStatus::Deactivated || to == ProductStatus::Flagged;
            case ProductStatus::Sold:
                return to == ProductStatus::Deactivated || to == ProductStatus::Flagged;
            case ProductStatus::Deactivated: return to == ProductStatus::Flagged;
            case ProductStatus::Flagged: return false;
        }
        return false;
    };

    World w;
    w.grant("producer", Role::Producer);
    w.grant("distributor", Role::Distributor);
    w.grant("retailer", Role::Retailer);
    const std::vector<std::string> senders{"producer", "distributor", "retailer"};
    const std::vector<std::string> pids{"W-0001", "W-0002"};
    REQUIRE(w.register_product("producer", "W-0001").ok());
    REQUIRE(w.register_product("producer", "W-0002").ok());

    for (int sequence = 0; sequence < 10000; ++sequence) {
        const int ops = 1 + static_cast<int>(rng() % 4);
        for (int op = 0; op < ops; ++op) {
            const std::string pid = pids[rng() % pids.size()];
            const std::string sender = senders[rng() % senders.size()];
            const ProductStatus status_before = w.state.query_product(pid).status;
            const std::uint64_t wc_before = w.state.query_product(pid).write_count;
            switch (rng() % 3) {
                case 0:
                    w.exec(sender, Method::TransferCustody,
                           TransferCustodyParams{pid, w.address[senders[rng() % senders.size()]],
                                                 {}}
                               .encode());
                    break;
                case 1: w.exec(sender, Method::RecordSale, RecordSaleParams{pid}.encode()); break;
                case 2:
                    w.exec(sender, Method::FlagProduct, FlagProductParams{pid, "fuzz"}.encode());
                    break;
            }
            const ProductStatus status_after = w.state.query_product(pid).status;
            const std::uint64_t wc_after = w.state.query_product(pid).write_count;
            REQUIRE(wc_after >= wc_before);
            REQUIRE(legal(status_before, status_after));
        }
    }
}

TEST_CASE("rotation re-points the entity and key history stays verifiable") {
    World w;
    w.grant("producer", Role::Producer);
    const Address old_address = w.address["producer"];
    const crypto::PublicKey old_key = w.key("producer").material.public_key;

    const EntityKey& fresh = w.keystore.rotate_key("producer", 50);
    w.address["producer"] = fresh.address;
    const Receipt repointed =
        w.exec("admin", Method::RegisterEntity,
               RegisterEntityParams{"producer", fresh.address, Role::Producer,
                                    fresh.material.public_key}
                   .encode());
    REQUIRE(repointed.ok());

    CHECK(w.state.account(old_address)->role == Role::None);
    CHECK(w.state.account(fresh.address)->role == Role::Producer);
    CHECK(w.state.rotation().current_address("producer") == fresh.address);
    const auto history = w.state.entity_key_history("producer");
    REQUIRE(history.size() == 2);
    CHECK(history[0] == old_key);
    CHECK(history[1] == fresh.material.public_key);
}

TEST_CASE("event log orders events by height then ordinal") {
    World w;
    w.grant("producer", Role::Producer);
    REQUIRE(w.register_product("producer", "W-0001").ok());
    const auto events = w.state.events_for_pid("W-0001");
    REQUIRE(events.size() == 1);
    CHECK(events[0].name == "ProductRegistered");
    const auto& log = w.state.event_log();
    for (std::size_t i = 1; i < log.size(); ++i) {
        const bool ordered = log[i - 1].height < log[i].height ||
                             (log[i - 1].height == log[i].height &&
                              log[i - 1].ordinal < log[i].ordinal);
        CHECK(ordered);
    }
}
