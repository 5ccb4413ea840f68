// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dnas/codec.hpp"
#include "dnas/consensus.hpp"
#include "dnas/errors.hpp"
#include "dnas/keyring.hpp"
#include "dnas/ledger.hpp"
#include "dnas/scenarios.hpp"
#include "dnas/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dnas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDetectionMissed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::NotFound, "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DNAS_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

/// Precedence: explicit flag > config file > built-in default.
void merge_config_file(sim::SimConfig& cfg, const std::string& config_path, bool seed_set,
                       bool validators_set, bool block_time_set, bool gas_set) {
    if (config_path.empty()) return;
    const json j = json::parse(slurp(config_path));
    if (!seed_set && j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (!validators_set && j.contains("validators"))
        cfg.validators = j.at("validators").get<std::size_t>();
    if (!block_time_set && j.contains("block_time"))
        cfg.block_time = j.at("block_time").get<std::int64_t>();
    if (!gas_set && j.contains("block_gas_limit"))
        cfg.block_gas_limit = j.at("block_gas_limit").get<std::uint64_t>();
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

struct ReplayedChain {
    Chain chain{800};
    RegistryState state;
    std::vector<std::vector<Receipt>> receipts;
};

/// Rebuilds registry state and receipts by re-executing a chain dump.
ReplayedChain replay_chain(const std::string& jsonl) {
    ReplayedChain out;
    // The genesis admin entry is fixed (see docs/formats.md); rebuild it the
    // same way the simulator does.
    const Digest admin_seed = crypto::sha256(as_span(std::string_view{"dnas/genesis/admin/v1"}));
    Keystore admin_keystore(admin_seed);
    const EntityKey& admin = admin_keystore.generate("admin", 0);
    out.state = RegistryState::genesis("admin", admin.address, admin.material.public_key);

    out.chain = chain_from_jsonl(jsonl, UINT64_MAX);
    GasSchedule gas;
    gas.block_gas_limit = UINT64_MAX;
    bool first = true;
    for (const auto& block : out.chain.blocks()) {
        std::vector<Receipt> block_receipts;
        if (!first) {
            std::uint32_t ordinal = 0;
            for (const auto& tx : block.body)
                block_receipts.push_back(
                    out.state.execute_transaction(tx, block.header.height, ordinal++, gas));
        }
        first = false;
        out.receipts.push_back(std::move(block_receipts));
    }
    return out;
}

json receipt_to_json(const Receipt& r) {
    json events = json::array();
    for (const auto& e : r.events)
        events.push_back(json{{"name", e.name},
                              {"pid", e.pid},
                              {"emitter", e.emitter.hex()},
                              {"height", e.height},
                              {"ordinal", e.ordinal}});
    return json{{"tx_hash", r.tx_hash.hex()},
                {"status", std::string(tx_status_name(r.status))},
                {"gas_used", r.gas_used},
                {"total_cost", r.total_cost},
                {"height", r.height},
                {"ordinal", r.ordinal},
                {"events", events}};
}

int cmd_run(const sim::SimConfig& cfg, const std::string& out_dir) {
    const sim::ScenarioRun run = sim::run_scenario(cfg);
    if (!out_dir.empty()) {
        const fs::path base(out_dir);
        spit(base / "report.json", run.report.to_json());
        spit(base / "chain.jsonl", run.chain_jsonl);
        spit(base / "scenario.json", cfg.to_json().dump(2) + "\n");
        for (const auto& [node, text] : run.stores)
            spit(base / "stores" / (node + ".jsonl"), text);
        for (const auto& [label, text] : run.tags)
            spit(base / "tags" / (label + ".json"), text + "\n");
    }
    std::cout << run.report.summary_table();
    return run.report.passed ? kExitOk : kExitDetectionMissed;
}

int cmd_validate(const std::string& tag_path, const std::string& pid, const std::string& state_dir,
                 const std::string& node) {
    TagState tag = tag_from_json(slurp(tag_path));
    ReplayedChain replayed = replay_chain(slurp((fs::path(state_dir) / "chain.jsonl").string()));
    ProvenanceStore store("cli");
    const fs::path store_path = fs::path(state_dir) / "stores" / (node + ".jsonl");
    if (fs::exists(store_path)) store = ProvenanceStore::from_jsonl(slurp(store_path.string()), node);
    ValidationContext ctx{&replayed.state, &store, node, 0, true};
    const Verdict verdict = validate_product(tag, pid, ctx);
    std::cout << verdict.to_json() << "\n";
    return kExitOk;
}

int cmd_explore(const std::string& chain_path, std::int64_t height, const std::string& tx_hash,
                const std::string& pid) {
    const ReplayedChain replayed = replay_chain(slurp(chain_path));
    if (height >= 0) {
        const Block& block = replayed.chain.at_height(static_cast<std::uint64_t>(height));
        json receipts = json::array();
        for (const auto& r : replayed.receipts.at(static_cast<std::size_t>(height)))
            receipts.push_back(receipt_to_json(r));
        json out = json::parse(block_to_json_line(block));
        out["hash"] = hash_header(block.header).hex();
        out["receipts"] = receipts;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    if (!tx_hash.empty()) {
        const Digest wanted = Digest::from_hex(tx_hash);
        for (std::size_t h = 0; h < replayed.chain.length(); ++h) {
            const Block& block = replayed.chain.at_height(h);
            for (std::size_t i = 0; i < block.body.size(); ++i) {
                if (block.body[i].digest() != wanted) continue;
                json out = json::parse(block_to_json_line(block)).at("body").at(i);
                out["receipt"] = receipt_to_json(replayed.receipts.at(h).at(i));
                out["height"] = h;
                std::cout << out.dump(2) << "\n";
                return kExitOk;
            }
        }
        throw Error(ErrorCode::NotFound, "no transaction " + tx_hash);
    }
    if (!pid.empty()) {
        const auto events = replayed.state.events_for_pid(pid);
        if (events.empty()) throw Error(ErrorCode::NotFound, "no events for pid " + pid);
        json out = json::array();
        for (const auto& e : events)
            out.push_back(json{{"name", e.name},
                               {"pid", e.pid},
                               {"emitter", e.emitter.hex()},
                               {"height", e.height},
                               {"ordinal", e.ordinal}});
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    throw Error(ErrorCode::ParseError, "explore needs --height, --tx or --pid");
}

int cmd_dump(const std::string& store_path, const std::string& chain_path, const std::string& pid) {
    if (!store_path.empty()) {
        const ProvenanceStore store = ProvenanceStore::from_jsonl(slurp(store_path));
        if (!pid.empty()) {
            std::cout << store.dump_record_json(pid);
            return kExitOk;
        }
        json out = json::object();
        for (const auto& [id, _] : store.records())
            out[id] = json::parse(store.dump_record_json(id));
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    if (!chain_path.empty()) {
        const Chain chain = chain_from_jsonl(slurp(chain_path), UINT64_MAX);
        std::cout << chain_to_jsonl(chain);
        return kExitOk;
    }
    throw Error(ErrorCode::ParseError, "dump needs --store or --chain");
}

int cmd_keys(const std::string& action, const std::string& keystore_path,
             const std::string& entity, const std::string& passphrase, std::uint64_t seed) {
    Keystore keystore = [&] {
        if (fs::exists(keystore_path))
            return Keystore::from_file_json(slurp(keystore_path), passphrase);
        CanonicalWriter w;
        w.field("dnas/keystore").field_u64(seed);
        return Keystore(crypto::sha256(w.bytes()));
    }();

    if (action == "gen") {
        if (entity.empty()) throw Error(ErrorCode::ParseError, "keys gen needs --entity");
        const EntityKey& key = keystore.generate(entity, 0);
        std::cout << entity << " " << key.address.hex() << " Active\n";
    } else if (action == "rotate") {
        if (entity.empty()) throw Error(ErrorCode::ParseError, "keys rotate needs --entity");
        if (!keystore.has("admin"))
            throw Error(ErrorCode::Unauthorized, "rotation requires the admin key in this keystore");
        // Admin co-signs the rotation record; the on-chain role re-pointing
        // happens through a register_entity transaction in the simulator.
        RotationRegistry registry;
        if (keystore.has(entity))
            registry.append(entity, keystore.current_key(entity).address, 0);
        const auto& admin = *keystore.active_key("admin");
        const AdminAuth auth =
            make_rotation_auth(admin.material.secret_key, admin.address, entity, 0);
        const EntityKey& fresh = rotate(keystore, registry, entity, auth,
                                        admin.material.public_key, 0, 0);
        std::cout << entity << " " << fresh.address.hex() << " Active\n";
    } else if (action == "status") {
        for (const auto& id : keystore.entities()) {
            for (const auto& key : keystore.history(id))
                std::cout << id << " " << key.address.hex() << " "
                          << key_status_name(key.status) << "\n";
        }
    } else {
        throw Error(ErrorCode::ParseError, "keys action must be gen, rotate or status");
    }
    spit(keystore_path, keystore.to_file_json(passphrase));
    return kExitOk;
}

int cmd_analyze(const std::string& q_csv, const std::string& z_csv, const std::string& mode,
                std::uint64_t trials, std::uint64_t seed, const std::string& csv_path) {
    const auto qs = parse_double_list(q_csv);
    const auto zs = parse_u32_list(z_csv);
    const bool closed = mode == "closed-form" || mode == "both";
    const bool monte = mode == "monte-carlo" || mode == "both";
    if (!closed && !monte)
        throw Error(ErrorCode::ParseError, "mode must be closed-form, monte-carlo or both");

    std::ostringstream csv;
    csv << "q,z";
    if (closed) csv << ",closed_form";
    if (monte) csv << ",monte_carlo";
    csv << "\n";

    std::cout << std::setw(6) << "q" << std::setw(5) << "z";
    if (closed) std::cout << std::setw(16) << "closed-form";
    if (monte) std::cout << std::setw(16) << "monte-carlo";
    std::cout << "\n";

    std::uint64_t cell = 0;
    for (const double q : qs) {
        for (const std::uint32_t z : zs) {
            DoubleSpendQuery query{q, z, trials, seed + 977 * cell++};
            std::cout << std::setw(6) << q << std::setw(5) << z;
            csv << q << "," << z;
            if (closed) {
                const double v = double_spend_success_closed_form(query);
                std::cout << std::setw(16) << std::setprecision(8) << std::fixed << v;
                std::cout.unsetf(std::ios::fixed);
                csv << "," << std::setprecision(10) << v;
            }
            if (monte) {
                const double v = double_spend_success_monte_carlo(query);
                std::cout << std::setw(16) << std::setprecision(8) << std::fixed << v;
                std::cout.unsetf(std::ios::fixed);
                csv << "," << std::setprecision(10) << v;
            }
            std::cout << "\n";
        }
    }
    if (!csv_path.empty()) spit(csv_path, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dnas: decentralized supply-chain anti-counterfeiting simulator"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    std::string config_path;
    std::string out_dir;
    app.add_option("--seed", seed, "run seed (env DNAS_SEED)");
    app.add_option("--config", config_path, "config file (JSON)");
    app.add_option("--out", out_dir, "output directory");

    // run
    auto* run = app.add_subcommand("run", "execute a scenario from the threat catalog");
    std::string scenario = "happy-path";
    std::string scenario_file;
    run->add_option("--scenario", scenario, "scenario id");
    run->add_option("--scenario-file", scenario_file, "declarative scenario JSON file");

    // validate
    auto* validate = app.add_subcommand("validate", "validate a tag fixture against a run state");
    std::string tag_path, pid_opt, state_dir, node = "retailer-1";
    validate->add_option("--tag", tag_path, "tag fixture JSON")->required();
    validate->add_option("--pid", pid_opt, "expected product id")->required();
    validate->add_option("--state", state_dir, "run output directory")->required();
    validate->add_option("--node", node, "validating entity");

    // explore
    auto* explore = app.add_subcommand("explore", "inspect a chain dump");
    std::string chain_path, tx_hash, explore_pid;
    std::int64_t height = -1;
    explore->add_option("--chain", chain_path, "chain JSONL dump")->required();
    explore->add_option("--height", height, "block height");
    explore->add_option("--tx", tx_hash, "transaction hash (hex)");
    explore->add_option("--pid", explore_pid, "events for a product id");

    // dump
    auto* dump = app.add_subcommand("dump", "canonical JSON dump of a store or chain");
    std::string dump_store, dump_chain, dump_pid;
    dump->add_option("--store", dump_store, "provenance store JSONL");
    dump->add_option("--chain", dump_chain, "chain JSONL");
    dump->add_option("--pid", dump_pid, "single product id");

    // keys
    auto* keys = app.add_subcommand("keys", "keystore management: gen | rotate | status");
    std::string keys_action, keystore_path, keys_entity, passphrase;
    keys->add_option("action", keys_action, "gen | rotate | status")->required();
    keys->add_option("--keystore", keystore_path, "keystore file")->required();
    keys->add_option("--entity", keys_entity, "entity id");
    keys->add_option("--passphrase", passphrase, "encrypt key material at rest");

    // analyze-doublespend
    auto* analyze = app.add_subcommand("analyze-doublespend",
                                       "hashrate-based double-spend success probability");
    std::string q_csv = "0.1,0.2,0.3,0.4,0.45";
    std::string z_csv = "0,1,2,4,6";
    std::string mode = "both";
    std::string csv_path;
    std::uint64_t trials = 1'000'000;
    analyze->add_option("--q", q_csv, "attacker hashrate fractions, comma separated");
    analyze->add_option("--z", z_csv, "confirmation depths, comma separated");
    analyze->add_option("--mode", mode, "closed-form | monte-carlo | both");
    analyze->add_option("--trials", trials, "Monte Carlo trials per cell");
    analyze->add_option("--csv", csv_path, "write the table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) {
            sim::SimConfig cfg;
            if (!scenario_file.empty()) cfg = sim::SimConfig::from_file(scenario_file);
            if (run->count("--scenario") != 0 || scenario_file.empty()) cfg.scenario = scenario;
            if (app.count("--seed") != 0) cfg.seed = seed;
            merge_config_file(cfg, config_path, app.count("--seed") != 0, false, false, false);
            if (!sim::scenario_known(cfg.scenario))
                throw Error(ErrorCode::UnknownScenario, cfg.scenario);
            return cmd_run(cfg, out_dir);
        }
        if (*validate) return cmd_validate(tag_path, pid_opt, state_dir, node);
        if (*explore) return cmd_explore(chain_path, height, tx_hash, explore_pid);
        if (*dump) return cmd_dump(dump_store, dump_chain, dump_pid);
        if (*keys) return cmd_keys(keys_action, keystore_path, keys_entity, passphrase, seed);
        if (*analyze) return cmd_analyze(q_csv, z_csv, mode, trials, seed, csv_path);
        return kExitUsage;
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::StateRootMismatch:
            case ErrorCode::MerkleMismatch:
            case ErrorCode::GasLimitExceeded:
                std::cerr << "internal invariant violation: " << e.what() << "\n";
                return kExitInternal;
            default:
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
