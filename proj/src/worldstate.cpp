// Copyright 2026-present the chaincoord authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chaincoord/worldstate.hpp"

#include "chaincoord/errors.hpp"

namespace chaincoord {

const Account* WorldState::find_account(const AccountId& id) const {
    auto it = accounts.find(id);
    return it == accounts.end() ? nullptr : &it->second;
}

Bytes WorldState::serialize() const {
    ByteWriter writer;
    writer.hash(meta.chain_id);
    writer.u32(static_cast<uint32_t>(meta.validators.size()));
    for (const AccountId& validator : meta.validators) writer.account(validator);
    writer.u64(meta.keyset_version);

    writer.u32(static_cast<uint32_t>(accounts.size()));
    for (const auto& [id, account] : accounts) {
        writer.account(id);
        writer.u64(account.nonce);
        writer.u128(account.balance);
    }

    writer.u32(static_cast<uint32_t>(kv.size()));
    for (const auto& [key, value] : kv) {
        writer.hash(key);
        writer.blob(value);
    }

    contracts.registry.serialize(writer);
    contracts.pinning.serialize(writer);
    contracts.keyset.serialize(writer);
    contracts.xtx.serialize(writer);
    return writer.take();
}

Hash256 WorldState::commitment() const {
    const Bytes bytes = serialize();
    return sha256(bytes);
}

WorldState WorldState::deserialize(BytesView data) {
    ByteReader reader(data);
    WorldState state;
    state.meta.chain_id = reader.hash();
    const uint32_t validators = reader.u32();
    for (uint32_t i = 0; i < validators; ++i) state.meta.validators.push_back(reader.account());
    state.meta.keyset_version = reader.u64();

    const uint32_t accounts = reader.u32();
    for (uint32_t i = 0; i < accounts; ++i) {
        const AccountId id = reader.account();
        Account account;
        account.nonce = reader.u64();
        account.balance = reader.u128();
        state.accounts.emplace(id, account);
    }

    const uint32_t kv_entries = reader.u32();
    for (uint32_t i = 0; i < kv_entries; ++i) {
        const Hash256 key = reader.hash();
        state.kv.emplace(key, reader.blob());
    }

    state.contracts.registry = RegistryContract::deserialize(reader);
    state.contracts.pinning = PinningContract::deserialize(reader);
    state.contracts.keyset = KeysetContract::deserialize(reader);
    state.contracts.xtx = XtxContract::deserialize(reader);
    reader.expect_done();
    return state;
}

namespace {

uint64_t words_for(size_t bytes) { return (static_cast<uint64_t>(bytes) + 31) / 32; }

} // namespace

uint64_t call_gas_cost(const ContractCall& call, const GasSchedule& schedule) {
    if (call.contract == pinning_address() && call.op == "pin_add") return schedule.pin_tx_gas;
    return schedule.intrinsic_tx_gas + kWordGas * std::max<uint64_t>(1, words_for(call.args.size()));
}

uint64_t worst_case_call_gas(const ContractCall& call, const GasSchedule& schedule) {
    uint64_t gas = call_gas_cost(call, schedule);
    if (call.contract == keyset_address() && call.op == "vote") gas += schedule.keyset_store_gas;
    return gas;
}

// Arguments are decoded in full (including the trailing-bytes check) before
// any state machine runs, so a malformed call can never half-apply.
CallOutcome execute_call(WorldState& state, const AccountId& sender, const ContractCall& call,
                         const GasSchedule& schedule, const ExecContext& ctx) {
    CallOutcome outcome;
    outcome.gas_used = call_gas_cost(call, schedule);
    try {
        ByteReader args(call.args);
        if (call.contract == registry_address() && call.op == "register") {
            const RegistryEntry entry = deserialize_registry_entry(args);
            args.expect_done();
            outcome.error = state.contracts.registry.register_domain(entry, sender, ctx);
        } else if (call.contract == registry_address() && call.op == "update") {
            const RegistryEntry entry = deserialize_registry_entry(args);
            args.expect_done();
            outcome.error = state.contracts.registry.update_domain(entry, sender, ctx);
        } else if (call.contract == pinning_address() && call.op == "add_masked") {
            const Hash256 sidechain = args.hash();
            const Hash256 commitment = args.hash();
            args.expect_done();
            outcome.error = state.contracts.pinning.add_masked(sidechain, commitment, ctx);
        } else if (call.contract == pinning_address() && call.op == "unmask") {
            const Hash256 sidechain = args.hash();
            const Bytes salt = args.blob();
            const AccountId account = args.account();
            args.expect_done();
            outcome.error = state.contracts.pinning.unmask(sidechain, salt, account, ctx);
        } else if (call.contract == pinning_address() && call.op == "pin_add") {
            const Hash256 sidechain = args.hash();
            const uint64_t number = args.u64();
            const Hash256 block_hash = args.hash();
            args.expect_done();
            outcome.error =
                state.contracts.pinning.add_pin(sidechain, number, block_hash, sender, ctx);
        } else if (call.contract == keyset_address() && call.op == "propose") {
            const Hash256 sidechain = args.hash();
            const uint64_t version = args.u64();
            const PublicKey48 key = args.key48();
            args.expect_done();
            outcome.error = state.contracts.keyset.propose(sidechain, version, key, ctx);
        } else if (call.contract == keyset_address() && call.op == "vote") {
            const Hash256 sidechain = args.hash();
            const uint64_t version = args.u64();
            args.expect_done();
            const KeysetContract::VoteOutcome vote =
                state.contracts.keyset.vote(sidechain, version, sender, state.contracts.pinning,
                                            ctx);
            outcome.error = vote.error;
            if (vote.activated) outcome.gas_used += schedule.keyset_store_gas;
        } else if (call.contract == xtx_address() && call.op == "start") {
            const Hash256 tx_id = args.hash();
            std::set<Hash256> sidechains;
            const uint32_t count = args.u32();
            for (uint32_t i = 0; i < count; ++i) sidechains.insert(args.hash());
            const uint64_t timeout_blocks = args.u64();
            args.expect_done();
            outcome.error = state.contracts.xtx.start(tx_id, sidechains, timeout_blocks, sender,
                                                      ctx);
        } else if (call.contract == xtx_address() && call.op == "commit") {
            const Hash256 tx_id = args.hash();
            std::vector<std::pair<Hash256, uint64_t>> versions;
            const uint32_t count = args.u32();
            for (uint32_t i = 0; i < count; ++i) {
                const Hash256 sidechain = args.hash();
                versions.emplace_back(sidechain, args.u64());
            }
            args.expect_done();
            outcome.error =
                state.contracts.xtx.commit(tx_id, versions, state.contracts.keyset, ctx);
        } else if (call.contract == xtx_address() && call.op == "ignore") {
            const Hash256 tx_id = args.hash();
            args.expect_done();
            outcome.error = state.contracts.xtx.ignore(tx_id, ctx);
        } else if (call.contract == datastore_address() && call.op == "put") {
            const uint32_t count = args.u32();
            std::vector<KvWrite> writes;
            writes.reserve(count);
            for (uint32_t i = 0; i < count; ++i) {
                KvWrite write;
                write.key = args.hash();
                write.value = args.blob();
                writes.push_back(std::move(write));
            }
            args.expect_done();
            for (KvWrite& write : writes) state.kv[write.key] = std::move(write.value);
        } else {
            outcome.error = ContractError::BadCall;
        }
    } catch (const Error& e) {
        if (e.code() != Errc::DecodeError) throw;
        outcome.error = ContractError::BadCall;
    }
    return outcome;
}

} // namespace chaincoord
