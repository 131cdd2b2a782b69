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

#pragma once

#include <map>
#include <vector>

#include "chaincoord/bytes.hpp"
#include "chaincoord/codec.hpp"
#include "chaincoord/contracts.hpp"
#include "chaincoord/gas.hpp"

namespace chaincoord {

struct Account {
    uint64_t nonce = 0;
    Wei balance = 0;
};

// Nonces are a signed-64-bit counter in wire formats; the last usable value.
inline constexpr uint64_t kMaxNonce = (uint64_t{1} << 63) - 1;

// Identity a chain carries inside its own state so an archived chain can be
// rebuilt from state bytes alone.
struct ChainMeta {
    Hash256 chain_id{};
    std::vector<AccountId> validators;
    uint64_t keyset_version = 0;
};

struct ContractHub {
    RegistryContract registry;
    PinningContract pinning;
    KeysetContract keyset;
    XtxContract xtx;
};

// Everything a block commits to. Serialization is canonical (sorted maps,
// fixed field order), so two states with equal contents always produce the
// same commitment and replaying a chain reproduces commitments exactly.
struct WorldState {
    ChainMeta meta;
    std::map<AccountId, Account> accounts;
    std::map<Hash256, Bytes> kv; // flat keyed store standing in for app state
    ContractHub contracts;

    Account& account(const AccountId& id) { return accounts[id]; }
    const Account* find_account(const AccountId& id) const;

    Bytes serialize() const;
    Hash256 commitment() const;
    static WorldState deserialize(BytesView data);
};

// Gas for a contract call under `schedule`: pin_tx_gas for pin_add, otherwise
// intrinsic + kWordGas per 32-byte word of stored payload. A key-set vote that
// activates additionally pays keyset_store_gas; worst_case_call_gas prices the
// activation in, actual usage is settled after execution.
uint64_t call_gas_cost(const ContractCall& call, const GasSchedule& schedule);
uint64_t worst_case_call_gas(const ContractCall& call, const GasSchedule& schedule);

struct CallOutcome {
    ContractError error = ContractError::None;
    uint64_t gas_used = 0;
};

// Routes a call to the hub and applies it to `state`. Malformed ops or
// arguments come back as ContractError::BadCall; gas is charged either way.
CallOutcome execute_call(WorldState& state, const AccountId& sender, const ContractCall& call,
                         const GasSchedule& schedule, const ExecContext& ctx);

} // namespace chaincoord
