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

#include <cstdint>
#include <optional>
#include <vector>

#include "chaincoord/chain.hpp"

namespace chaincoord {

// An instant-finality chain owned by a closed validator group. Every sealed
// block is final on arrival; once archived the chain accepts nothing further.
struct Sidechain {
    Hash256 id{};
    std::vector<AccountId> validators;
    ChainView chain;
    uint64_t keyset_version = 0;
    // Chain id of the host chain whose pinning contract anchors this one;
    // empty for unpinned throwaway chains.
    std::optional<Hash256> pin_target;
    bool archived = false;
};

// Fresh sidechain: instant-mode genesis whose state carries the id and
// validator set, with every validator funded from `validator_funding`.
Sidechain make_sidechain(const Hash256& id, std::vector<AccountId> validators,
                         uint64_t keyset_version, int64_t timestamp, Wei validator_funding);

// Seals `txs` into the next final block. Throws ChainArchived once archived.
const BlockRecord& seal_block(Sidechain& side, const std::vector<Transaction>& txs,
                              int64_t timestamp, const GasSchedule& schedule);

// One level of a pinning hierarchy: the chain whose pinning contract holds
// the pins filed one level up, plus the finality rule for that chain.
// `chain_id` is the key under which THIS chain's own pins are filed on the
// next level down (unused for the root).
struct PinStackLevel {
    Hash256 chain_id{};
    const ChainView* chain = nullptr;
    FinalityMode mode = FinalityMode::Probabilistic;
    FinalityPolicy policy{};
};

enum class PinStatus { Pending, Final };

// A pin is final iff the block holding it is final on its chain and,
// recursively, some pin of that chain at the same-or-later height is final
// one level down. `stack` runs from the chain holding the pin (front) to the
// root coordination chain (back); the one-level stack is direct pinning.
// Throws UnknownPin when no pin for (sidechain_id, pinned_number) exists.
PinStatus pin_finality(const Hash256& sidechain_id, uint64_t pinned_number,
                       const std::vector<PinStackLevel>& stack);

// Offline image of a finished sidechain. Integrity chain: the pinned hash
// commits to header_bytes, whose state_commitment commits to state_bytes.
struct ArchiveBlob {
    Bytes header_bytes;
    Bytes state_bytes;
    Hash256 final_hash{};
};

// File form: magic "EPSA1", then header_bytes, state_bytes and final_hash,
// each u32-length-prefixed. Round trips bit-exactly.
Bytes encode_archive(const ArchiveBlob& blob);
ArchiveBlob decode_archive(BytesView data); // throws CorruptBlob

// Seals the sidechain for offline storage. Requires a pin of the head block
// to be final across `stack` (throws FinalPinNotFinal otherwise); marks the
// sidechain archived.
ArchiveBlob archive_sidechain(Sidechain& side, const std::vector<PinStackLevel>& stack);

// Rebuilds a sidechain from an archive, trusting only the root chain's pin:
// NoPinFound when the root pins nothing at the blob's height for its id,
// PinMismatch when the pinned hash disagrees with digest(header_bytes), and
// CorruptBlob for any internal inconsistency. The restored chain resumes
// from the final block.
Sidechain restore_sidechain(const ArchiveBlob& blob, const ChainView& root_chain);
Sidechain restore_sidechain(BytesView encoded, const ChainView& root_chain);

} // namespace chaincoord
