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

#include "chaincoord/sidechain.hpp"

#include <string_view>

#include "chaincoord/errors.hpp"

namespace chaincoord {

namespace {
constexpr std::string_view kArchiveMagic = "EPSA1";
}

Sidechain make_sidechain(const Hash256& id, std::vector<AccountId> validators,
                         uint64_t keyset_version, int64_t timestamp, Wei validator_funding) {
    auto state = std::make_shared<WorldState>();
    state->meta.chain_id = id;
    state->meta.validators = validators;
    state->meta.keyset_version = keyset_version;
    for (const AccountId& validator : validators) {
        state->account(validator).balance = validator_funding;
    }
    Sidechain side;
    side.id = id;
    side.validators = std::move(validators);
    side.keyset_version = keyset_version;
    side.chain = ChainView::genesis(FinalityMode::Instant, std::move(state), timestamp);
    return side;
}

const BlockRecord& seal_block(Sidechain& side, const std::vector<Transaction>& txs,
                              int64_t timestamp, const GasSchedule& schedule) {
    if (side.archived) fail(Errc::ChainArchived, "archived sidechains accept no blocks");
    if (side.validators.empty()) fail(Errc::InternalError, "sidechain has no validators");
    // Round-robin proposer keeps the miner field deterministic.
    const AccountId& sealer =
        side.validators[(side.chain.head_number() + 1) % side.validators.size()];
    BlockRecord block = build_block(side.chain, side.chain.head(), sealer, txs, 0, timestamp,
                                    schedule);
    const Hash256 hash = block.header.hash;
    side.chain.append_final(std::move(block));
    return side.chain.record(hash);
}

PinStatus pin_finality(const Hash256& sidechain_id, uint64_t pinned_number,
                       const std::vector<PinStackLevel>& stack) {
    if (stack.empty()) fail(Errc::InternalError, "pin stack is empty");
    const PinStackLevel& level = stack.front();
    if (level.chain == nullptr) fail(Errc::InternalError, "pin stack level has no chain");

    const PinningContract& registry = level.chain->head_state().contracts.pinning;
    const std::vector<PinRecord>* records = registry.pins(sidechain_id);
    const PinRecord* pin = nullptr;
    if (records != nullptr) {
        for (const PinRecord& candidate : *records) {
            if (candidate.block_number == pinned_number) {
                pin = &candidate;
                break;
            }
        }
    }
    if (pin == nullptr) fail(Errc::UnknownPin, "no pin at that height for the sidechain");

    // Finality of the block that recorded the pin, on this level's chain.
    Hash256 host_block;
    try {
        host_block = level.chain->canonical_at(pin->posted_at_block);
    } catch (const Error&) {
        return PinStatus::Pending;
    }
    bool host_final = false;
    try {
        host_final = is_final(*level.chain, host_block, level.policy, level.mode);
    } catch (const Error&) {
        host_final = false;
    }
    if (!host_final) return PinStatus::Pending;
    if (stack.size() == 1) return PinStatus::Final;

    // Some same-or-later pin of this chain must itself be final downstack.
    const PinningContract& lower = stack[1].chain->head_state().contracts.pinning;
    const std::vector<PinRecord>* own_pins = lower.pins(level.chain_id);
    if (own_pins == nullptr) return PinStatus::Pending;
    const std::vector<PinStackLevel> rest(stack.begin() + 1, stack.end());
    for (const PinRecord& covering : *own_pins) {
        if (covering.block_number < pin->posted_at_block) continue;
        if (pin_finality(level.chain_id, covering.block_number, rest) == PinStatus::Final)
            return PinStatus::Final;
    }
    return PinStatus::Pending;
}

Bytes encode_archive(const ArchiveBlob& blob) {
    ByteWriter writer;
    writer.raw(BytesView(reinterpret_cast<const uint8_t*>(kArchiveMagic.data()),
                         kArchiveMagic.size()));
    writer.blob(blob.header_bytes);
    writer.blob(blob.state_bytes);
    ByteWriter hash_writer;
    hash_writer.hash(blob.final_hash);
    writer.blob(hash_writer.bytes());
    return writer.take();
}

ArchiveBlob decode_archive(BytesView data) {
    try {
        ByteReader reader(data);
        for (char expected : kArchiveMagic) {
            if (reader.u8() != static_cast<uint8_t>(expected))
                fail(Errc::CorruptBlob, "bad archive magic");
        }
        ArchiveBlob blob;
        blob.header_bytes = reader.blob();
        blob.state_bytes = reader.blob();
        const Bytes hash_bytes = reader.blob();
        reader.expect_done();
        ByteReader hash_reader(hash_bytes);
        blob.final_hash = hash_reader.hash();
        hash_reader.expect_done();
        return blob;
    } catch (const Error& err) {
        if (err.code() == Errc::CorruptBlob) throw;
        fail(Errc::CorruptBlob, "archive framing does not parse");
    }
}

ArchiveBlob archive_sidechain(Sidechain& side, const std::vector<PinStackLevel>& stack) {
    const BlockHeader& head = side.chain.head_header();
    PinStatus status = PinStatus::Pending;
    try {
        status = pin_finality(side.id, head.number, stack);
    } catch (const Error& err) {
        if (err.code() != Errc::UnknownPin) throw;
    }
    if (status != PinStatus::Final)
        fail(Errc::FinalPinNotFinal, "head block's pin is not yet final on the root");

    // The pinned hash must be the head's, not a stale sibling's.
    const PinningContract& registry = stack.front().chain->head_state().contracts.pinning;
    const std::vector<PinRecord>* records = registry.pins(side.id);
    bool pinned = false;
    for (const PinRecord& pin : *records) {
        if (pin.block_number == head.number && pin.block_hash == head.hash) pinned = true;
    }
    if (!pinned) fail(Errc::FinalPinNotFinal, "final pin carries a different hash");

    ArchiveBlob blob;
    blob.header_bytes = head.hash_input();
    blob.state_bytes = side.chain.head_state().serialize();
    blob.final_hash = head.hash;
    side.archived = true;
    return blob;
}

Sidechain restore_sidechain(const ArchiveBlob& blob, const ChainView& root_chain) {
    BlockHeader header;
    WorldState state;
    try {
        header = BlockHeader::from_hash_input(blob.header_bytes);
        state = WorldState::deserialize(blob.state_bytes);
    } catch (const Error&) {
        fail(Errc::CorruptBlob, "archive contents do not parse");
    }

    const PinningContract& registry = root_chain.head_state().contracts.pinning;
    const std::vector<PinRecord>* records = registry.pins(state.meta.chain_id);
    const PinRecord* pin = nullptr;
    if (records != nullptr) {
        for (const PinRecord& candidate : *records) {
            if (candidate.block_number == header.number) pin = &candidate;
        }
    }
    if (pin == nullptr) fail(Errc::NoPinFound, "root chain pins nothing at the blob's height");

    // header.hash is digest(header_bytes) by construction of from_hash_input.
    if (pin->block_hash != header.hash)
        fail(Errc::PinMismatch, "pinned hash disagrees with the archive header");
    if (blob.final_hash != header.hash)
        fail(Errc::CorruptBlob, "final_hash does not match header_bytes");
    if (header.state_commitment != sha256(blob.state_bytes))
        fail(Errc::CorruptBlob, "state_bytes do not match the header commitment");

    Sidechain side;
    side.id = state.meta.chain_id;
    side.validators = state.meta.validators;
    side.keyset_version = state.meta.keyset_version;

    BlockRecord record;
    record.header = header;
    record.state = std::make_shared<const WorldState>(std::move(state));
    side.chain = ChainView::resume(FinalityMode::Instant, std::move(record));
    return side;
}

Sidechain restore_sidechain(BytesView encoded, const ChainView& root_chain) {
    return restore_sidechain(decode_archive(encoded), root_chain);
}

} // namespace chaincoord
