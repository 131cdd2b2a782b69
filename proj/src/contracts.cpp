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

#include "chaincoord/contracts.hpp"

#include <algorithm>

#include "chaincoord/errors.hpp"

namespace chaincoord {

std::string_view contract_error_name(ContractError error) {
    switch (error) {
    case ContractError::None: return "None";
    case ContractError::DomainTaken: return "DomainTaken";
    case ContractError::NotOwner: return "NotOwner";
    case ContractError::StalePin: return "StalePin";
    case ContractError::NotParticipant: return "NotParticipant";
    case ContractError::UnknownSidechain: return "UnknownSidechain";
    case ContractError::BadReveal: return "BadReveal";
    case ContractError::BadVersion: return "BadVersion";
    case ContractError::AlreadyVoted: return "AlreadyVoted";
    case ContractError::NothingProposed: return "NothingProposed";
    case ContractError::DuplicateTxId: return "DuplicateTxId";
    case ContractError::NotStarted: return "NotStarted";
    case ContractError::AlreadyDecided: return "AlreadyDecided";
    case ContractError::TimeoutExpired: return "TimeoutExpired";
    case ContractError::StaleAttestation: return "StaleAttestation";
    case ContractError::BadCall: return "BadCall";
    }
    return "Unknown";
}

std::string_view xtx_state_name(XtxState state) {
    switch (state) {
    case XtxState::Started: return "Started";
    case XtxState::Committed: return "Committed";
    case XtxState::Ignored: return "Ignored";
    }
    return "Unknown";
}

// --------------------------------------------------------------------------
// Registry

ContractError RegistryContract::register_domain(const RegistryEntry& entry,
                                                const AccountId& sender, const ExecContext& ctx) {
    if (entry.domain.empty()) return ContractError::BadCall;
    if (entries_.count(entry.domain) != 0) return ContractError::DomainTaken;
    RegistryEntry stored = entry;
    stored.owner = sender;
    stored.updated_at_block = ctx.block_number;
    entries_.emplace(stored.domain, std::move(stored));
    return ContractError::None;
}

ContractError RegistryContract::update_domain(const RegistryEntry& entry, const AccountId& sender,
                                              const ExecContext& ctx) {
    auto it = entries_.find(entry.domain);
    if (it == entries_.end()) return ContractError::BadCall;
    if (it->second.owner != sender) return ContractError::NotOwner;
    RegistryEntry stored = entry;
    stored.owner = sender;
    stored.updated_at_block = ctx.block_number;
    it->second = std::move(stored);
    return ContractError::None;
}

const RegistryEntry* RegistryContract::lookup(std::string_view domain) const {
    auto it = entries_.find(std::string(domain));
    return it == entries_.end() ? nullptr : &it->second;
}

void serialize_registry_entry(ByteWriter& writer, const RegistryEntry& entry) {
    writer.str(entry.domain);
    writer.account(entry.owner);
    writer.u32(static_cast<uint32_t>(entry.node_endpoints.size()));
    for (const Endpoint& ep : entry.node_endpoints) {
        writer.str(ep.host);
        writer.u16(ep.port);
    }
    writer.u32(static_cast<uint32_t>(entry.key_fingerprints.size()));
    for (const Hash256& fp : entry.key_fingerprints) writer.hash(fp);
    writer.u64(entry.updated_at_block);
}

RegistryEntry deserialize_registry_entry(ByteReader& reader) {
    RegistryEntry entry;
    entry.domain = reader.str();
    entry.owner = reader.account();
    const uint32_t endpoints = reader.u32();
    entry.node_endpoints.reserve(endpoints);
    for (uint32_t i = 0; i < endpoints; ++i) {
        Endpoint ep;
        ep.host = reader.str();
        ep.port = reader.u16();
        entry.node_endpoints.push_back(std::move(ep));
    }
    const uint32_t fingerprints = reader.u32();
    entry.key_fingerprints.reserve(fingerprints);
    for (uint32_t i = 0; i < fingerprints; ++i) entry.key_fingerprints.push_back(reader.hash());
    entry.updated_at_block = reader.u64();
    return entry;
}

void RegistryContract::serialize(ByteWriter& writer) const {
    writer.u32(static_cast<uint32_t>(entries_.size()));
    for (const auto& [domain, entry] : entries_) serialize_registry_entry(writer, entry);
}

RegistryContract RegistryContract::deserialize(ByteReader& reader) {
    RegistryContract contract;
    const uint32_t count = reader.u32();
    for (uint32_t i = 0; i < count; ++i) {
        RegistryEntry entry = deserialize_registry_entry(reader);
        std::string domain = entry.domain;
        contract.entries_.emplace(std::move(domain), std::move(entry));
    }
    return contract;
}

// --------------------------------------------------------------------------
// Pinning + membership

Hash256 participant_commitment(BytesView salt, const AccountId& account) {
    Bytes preimage(salt.begin(), salt.end());
    preimage.insert(preimage.end(), account.v.begin(), account.v.end());
    return sha256(preimage);
}

ContractError PinningContract::add_masked(const Hash256& sidechain_id, const Hash256& commitment,
                                          const ExecContext&) {
    Slot& slot = sidechains_[sidechain_id]; // first record creates the sidechain
    slot.participants.push_back(ParticipantRecord{ParticipantStatus::Masked, commitment, {}});
    return ContractError::None;
}

ContractError PinningContract::unmask(const Hash256& sidechain_id, BytesView salt,
                                      const AccountId& account, const ExecContext&) {
    auto it = sidechains_.find(sidechain_id);
    if (it == sidechains_.end()) return ContractError::UnknownSidechain;
    const Hash256 commitment = participant_commitment(salt, account);
    for (ParticipantRecord& record : it->second.participants) {
        if (record.status == ParticipantStatus::Masked && record.commitment == commitment) {
            record.status = ParticipantStatus::Unmasked;
            record.account = account;
            return ContractError::None;
        }
    }
    return ContractError::BadReveal;
}

ContractError PinningContract::add_pin(const Hash256& sidechain_id, uint64_t block_number,
                                       const Hash256& block_hash, const AccountId& poster,
                                       const ExecContext& ctx) {
    auto it = sidechains_.find(sidechain_id);
    if (it == sidechains_.end()) return ContractError::UnknownSidechain;
    if (!is_unmasked_participant(sidechain_id, poster)) return ContractError::NotParticipant;
    const std::vector<PinRecord>& pins = it->second.pins;
    if (!pins.empty() && block_number <= pins.back().block_number) return ContractError::StalePin;
    it->second.pins.push_back(
        PinRecord{sidechain_id, block_number, block_hash, poster, ctx.block_number});
    return ContractError::None;
}

bool PinningContract::known_sidechain(const Hash256& sidechain_id) const {
    return sidechains_.count(sidechain_id) != 0;
}

bool PinningContract::is_unmasked_participant(const Hash256& sidechain_id,
                                              const AccountId& account) const {
    auto it = sidechains_.find(sidechain_id);
    if (it == sidechains_.end()) return false;
    return std::any_of(it->second.participants.begin(), it->second.participants.end(),
                       [&](const ParticipantRecord& record) {
                           return record.status == ParticipantStatus::Unmasked &&
                                  record.account == account;
                       });
}

size_t PinningContract::unmasked_count(const Hash256& sidechain_id) const {
    auto it = sidechains_.find(sidechain_id);
    if (it == sidechains_.end()) return 0;
    return static_cast<size_t>(
        std::count_if(it->second.participants.begin(), it->second.participants.end(),
                      [](const ParticipantRecord& record) {
                          return record.status == ParticipantStatus::Unmasked;
                      }));
}

const PinRecord* PinningContract::latest_pin(const Hash256& sidechain_id) const {
    auto it = sidechains_.find(sidechain_id);
    if (it == sidechains_.end() || it->second.pins.empty()) return nullptr;
    return &it->second.pins.back();
}

const std::vector<PinRecord>* PinningContract::pins(const Hash256& sidechain_id) const {
    auto it = sidechains_.find(sidechain_id);
    return it == sidechains_.end() ? nullptr : &it->second.pins;
}

size_t PinningContract::pin_count(const Hash256& sidechain_id) const {
    const std::vector<PinRecord>* list = pins(sidechain_id);
    return list == nullptr ? 0 : list->size();
}

void PinningContract::seed_unmasked(const Hash256& sidechain_id, const AccountId& account) {
    Slot& slot = sidechains_[sidechain_id];
    slot.participants.push_back(
        ParticipantRecord{ParticipantStatus::Unmasked, Hash256{}, account});
}

void PinningContract::serialize(ByteWriter& writer) const {
    writer.u32(static_cast<uint32_t>(sidechains_.size()));
    for (const auto& [id, slot] : sidechains_) {
        writer.hash(id);
        writer.u32(static_cast<uint32_t>(slot.participants.size()));
        for (const ParticipantRecord& record : slot.participants) {
            writer.u8(static_cast<uint8_t>(record.status));
            writer.hash(record.commitment);
            writer.u8(record.account.has_value() ? 1 : 0);
            if (record.account.has_value()) writer.account(*record.account);
        }
        writer.u32(static_cast<uint32_t>(slot.pins.size()));
        for (const PinRecord& pin : slot.pins) {
            writer.hash(pin.sidechain_id);
            writer.u64(pin.block_number);
            writer.hash(pin.block_hash);
            writer.account(pin.poster);
            writer.u64(pin.posted_at_block);
        }
    }
}

PinningContract PinningContract::deserialize(ByteReader& reader) {
    PinningContract contract;
    const uint32_t sidechains = reader.u32();
    for (uint32_t i = 0; i < sidechains; ++i) {
        const Hash256 id = reader.hash();
        Slot slot;
        const uint32_t participants = reader.u32();
        for (uint32_t j = 0; j < participants; ++j) {
            ParticipantRecord record;
            record.status = static_cast<ParticipantStatus>(reader.u8());
            record.commitment = reader.hash();
            if (reader.u8() != 0) record.account = reader.account();
            slot.participants.push_back(record);
        }
        const uint32_t pins = reader.u32();
        for (uint32_t j = 0; j < pins; ++j) {
            PinRecord pin;
            pin.sidechain_id = reader.hash();
            pin.block_number = reader.u64();
            pin.block_hash = reader.hash();
            pin.poster = reader.account();
            pin.posted_at_block = reader.u64();
            slot.pins.push_back(pin);
        }
        contract.sidechains_.emplace(id, std::move(slot));
    }
    return contract;
}

// --------------------------------------------------------------------------
// Key-set registry

ContractError KeysetContract::propose(const Hash256& sidechain_id, uint64_t version,
                                      const PublicKey48& public_key, const ExecContext&) {
    if (version != active_version(sidechain_id) + 1) return ContractError::BadVersion;
    std::vector<KeysetRecord>& records = records_[sidechain_id];
    const bool exists = std::any_of(records.begin(), records.end(),
                                    [&](const KeysetRecord& r) { return r.version == version; });
    if (exists) return ContractError::BadVersion;
    KeysetRecord record;
    record.sidechain_id = sidechain_id;
    record.version = version;
    record.public_key = public_key;
    record.status = KeysetStatus::Proposed;
    records.push_back(std::move(record));
    return ContractError::None;
}

KeysetContract::VoteOutcome KeysetContract::vote(const Hash256& sidechain_id, uint64_t version,
                                                 const AccountId& voter,
                                                 const PinningContract& membership,
                                                 const ExecContext& ctx) {
    if (!membership.is_unmasked_participant(sidechain_id, voter))
        return {ContractError::NotParticipant, false};
    auto it = records_.find(sidechain_id);
    if (it == records_.end()) return {ContractError::NothingProposed, false};
    auto record_it =
        std::find_if(it->second.begin(), it->second.end(), [&](const KeysetRecord& r) {
            return r.version == version && r.status == KeysetStatus::Proposed;
        });
    if (record_it == it->second.end()) return {ContractError::NothingProposed, false};
    if (record_it->votes.count(voter) != 0) return {ContractError::AlreadyVoted, false};
    record_it->votes.insert(voter);

    // Strict majority of currently unmasked participants.
    const size_t unmasked = membership.unmasked_count(sidechain_id);
    if (record_it->votes.size() * 2 <= unmasked) return {ContractError::None, false};
    for (KeysetRecord& record : it->second) {
        if (record.status == KeysetStatus::Active) record.status = KeysetStatus::Superseded;
    }
    record_it->status = KeysetStatus::Active;
    record_it->activated_at_block = ctx.block_number;
    return {ContractError::None, true};
}

const KeysetRecord* KeysetContract::active(const Hash256& sidechain_id) const {
    auto it = records_.find(sidechain_id);
    if (it == records_.end()) return nullptr;
    for (const KeysetRecord& record : it->second) {
        if (record.status == KeysetStatus::Active) return &record;
    }
    return nullptr;
}

const KeysetRecord* KeysetContract::find(const Hash256& sidechain_id, uint64_t version) const {
    auto it = records_.find(sidechain_id);
    if (it == records_.end()) return nullptr;
    for (const KeysetRecord& record : it->second) {
        if (record.version == version) return &record;
    }
    return nullptr;
}

uint64_t KeysetContract::active_version(const Hash256& sidechain_id) const {
    const KeysetRecord* record = active(sidechain_id);
    return record == nullptr ? 0 : record->version;
}

void KeysetContract::serialize(ByteWriter& writer) const {
    writer.u32(static_cast<uint32_t>(records_.size()));
    for (const auto& [id, records] : records_) {
        writer.hash(id);
        writer.u32(static_cast<uint32_t>(records.size()));
        for (const KeysetRecord& record : records) {
            writer.hash(record.sidechain_id);
            writer.u64(record.version);
            writer.key48(record.public_key);
            writer.u8(static_cast<uint8_t>(record.status));
            writer.u32(static_cast<uint32_t>(record.votes.size()));
            for (const AccountId& voter : record.votes) writer.account(voter);
            writer.u64(record.activated_at_block);
        }
    }
}

KeysetContract KeysetContract::deserialize(ByteReader& reader) {
    KeysetContract contract;
    const uint32_t sidechains = reader.u32();
    for (uint32_t i = 0; i < sidechains; ++i) {
        const Hash256 id = reader.hash();
        std::vector<KeysetRecord> records;
        const uint32_t count = reader.u32();
        for (uint32_t j = 0; j < count; ++j) {
            KeysetRecord record;
            record.sidechain_id = reader.hash();
            record.version = reader.u64();
            record.public_key = reader.key48();
            record.status = static_cast<KeysetStatus>(reader.u8());
            const uint32_t votes = reader.u32();
            for (uint32_t k = 0; k < votes; ++k) record.votes.insert(reader.account());
            record.activated_at_block = reader.u64();
            records.push_back(std::move(record));
        }
        contract.records_.emplace(id, std::move(records));
    }
    return contract;
}

// --------------------------------------------------------------------------
// Crosschain coordination

ContractError XtxContract::start(const Hash256& tx_id, const std::set<Hash256>& sidechains,
                                 uint64_t timeout_blocks, const AccountId& initiator,
                                 const ExecContext& ctx) {
    if (sidechains.empty() || timeout_blocks == 0) return ContractError::BadCall;
    if (txs_.count(tx_id) != 0) return ContractError::DuplicateTxId;
    CrosschainTxRecord record;
    record.tx_id = tx_id;
    record.state = XtxState::Started;
    record.started_at_block = ctx.block_number;
    record.timeout_block = ctx.block_number + timeout_blocks;
    record.initiator = initiator;
    record.sidechains = sidechains;
    txs_.emplace(tx_id, std::move(record));
    return ContractError::None;
}

ContractError XtxContract::commit(
    const Hash256& tx_id, const std::vector<std::pair<Hash256, uint64_t>>& attested_versions,
    const KeysetContract& keysets, const ExecContext& ctx) {
    auto it = txs_.find(tx_id);
    if (it == txs_.end()) return ContractError::NotStarted;
    CrosschainTxRecord& record = it->second;
    if (record.state != XtxState::Started) return ContractError::AlreadyDecided;
    if (ctx.block_number > record.timeout_block) return ContractError::TimeoutExpired;
    // One attestation per leg, formed under the version that is Active now.
    if (attested_versions.size() != record.sidechains.size()) return ContractError::BadCall;
    for (const auto& [sidechain_id, version] : attested_versions) {
        if (record.sidechains.count(sidechain_id) == 0) return ContractError::BadCall;
        if (keysets.active_version(sidechain_id) != version)
            return ContractError::StaleAttestation;
    }
    record.state = XtxState::Committed;
    record.decided_at_block = ctx.block_number;
    return ContractError::None;
}

ContractError XtxContract::ignore(const Hash256& tx_id, const ExecContext& ctx) {
    auto it = txs_.find(tx_id);
    if (it == txs_.end()) return ContractError::NotStarted;
    if (it->second.state != XtxState::Started) return ContractError::AlreadyDecided;
    it->second.state = XtxState::Ignored;
    it->second.decided_at_block = ctx.block_number;
    return ContractError::None;
}

XtxState XtxContract::status(const Hash256& tx_id, uint64_t at_block) const {
    auto it = txs_.find(tx_id);
    if (it == txs_.end()) fail(Errc::NotFound, "unknown crosschain transaction");
    const CrosschainTxRecord& record = it->second;
    if (record.state == XtxState::Started && at_block > record.timeout_block)
        return XtxState::Ignored;
    return record.state;
}

const CrosschainTxRecord* XtxContract::find(const Hash256& tx_id) const {
    auto it = txs_.find(tx_id);
    return it == txs_.end() ? nullptr : &it->second;
}

void XtxContract::serialize(ByteWriter& writer) const {
    writer.u32(static_cast<uint32_t>(txs_.size()));
    for (const auto& [id, record] : txs_) {
        writer.hash(record.tx_id);
        writer.u8(static_cast<uint8_t>(record.state));
        writer.u64(record.started_at_block);
        writer.u64(record.timeout_block);
        writer.u64(record.decided_at_block);
        writer.account(record.initiator);
        writer.u32(static_cast<uint32_t>(record.sidechains.size()));
        for (const Hash256& sidechain : record.sidechains) writer.hash(sidechain);
    }
}

XtxContract XtxContract::deserialize(ByteReader& reader) {
    XtxContract contract;
    const uint32_t count = reader.u32();
    for (uint32_t i = 0; i < count; ++i) {
        CrosschainTxRecord record;
        record.tx_id = reader.hash();
        record.state = static_cast<XtxState>(reader.u8());
        record.started_at_block = reader.u64();
        record.timeout_block = reader.u64();
        record.decided_at_block = reader.u64();
        record.initiator = reader.account();
        const uint32_t sidechains = reader.u32();
        for (uint32_t j = 0; j < sidechains; ++j) record.sidechains.insert(reader.hash());
        contract.txs_.emplace(record.tx_id, record);
    }
    return contract;
}

// --------------------------------------------------------------------------
// Addresses and call builders

namespace {

AccountId fixed_address(uint8_t tail) {
    AccountId id{};
    id.v[0] = 0xcc; // reserved prefix, never collides with name-derived ids
    id.v[19] = tail;
    return id;
}

} // namespace

AccountId registry_address() { return fixed_address(1); }
AccountId pinning_address() { return fixed_address(2); }
AccountId keyset_address() { return fixed_address(3); }
AccountId xtx_address() { return fixed_address(4); }
AccountId datastore_address() { return fixed_address(5); }

ContractCall make_registry_register(const RegistryEntry& entry) {
    ByteWriter writer;
    serialize_registry_entry(writer, entry);
    return ContractCall{registry_address(), "register", writer.take()};
}

ContractCall make_registry_update(const RegistryEntry& entry) {
    ByteWriter writer;
    serialize_registry_entry(writer, entry);
    return ContractCall{registry_address(), "update", writer.take()};
}

ContractCall make_add_masked(const Hash256& sidechain_id, const Hash256& commitment) {
    ByteWriter writer;
    writer.hash(sidechain_id);
    writer.hash(commitment);
    return ContractCall{pinning_address(), "add_masked", writer.take()};
}

ContractCall make_unmask(const Hash256& sidechain_id, BytesView salt, const AccountId& account) {
    ByteWriter writer;
    writer.hash(sidechain_id);
    writer.blob(salt);
    writer.account(account);
    return ContractCall{pinning_address(), "unmask", writer.take()};
}

ContractCall make_pin_add(const Hash256& sidechain_id, uint64_t block_number,
                          const Hash256& block_hash) {
    ByteWriter writer;
    writer.hash(sidechain_id);
    writer.u64(block_number);
    writer.hash(block_hash);
    return ContractCall{pinning_address(), "pin_add", writer.take()};
}

ContractCall make_keyset_propose(const Hash256& sidechain_id, uint64_t version,
                                 const PublicKey48& public_key) {
    ByteWriter writer;
    writer.hash(sidechain_id);
    writer.u64(version);
    writer.key48(public_key);
    return ContractCall{keyset_address(), "propose", writer.take()};
}

ContractCall make_keyset_vote(const Hash256& sidechain_id, uint64_t version) {
    ByteWriter writer;
    writer.hash(sidechain_id);
    writer.u64(version);
    return ContractCall{keyset_address(), "vote", writer.take()};
}

ContractCall make_xtx_start(const Hash256& tx_id, const std::set<Hash256>& sidechains,
                            uint64_t timeout_blocks) {
    ByteWriter writer;
    writer.hash(tx_id);
    writer.u32(static_cast<uint32_t>(sidechains.size()));
    for (const Hash256& sidechain : sidechains) writer.hash(sidechain);
    writer.u64(timeout_blocks);
    return ContractCall{xtx_address(), "start", writer.take()};
}

ContractCall make_xtx_commit(const Hash256& tx_id,
                             const std::vector<std::pair<Hash256, uint64_t>>& attested_versions) {
    ByteWriter writer;
    writer.hash(tx_id);
    writer.u32(static_cast<uint32_t>(attested_versions.size()));
    for (const auto& [sidechain, version] : attested_versions) {
        writer.hash(sidechain);
        writer.u64(version);
    }
    return ContractCall{xtx_address(), "commit", writer.take()};
}

ContractCall make_xtx_ignore(const Hash256& tx_id) {
    ByteWriter writer;
    writer.hash(tx_id);
    return ContractCall{xtx_address(), "ignore", writer.take()};
}

ContractCall make_kv_put(const std::vector<KvWrite>& writes) {
    ByteWriter writer;
    writer.u32(static_cast<uint32_t>(writes.size()));
    for (const KvWrite& write : writes) {
        writer.hash(write.key);
        writer.blob(write.value);
    }
    return ContractCall{datastore_address(), "put", writer.take()};
}

} // namespace chaincoord
