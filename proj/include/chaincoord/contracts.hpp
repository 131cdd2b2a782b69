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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "chaincoord/bytes.hpp"
#include "chaincoord/codec.hpp"

namespace chaincoord {

// Execution context every contract operation sees: the block being built.
struct ExecContext {
    uint64_t block_number = 0;
    int64_t timestamp = 0;
};

enum class ContractError : uint8_t {
    None,
    DomainTaken,
    NotOwner,
    StalePin,
    NotParticipant,
    UnknownSidechain,
    BadReveal,
    BadVersion,
    AlreadyVoted,
    NothingProposed,
    DuplicateTxId,
    NotStarted,
    AlreadyDecided,
    TimeoutExpired,
    StaleAttestation,
    BadCall,
};

std::string_view contract_error_name(ContractError error);

// ---------------------------------------------------------------------------
// Registration authority: resolvable names for chains and services.

struct Endpoint {
    std::string host;
    uint16_t port = 0;
    auto operator<=>(const Endpoint&) const = default;
};

struct RegistryEntry {
    std::string domain;
    AccountId owner;
    std::vector<Endpoint> node_endpoints;
    std::vector<Hash256> key_fingerprints;
    uint64_t updated_at_block = 0;
    auto operator<=>(const RegistryEntry&) const = default;
};

class RegistryContract {
  public:
    ContractError register_domain(const RegistryEntry& entry, const AccountId& sender,
                                  const ExecContext& ctx);
    ContractError update_domain(const RegistryEntry& entry, const AccountId& sender,
                                const ExecContext& ctx);
    // View; nullptr when the domain has never been registered on this branch.
    const RegistryEntry* lookup(std::string_view domain) const;

    void serialize(ByteWriter& writer) const;
    static RegistryContract deserialize(ByteReader& reader);

    size_t size() const { return entries_.size(); }

  private:
    std::map<std::string, RegistryEntry> entries_;
};

// ---------------------------------------------------------------------------
// State pinning. Also the membership anchor: participant records live here
// and the key-set registry consults them, so membership changes happen in
// exactly one place.

enum class ParticipantStatus : uint8_t { Masked, Unmasked };

// A masked participant is only a commitment digest(salt || account); unmasking
// reveals the account and is irreversible.
struct ParticipantRecord {
    ParticipantStatus status = ParticipantStatus::Masked;
    Hash256 commitment{};
    std::optional<AccountId> account;
};

struct PinRecord {
    Hash256 sidechain_id{};
    uint64_t block_number = 0;
    Hash256 block_hash{};
    AccountId poster{};
    uint64_t posted_at_block = 0; // host-chain block that accepted the pin
};

class PinningContract {
  public:
    ContractError add_masked(const Hash256& sidechain_id, const Hash256& commitment,
                             const ExecContext& ctx);
    ContractError unmask(const Hash256& sidechain_id, BytesView salt, const AccountId& account,
                         const ExecContext& ctx);
    // Pins for one sidechain are strictly increasing in block_number.
    ContractError add_pin(const Hash256& sidechain_id, uint64_t block_number,
                          const Hash256& block_hash, const AccountId& poster,
                          const ExecContext& ctx);

    bool known_sidechain(const Hash256& sidechain_id) const;
    bool is_unmasked_participant(const Hash256& sidechain_id, const AccountId& account) const;
    size_t unmasked_count(const Hash256& sidechain_id) const;
    const PinRecord* latest_pin(const Hash256& sidechain_id) const;
    const std::vector<PinRecord>* pins(const Hash256& sidechain_id) const;
    size_t pin_count(const Hash256& sidechain_id) const;

    // Genesis construction helper; normal membership flows through add_masked
    // and unmask transactions.
    void seed_unmasked(const Hash256& sidechain_id, const AccountId& account);

    void serialize(ByteWriter& writer) const;
    static PinningContract deserialize(ByteReader& reader);

  private:
    struct Slot {
        std::vector<ParticipantRecord> participants;
        std::vector<PinRecord> pins;
    };
    std::map<Hash256, Slot> sidechains_;
};

// ---------------------------------------------------------------------------
// Key-set registry: versioned 48-byte group public keys per sidechain,
// activated by a strict majority of that sidechain's unmasked participants.

enum class KeysetStatus : uint8_t { Proposed, Active, Superseded };

struct KeysetRecord {
    Hash256 sidechain_id{};
    uint64_t version = 0; // strictly increasing per sidechain, first is 1
    PublicKey48 public_key{};
    KeysetStatus status = KeysetStatus::Proposed;
    std::set<AccountId> votes;
    uint64_t activated_at_block = 0;
};

class KeysetContract {
  public:
    struct VoteOutcome {
        ContractError error = ContractError::None;
        bool activated = false;
    };

    ContractError propose(const Hash256& sidechain_id, uint64_t version,
                          const PublicKey48& public_key, const ExecContext& ctx);
    // Activation flips Proposed -> Active and the previous Active ->
    // Superseded in the same operation; there is at most one Active version.
    VoteOutcome vote(const Hash256& sidechain_id, uint64_t version, const AccountId& voter,
                     const PinningContract& membership, const ExecContext& ctx);

    const KeysetRecord* active(const Hash256& sidechain_id) const;
    const KeysetRecord* find(const Hash256& sidechain_id, uint64_t version) const;
    uint64_t active_version(const Hash256& sidechain_id) const; // 0 when none

    void serialize(ByteWriter& writer) const;
    static KeysetContract deserialize(ByteReader& reader);

  private:
    std::map<Hash256, std::vector<KeysetRecord>> records_;
};

// ---------------------------------------------------------------------------
// Crosschain coordination: the shared decision cell for atomic multi-chain
// transactions. A Started entry past its timeout block reads as Ignored, so
// every observer resolves the same way without any further transaction.

enum class XtxState : uint8_t { Started, Committed, Ignored };

std::string_view xtx_state_name(XtxState state);

struct CrosschainTxRecord {
    Hash256 tx_id{};
    XtxState state = XtxState::Started;
    uint64_t started_at_block = 0;
    uint64_t timeout_block = 0; // last block at which commit is accepted
    uint64_t decided_at_block = 0;
    AccountId initiator{};
    std::set<Hash256> sidechains;
};

class XtxContract {
  public:
    ContractError start(const Hash256& tx_id, const std::set<Hash256>& sidechains,
                        uint64_t timeout_blocks, const AccountId& initiator,
                        const ExecContext& ctx);
    // Commit carries the key-set versions the attestations were formed under;
    // each must equal the Active version at the executing block.
    ContractError commit(const Hash256& tx_id,
                         const std::vector<std::pair<Hash256, uint64_t>>& attested_versions,
                         const KeysetContract& keysets, const ExecContext& ctx);
    ContractError ignore(const Hash256& tx_id, const ExecContext& ctx);

    // View. Timeout is applied at read time: a Started record with
    // at_block > timeout_block reads as Ignored. Throws NotFound.
    XtxState status(const Hash256& tx_id, uint64_t at_block) const;
    const CrosschainTxRecord* find(const Hash256& tx_id) const;

    void serialize(ByteWriter& writer) const;
    static XtxContract deserialize(ByteReader& reader);

  private:
    std::map<Hash256, CrosschainTxRecord> txs_;
};

// ---------------------------------------------------------------------------
// Call encoding. A contract call is (address, op name, canonical args).

struct ContractCall {
    AccountId contract{};
    std::string op;
    Bytes args;
    auto operator<=>(const ContractCall&) const = default;
};

// Well-known deployment addresses.
AccountId registry_address();
AccountId pinning_address();
AccountId keyset_address();
AccountId xtx_address();
AccountId datastore_address(); // flat keyed store standing in for app state

struct KvWrite {
    Hash256 key{};
    Bytes value;
    auto operator<=>(const KvWrite&) const = default;
};

ContractCall make_registry_register(const RegistryEntry& entry);
ContractCall make_registry_update(const RegistryEntry& entry);
ContractCall make_add_masked(const Hash256& sidechain_id, const Hash256& commitment);
ContractCall make_unmask(const Hash256& sidechain_id, BytesView salt, const AccountId& account);
ContractCall make_pin_add(const Hash256& sidechain_id, uint64_t block_number,
                          const Hash256& block_hash);
ContractCall make_keyset_propose(const Hash256& sidechain_id, uint64_t version,
                                 const PublicKey48& public_key);
ContractCall make_keyset_vote(const Hash256& sidechain_id, uint64_t version);
ContractCall make_xtx_start(const Hash256& tx_id, const std::set<Hash256>& sidechains,
                            uint64_t timeout_blocks);
ContractCall make_xtx_commit(const Hash256& tx_id,
                             const std::vector<std::pair<Hash256, uint64_t>>& attested_versions);
ContractCall make_xtx_ignore(const Hash256& tx_id);
ContractCall make_kv_put(const std::vector<KvWrite>& writes);

void serialize_registry_entry(ByteWriter& writer, const RegistryEntry& entry);
RegistryEntry deserialize_registry_entry(ByteReader& reader);

// Participant commitment preimage: digest(salt || account bytes).
Hash256 participant_commitment(BytesView salt, const AccountId& account);

} // namespace chaincoord
