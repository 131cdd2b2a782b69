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

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <variant>
#include <vector>

#include "chaincoord/bytes.hpp"
#include "chaincoord/finality.hpp"
#include "chaincoord/worldstate.hpp"

namespace chaincoord {

struct ValueTransfer {
    AccountId to{};
    Wei amount = 0;
};

struct ContractCreate {
    Bytes code; // opaque; creation just claims a derived address
};

using TxPayload = std::variant<ValueTransfer, ContractCall, ContractCreate>;

// `authorized` stands in for signature validity: forged transactions carry
// false and are rejected without touching state.
struct Transaction {
    AccountId sender{};
    uint64_t nonce = 0;
    uint64_t gas_limit = 0;
    uint64_t gas_price = 0; // wei per gas the sender bids
    TxPayload payload;
    bool authorized = true;

    Bytes serialize() const;
    Hash256 hash() const;
    static Transaction deserialize(BytesView data);
};

enum class TxStatus : uint8_t {
    // Included in a block (nonce consumed, gas charged):
    Success,
    Reverted, // contract op refused; reason in Receipt::revert_reason
    OutOfGas, // gas_limit below cost; the whole limit is consumed
    // Rejected before inclusion (no state change at all):
    BadNonce,
    Unauthorized,
    InsufficientBalance,
    BlockGasExceeded,
    NonceOverflow,
};

std::string_view tx_status_name(TxStatus status);
bool tx_included(TxStatus status);

struct Receipt {
    TxStatus status = TxStatus::Success;
    ContractError revert_reason = ContractError::None;
    uint64_t gas_used = 0;
};

// Invariants maintained by ChainView on every accepted block:
//  1. number = parent.number + 1
//  2. weight = parent.weight + 1 + uncle_count
//  3. hash   = digest(canonical serialization of the other fields)
struct BlockHeader {
    Hash256 hash{};
    Hash256 parent_hash{};
    uint64_t number = 0;
    uint64_t weight = 0;
    AccountId miner{};
    int64_t timestamp = 0;
    Hash256 tx_commitment{};
    Hash256 state_commitment{};
    uint32_t uncle_count = 0;

    // Canonical bytes of every field except `hash`; also the archive format's
    // header_bytes, so digest(hash_input()) == hash by construction.
    Bytes hash_input() const;
    static BlockHeader from_hash_input(BytesView data);
};

struct BlockRecord {
    BlockHeader header;
    std::vector<Transaction> txs;
    std::vector<Receipt> receipts;
    std::shared_ptr<const WorldState> state; // post-state; shared with parent when unchanged
    double gas_price_after = 0.0;            // market price after this block's utilization
    uint64_t gas_used = 0;
};

Hash256 tx_list_commitment(const std::vector<Transaction>& txs);

// Both lists run from the block after the fork point to the respective tip.
// dropped_txs are transactions of reverted blocks that the adopted branch did
// not re-include; nothing resubmits them automatically.
struct ReorgReport {
    std::vector<Hash256> reverted;
    std::vector<Hash256> adopted;
    std::vector<Transaction> dropped_txs;
};

struct ForkChoiceResult {
    Hash256 new_head{};
    bool switched = false;
    std::optional<ReorgReport> reorg;
};

class ChainView {
  public:
    static ChainView genesis(FinalityMode mode, std::shared_ptr<const WorldState> state,
                             int64_t timestamp, double initial_gas_price = 1.0);

    FinalityMode mode() const { return mode_; }
    const Hash256& head() const { return head_; }
    const BlockHeader& head_header() const { return header(head_); }
    uint64_t head_number() const { return head_header().number; }
    size_t block_count() const { return blocks_.size(); }

    bool contains(const Hash256& hash) const;
    const BlockRecord& record(const Hash256& hash) const; // throws UnknownBlock
    const BlockHeader& header(const Hash256& hash) const;
    const WorldState& state_at(const Hash256& hash) const;
    const WorldState& head_state() const { return state_at(head_); }

    bool is_canonical(const Hash256& hash) const;
    Hash256 canonical_at(uint64_t number) const; // throws UnknownBlock past head
    // head_number - block.number; throws NotCanonical for side-branch blocks.
    uint64_t confirmations(const Hash256& hash) const;

    // Stores a block without moving the head. Throws UnknownParent or
    // InvalidBlock (broken number/weight/hash invariants, duplicate hash).
    void insert_block(BlockRecord record);

    // Heaviest-wins head rule: the head moves iff candidate.weight is
    // strictly greater, so an equal-weight challenger never displaces the
    // incumbent. A report is emitted iff the old head left the canonical
    // chain. Probabilistic mode only.
    ForkChoiceResult fork_choice(const Hash256& candidate_tip);

    // Instant mode: appends a decided block (parent must be the head) and
    // finalizes it immediately. Instant chains never reorganize.
    void append_final(BlockRecord record);

    // Rebuilds a view whose history starts at `record` (pre-resume blocks are
    // pruned); canonical_at throws UnknownBlock for pruned heights.
    static ChainView resume(FinalityMode mode, BlockRecord record);

    // Highest block number known final (instant mode only).
    std::optional<uint64_t> finalized_marker() const { return finalized_; }

    // Default-constructed views are empty placeholders; assign genesis() or
    // resume() before use.
    ChainView() = default;

  private:
    void index_canonical_from(const Hash256& tip, uint64_t fork_number);

    std::map<Hash256, BlockRecord> blocks_;
    std::vector<Hash256> canonical_; // number -> hash
    Hash256 head_{};
    FinalityMode mode_ = FinalityMode::Probabilistic;
    std::optional<uint64_t> finalized_;
};

// Pending transactions keyed by sender, executed in nonce order. Selection is
// by descending bid with submission order breaking ties; only each sender's
// lowest-nonce transaction is ever a candidate, so a gap parks the sender.
class Mempool {
  public:
    void submit(Transaction tx);
    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool contains(const AccountId& sender, uint64_t nonce) const;
    // Smallest nonce >= account_nonce not already pending for this sender.
    uint64_t next_nonce(const AccountId& sender, uint64_t account_nonce) const;

  private:
    friend BlockRecord mint_block(const ChainView&, const AccountId&, Mempool&, uint64_t, int64_t,
                                  const GasSchedule&);

    struct HeapEntry {
        uint64_t gas_price;
        uint64_t seq;
        AccountId sender;
        bool operator<(const HeapEntry& other) const {
            if (gas_price != other.gas_price) return gas_price < other.gas_price;
            return seq > other.seq; // earlier submission wins at equal bid
        }
    };
    struct Pending {
        Transaction tx;
        uint64_t seq = 0;
    };

    void push_front_entry(const AccountId& sender);

    std::map<AccountId, std::map<uint64_t, Pending>> queues_; // sender -> nonce -> tx
    std::priority_queue<HeapEntry> heap_;                     // lazily invalidated
    uint64_t next_seq_ = 0;
    size_t size_ = 0;
};

// Chains an empty block onto `parent` without touching any ChainView, so
// withheld branches can be built before publication. State and price carry
// over from the parent.
BlockRecord extend_empty_block(const BlockRecord& parent, const AccountId& miner,
                               uint32_t uncle_count, int64_t timestamp);

// Validates and applies one transaction. Rejection statuses (BadNonce through
// NonceOverflow) leave state untouched; included statuses consume the nonce,
// charge gas_used * gas_price to the sender and credit it to `miner`.
// Out-of-gas consumes the full gas_limit and discards every other effect.
Receipt apply_transaction(WorldState& state, const Transaction& tx, uint64_t gas_budget_left,
                          const GasSchedule& schedule, const ExecContext& ctx,
                          const AccountId& miner);

// Builds a block on the current head: pulls mempool transactions best-bid
// first, reserving each transaction's gas_limit against `block_gas_limit`
// until no candidate fits. Deterministic given chain, pool and arguments.
// Replayed or invalid transactions are evicted; senders whose next nonce
// cannot run yet stay pooled. The block is not inserted into the chain.
BlockRecord mint_block(const ChainView& chain, const AccountId& miner, Mempool& pool,
                       uint64_t block_gas_limit, int64_t timestamp, const GasSchedule& schedule);

// Assembles an arbitrary child block (fork branches, test fixtures). Applies
// the given transactions unconditionally through apply_transaction.
BlockRecord build_block(const ChainView& chain, const Hash256& parent, const AccountId& miner,
                        const std::vector<Transaction>& txs, uint32_t uncle_count,
                        int64_t timestamp, const GasSchedule& schedule);

} // namespace chaincoord
