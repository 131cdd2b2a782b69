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

#include "chaincoord/chain.hpp"

#include <algorithm>
#include <set>

#include "chaincoord/errors.hpp"

namespace chaincoord {

std::string_view tx_status_name(TxStatus status) {
    switch (status) {
    case TxStatus::Success: return "Success";
    case TxStatus::Reverted: return "Reverted";
    case TxStatus::OutOfGas: return "OutOfGas";
    case TxStatus::BadNonce: return "BadNonce";
    case TxStatus::Unauthorized: return "Unauthorized";
    case TxStatus::InsufficientBalance: return "InsufficientBalance";
    case TxStatus::BlockGasExceeded: return "BlockGasExceeded";
    case TxStatus::NonceOverflow: return "NonceOverflow";
    }
    return "Unknown";
}

bool tx_included(TxStatus status) {
    return status == TxStatus::Success || status == TxStatus::Reverted ||
           status == TxStatus::OutOfGas;
}

// --------------------------------------------------------------------------
// Transaction encoding

namespace {

constexpr uint8_t kTagValueTransfer = 0;
constexpr uint8_t kTagContractCall = 1;
constexpr uint8_t kTagContractCreate = 2;

} // namespace

Bytes Transaction::serialize() const {
    ByteWriter writer;
    writer.account(sender);
    writer.u64(nonce);
    writer.u64(gas_limit);
    writer.u64(gas_price);
    if (const auto* transfer = std::get_if<ValueTransfer>(&payload)) {
        writer.u8(kTagValueTransfer);
        writer.account(transfer->to);
        writer.u128(transfer->amount);
    } else if (const auto* call = std::get_if<ContractCall>(&payload)) {
        writer.u8(kTagContractCall);
        writer.account(call->contract);
        writer.str(call->op);
        writer.blob(call->args);
    } else {
        const auto& create = std::get<ContractCreate>(payload);
        writer.u8(kTagContractCreate);
        writer.blob(create.code);
    }
    writer.u8(authorized ? 1 : 0);
    return writer.take();
}

Hash256 Transaction::hash() const { return sha256(serialize()); }

Transaction Transaction::deserialize(BytesView data) {
    ByteReader reader(data);
    Transaction tx;
    tx.sender = reader.account();
    tx.nonce = reader.u64();
    tx.gas_limit = reader.u64();
    tx.gas_price = reader.u64();
    switch (reader.u8()) {
    case kTagValueTransfer: {
        ValueTransfer transfer;
        transfer.to = reader.account();
        transfer.amount = reader.u128();
        tx.payload = transfer;
        break;
    }
    case kTagContractCall: {
        ContractCall call;
        call.contract = reader.account();
        call.op = reader.str();
        call.args = reader.blob();
        tx.payload = call;
        break;
    }
    case kTagContractCreate: {
        ContractCreate create;
        create.code = reader.blob();
        tx.payload = create;
        break;
    }
    default: fail(Errc::DecodeError, "unknown payload tag");
    }
    tx.authorized = reader.u8() != 0;
    reader.expect_done();
    return tx;
}

// --------------------------------------------------------------------------
// Headers

Bytes BlockHeader::hash_input() const {
    ByteWriter writer;
    writer.hash(parent_hash);
    writer.u64(number);
    writer.u64(weight);
    writer.account(miner);
    writer.i64(timestamp);
    writer.hash(tx_commitment);
    writer.hash(state_commitment);
    writer.u32(uncle_count);
    return writer.take();
}

BlockHeader BlockHeader::from_hash_input(BytesView data) {
    ByteReader reader(data);
    BlockHeader header;
    header.parent_hash = reader.hash();
    header.number = reader.u64();
    header.weight = reader.u64();
    header.miner = reader.account();
    header.timestamp = reader.i64();
    header.tx_commitment = reader.hash();
    header.state_commitment = reader.hash();
    header.uncle_count = reader.u32();
    reader.expect_done();
    header.hash = sha256(data);
    return header;
}

Hash256 tx_list_commitment(const std::vector<Transaction>& txs) {
    ByteWriter writer;
    writer.u32(static_cast<uint32_t>(txs.size()));
    for (const Transaction& tx : txs) writer.blob(tx.serialize());
    return sha256(writer.bytes());
}

// --------------------------------------------------------------------------
// ChainView

ChainView ChainView::genesis(FinalityMode mode, std::shared_ptr<const WorldState> state,
                             int64_t timestamp, double initial_gas_price) {
    if (!state) fail(Errc::InternalError, "genesis requires a state");
    ChainView chain;
    chain.mode_ = mode;

    BlockRecord record;
    record.header.parent_hash = Hash256{};
    record.header.number = 0;
    record.header.weight = 0;
    record.header.timestamp = timestamp;
    record.header.tx_commitment = tx_list_commitment({});
    record.header.state_commitment = state->commitment();
    record.header.uncle_count = 0;
    record.header.hash = sha256(record.header.hash_input());
    record.state = std::move(state);
    record.gas_price_after = initial_gas_price;

    chain.head_ = record.header.hash;
    chain.canonical_.push_back(record.header.hash);
    if (mode == FinalityMode::Instant) chain.finalized_ = 0;
    chain.blocks_.emplace(record.header.hash, std::move(record));
    return chain;
}

bool ChainView::contains(const Hash256& hash) const { return blocks_.count(hash) != 0; }

const BlockRecord& ChainView::record(const Hash256& hash) const {
    auto it = blocks_.find(hash);
    if (it == blocks_.end()) fail(Errc::UnknownBlock, "block not in view: " + hash.hex());
    return it->second;
}

const BlockHeader& ChainView::header(const Hash256& hash) const { return record(hash).header; }

const WorldState& ChainView::state_at(const Hash256& hash) const { return *record(hash).state; }

bool ChainView::is_canonical(const Hash256& hash) const {
    auto it = blocks_.find(hash);
    if (it == blocks_.end()) return false;
    const uint64_t number = it->second.header.number;
    return number < canonical_.size() && canonical_[number] == hash;
}

Hash256 ChainView::canonical_at(uint64_t number) const {
    if (number >= canonical_.size()) fail(Errc::UnknownBlock, "no canonical block at that height");
    const Hash256& hash = canonical_[number];
    if (blocks_.count(hash) == 0) fail(Errc::UnknownBlock, "height predates resume point");
    return hash;
}

uint64_t ChainView::confirmations(const Hash256& hash) const {
    const BlockHeader& block = header(hash);
    if (!is_canonical(hash)) fail(Errc::NotCanonical, "block is off the canonical chain");
    return head_header().number - block.number;
}

void ChainView::insert_block(BlockRecord record) {
    auto parent_it = blocks_.find(record.header.parent_hash);
    if (parent_it == blocks_.end()) fail(Errc::UnknownParent, "parent not in view");
    const BlockHeader& parent = parent_it->second.header;
    const BlockHeader& header = record.header;
    if (header.number != parent.number + 1)
        fail(Errc::InvalidBlock, "block number must increment parent's");
    if (header.weight != parent.weight + 1 + header.uncle_count)
        fail(Errc::InvalidBlock, "weight must be parent weight + 1 + uncle_count");
    if (header.hash != sha256(header.hash_input()))
        fail(Errc::InvalidBlock, "header hash does not match contents");
    if (!record.state) fail(Errc::InvalidBlock, "block carries no post-state");
    if (blocks_.count(header.hash) != 0) fail(Errc::InvalidBlock, "duplicate block hash");
    blocks_.emplace(header.hash, std::move(record));
}

void ChainView::index_canonical_from(const Hash256& tip, uint64_t fork_number) {
    const uint64_t tip_number = header(tip).number;
    canonical_.resize(tip_number + 1);
    Hash256 cursor = tip;
    for (uint64_t number = tip_number + 1; number > fork_number; --number) {
        canonical_[number - 1] = cursor;
        cursor = header(cursor).parent_hash;
    }
}

ForkChoiceResult ChainView::fork_choice(const Hash256& candidate_tip) {
    if (mode_ != FinalityMode::Probabilistic)
        fail(Errc::InternalError, "fork choice applies to probabilistic chains only");
    auto it = blocks_.find(candidate_tip);
    if (it == blocks_.end()) fail(Errc::UnknownParent, "candidate tip not in view");

    ForkChoiceResult result;
    result.new_head = head_;
    const BlockHeader& candidate = it->second.header;
    const BlockHeader& incumbent = head_header();
    // Strict inequality: an equal-weight challenger never displaces the head.
    if (candidate.hash == head_ || candidate.weight <= incumbent.weight) return result;

    // Walk back to the fork point: lower the deeper branch first.
    Hash256 old_cursor = head_;
    Hash256 new_cursor = candidate_tip;
    std::vector<Hash256> adopted;
    while (header(new_cursor).number > incumbent.number) {
        adopted.push_back(new_cursor);
        new_cursor = header(new_cursor).parent_hash;
    }
    std::vector<Hash256> reverted;
    while (header(old_cursor).number > header(new_cursor).number) {
        reverted.push_back(old_cursor);
        old_cursor = header(old_cursor).parent_hash;
    }
    while (old_cursor != new_cursor) {
        reverted.push_back(old_cursor);
        adopted.push_back(new_cursor);
        old_cursor = header(old_cursor).parent_hash;
        new_cursor = header(new_cursor).parent_hash;
    }
    std::reverse(reverted.begin(), reverted.end());
    std::reverse(adopted.begin(), adopted.end());

    head_ = candidate_tip;
    result.new_head = candidate_tip;
    result.switched = true;
    index_canonical_from(candidate_tip, header(new_cursor).number);

    if (!reverted.empty()) {
        ReorgReport report;
        report.reverted = std::move(reverted);
        report.adopted = std::move(adopted);
        std::set<Hash256> readopted;
        for (const Hash256& hash : report.adopted) {
            for (const Transaction& tx : record(hash).txs) readopted.insert(tx.hash());
        }
        for (const Hash256& hash : report.reverted) {
            for (const Transaction& tx : record(hash).txs) {
                if (readopted.count(tx.hash()) == 0) report.dropped_txs.push_back(tx);
            }
        }
        result.reorg = std::move(report);
    }
    return result;
}

ChainView ChainView::resume(FinalityMode mode, BlockRecord record) {
    if (!record.state) fail(Errc::InternalError, "resume requires a state");
    ChainView chain;
    chain.mode_ = mode;
    const Hash256 hash = record.header.hash;
    const uint64_t number = record.header.number;
    chain.canonical_.assign(number + 1, Hash256{});
    chain.canonical_[number] = hash;
    chain.head_ = hash;
    if (mode == FinalityMode::Instant) chain.finalized_ = number;
    chain.blocks_.emplace(hash, std::move(record));
    return chain;
}

void ChainView::append_final(BlockRecord record) {
    if (mode_ != FinalityMode::Instant)
        fail(Errc::InternalError, "append_final applies to instant chains only");
    if (record.header.parent_hash != head_)
        fail(Errc::InvalidBlock, "instant chains extend the head only");
    const Hash256 hash = record.header.hash;
    insert_block(std::move(record));
    head_ = hash;
    canonical_.push_back(hash);
    finalized_ = header(hash).number;
}

// --------------------------------------------------------------------------
// Finality check (declared in finality.hpp; lives here with ChainView)

bool is_final(const ChainView& chain, const Hash256& block, const FinalityPolicy& policy,
              FinalityMode mode) {
    if (mode == FinalityMode::Instant) return chain.is_canonical(block);
    return chain.confirmations(block) >= policy.confirmations;
}

BlockRecord extend_empty_block(const BlockRecord& parent, const AccountId& miner,
                               uint32_t uncle_count, int64_t timestamp) {
    BlockRecord record;
    record.header.parent_hash = parent.header.hash;
    record.header.number = parent.header.number + 1;
    record.header.weight = parent.header.weight + 1 + uncle_count;
    record.header.miner = miner;
    record.header.timestamp = timestamp;
    record.header.tx_commitment = tx_list_commitment({});
    record.header.state_commitment = parent.header.state_commitment;
    record.header.uncle_count = uncle_count;
    record.header.hash = sha256(record.header.hash_input());
    record.state = parent.state;
    record.gas_price_after = parent.gas_price_after;
    return record;
}

// --------------------------------------------------------------------------
// Transaction application

Receipt apply_transaction(WorldState& state, const Transaction& tx, uint64_t gas_budget_left,
                          const GasSchedule& schedule, const ExecContext& ctx,
                          const AccountId& miner) {
    Receipt receipt;
    if (!tx.authorized) {
        receipt.status = TxStatus::Unauthorized;
        return receipt;
    }
    Account& sender = state.account(tx.sender);
    if (tx.nonce != sender.nonce) {
        receipt.status = TxStatus::BadNonce;
        return receipt;
    }
    if (sender.nonce >= kMaxNonce) {
        // The counter's last representable value; consuming it would wrap.
        receipt.status = TxStatus::NonceOverflow;
        return receipt;
    }
    if (tx.gas_limit > gas_budget_left) {
        receipt.status = TxStatus::BlockGasExceeded;
        return receipt;
    }
    const Wei max_fee = Wei(tx.gas_limit) * Wei(tx.gas_price);
    const auto* transfer = std::get_if<ValueTransfer>(&tx.payload);
    const Wei value = transfer != nullptr ? transfer->amount : 0;
    if (sender.balance < max_fee + value) {
        receipt.status = TxStatus::InsufficientBalance;
        return receipt;
    }

    // Committed from here on: the nonce is consumed and gas is charged even
    // when execution fails.
    sender.nonce += 1;

    uint64_t cost = schedule.intrinsic_tx_gas;
    if (const auto* call = std::get_if<ContractCall>(&tx.payload)) {
        cost = worst_case_call_gas(*call, schedule);
    } else if (std::holds_alternative<ContractCreate>(tx.payload)) {
        cost = schedule.intrinsic_tx_gas + 32'000;
    }
    if (cost > tx.gas_limit) {
        receipt.status = TxStatus::OutOfGas;
        receipt.gas_used = tx.gas_limit; // aborted runs consume everything
        const Wei fee = Wei(receipt.gas_used) * Wei(tx.gas_price);
        state.account(tx.sender).balance -= fee;
        state.account(miner).balance += fee;
        return receipt;
    }

    receipt.gas_used = cost;
    if (const auto* call = std::get_if<ContractCall>(&tx.payload)) {
        const CallOutcome outcome = execute_call(state, tx.sender, *call, schedule, ctx);
        receipt.gas_used = outcome.gas_used;
        if (outcome.error != ContractError::None) {
            receipt.status = TxStatus::Reverted;
            receipt.revert_reason = outcome.error;
        }
    } else if (transfer != nullptr) {
        state.account(tx.sender).balance -= value;
        state.account(transfer->to).balance += value;
    } else {
        // Creation claims a deterministic address derived from (sender, nonce).
        ByteWriter writer;
        writer.account(tx.sender);
        writer.u64(tx.nonce);
        const Hash256 digest = sha256(writer.bytes());
        AccountId created;
        std::copy_n(digest.v.begin(), created.v.size(), created.v.begin());
        state.account(created);
    }

    const Wei fee = Wei(receipt.gas_used) * Wei(tx.gas_price);
    state.account(tx.sender).balance -= fee;
    state.account(miner).balance += fee;
    return receipt;
}

// --------------------------------------------------------------------------
// Mempool

void Mempool::submit(Transaction tx) {
    const AccountId sender = tx.sender;
    const uint64_t nonce = tx.nonce;
    auto& queue = queues_[sender];
    auto it = queue.find(nonce);
    if (it != queue.end()) {
        // Same-nonce replacement requires a strictly better bid.
        if (tx.gas_price <= it->second.tx.gas_price) return;
        it->second.tx = std::move(tx);
        it->second.seq = next_seq_++;
    } else {
        queue.emplace(nonce, Pending{std::move(tx), next_seq_++});
        ++size_;
    }
    if (queue.begin()->first == nonce) push_front_entry(sender);
}

bool Mempool::contains(const AccountId& sender, uint64_t nonce) const {
    auto it = queues_.find(sender);
    return it != queues_.end() && it->second.count(nonce) != 0;
}

uint64_t Mempool::next_nonce(const AccountId& sender, uint64_t account_nonce) const {
    auto it = queues_.find(sender);
    uint64_t nonce = account_nonce;
    if (it == queues_.end()) return nonce;
    while (it->second.count(nonce) != 0) ++nonce;
    return nonce;
}

void Mempool::push_front_entry(const AccountId& sender) {
    auto it = queues_.find(sender);
    if (it == queues_.end() || it->second.empty()) return;
    const Pending& front = it->second.begin()->second;
    heap_.push(HeapEntry{front.tx.gas_price, front.seq, sender});
}

// --------------------------------------------------------------------------
// Block assembly

namespace {

BlockRecord finish_block(const ChainView& chain, const BlockHeader& parent, const AccountId& miner,
                         std::vector<Transaction> txs, std::vector<Receipt> receipts,
                         std::shared_ptr<const WorldState> state, uint32_t uncle_count,
                         int64_t timestamp, const Hash256& parent_state_commitment) {
    BlockRecord record;
    record.header.parent_hash = parent.hash;
    record.header.number = parent.number + 1;
    record.header.weight = parent.weight + 1 + uncle_count;
    record.header.miner = miner;
    record.header.timestamp = timestamp;
    record.header.uncle_count = uncle_count;
    record.header.tx_commitment = tx_list_commitment(txs);
    record.header.state_commitment =
        txs.empty() ? parent_state_commitment : state->commitment();
    record.header.hash = sha256(record.header.hash_input());
    for (const Receipt& receipt : receipts) record.gas_used += receipt.gas_used;
    record.txs = std::move(txs);
    record.receipts = std::move(receipts);
    record.state = std::move(state);
    record.gas_price_after = chain.record(parent.hash).gas_price_after;
    return record;
}

} // namespace

BlockRecord mint_block(const ChainView& chain, const AccountId& miner, Mempool& pool,
                       uint64_t block_gas_limit, int64_t timestamp, const GasSchedule& schedule) {
    const BlockRecord& parent = chain.record(chain.head());
    const ExecContext ctx{parent.header.number + 1, timestamp};

    std::shared_ptr<const WorldState> state = parent.state;
    std::unique_ptr<WorldState> working; // copy-on-first-write
    std::vector<Transaction> included;
    std::vector<Receipt> receipts;
    std::vector<AccountId> parked; // senders to requeue once the block closes
    uint64_t budget = block_gas_limit;

    auto working_state = [&]() -> WorldState& {
        if (!working) working = std::make_unique<WorldState>(*state);
        return *working;
    };

    while (budget >= schedule.intrinsic_tx_gas && !pool.heap_.empty()) {
        const Mempool::HeapEntry entry = pool.heap_.top();
        pool.heap_.pop();
        auto queue_it = pool.queues_.find(entry.sender);
        if (queue_it == pool.queues_.end() || queue_it->second.empty()) continue;
        auto front_it = queue_it->second.begin();
        if (front_it->second.seq != entry.seq) continue; // stale heap entry

        const WorldState& view = working ? *working : *state;
        const Transaction& tx = front_it->second.tx;
        const Account* sender = view.find_account(tx.sender);
        const uint64_t account_nonce = sender != nullptr ? sender->nonce : 0;

        if (tx.nonce < account_nonce) {
            // Replay; already included on this branch. Evict.
            queue_it->second.erase(front_it);
            --pool.size_;
            pool.push_front_entry(entry.sender);
            continue;
        }
        if (tx.nonce > account_nonce) {
            // Gap: nothing from this sender can run in this block.
            parked.push_back(entry.sender);
            continue;
        }
        if (tx.gas_limit > budget) {
            // Does not fit; retry next block.
            parked.push_back(entry.sender);
            continue;
        }

        Transaction candidate = tx;
        const Receipt receipt =
            apply_transaction(working_state(), candidate, budget, schedule, ctx, miner);
        queue_it->second.erase(front_it);
        --pool.size_;
        pool.push_front_entry(entry.sender);
        if (!tx_included(receipt.status)) continue; // invalid; evicted
        budget -= candidate.gas_limit;              // miner reserves the declared limit
        included.push_back(std::move(candidate));
        receipts.push_back(receipt);
    }
    for (const AccountId& sender : parked) pool.push_front_entry(sender);

    std::shared_ptr<const WorldState> post_state =
        included.empty() ? parent.state : std::shared_ptr<const WorldState>(std::move(working));
    return finish_block(chain, parent.header, miner, std::move(included), std::move(receipts),
                        std::move(post_state), 0, timestamp, parent.header.state_commitment);
}

BlockRecord build_block(const ChainView& chain, const Hash256& parent_hash, const AccountId& miner,
                        const std::vector<Transaction>& txs, uint32_t uncle_count,
                        int64_t timestamp, const GasSchedule& schedule) {
    const BlockRecord& parent = chain.record(parent_hash);
    const ExecContext ctx{parent.header.number + 1, timestamp};

    std::shared_ptr<const WorldState> post_state = parent.state;
    std::vector<Transaction> included;
    std::vector<Receipt> receipts;
    if (!txs.empty()) {
        auto working = std::make_unique<WorldState>(*parent.state);
        uint64_t budget = schedule.block_gas_limit;
        for (const Transaction& tx : txs) {
            const Receipt receipt = apply_transaction(*working, tx, budget, schedule, ctx, miner);
            if (!tx_included(receipt.status)) continue;
            budget -= tx.gas_limit;
            included.push_back(tx);
            receipts.push_back(receipt);
        }
        if (!included.empty()) post_state = std::shared_ptr<const WorldState>(std::move(working));
    }
    return finish_block(chain, parent.header, miner, std::move(included), std::move(receipts),
                        std::move(post_state), uncle_count, timestamp,
                        parent.header.state_commitment);
}

} // namespace chaincoord
