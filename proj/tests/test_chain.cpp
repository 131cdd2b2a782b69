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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "chaincoord/chain.hpp"
#include "chaincoord/errors.hpp"
#include "chaincoord/rng.hpp"

using namespace chaincoord;

namespace {

const AccountId kAlice = account_from_name("alice");
const AccountId kBob = account_from_name("bob");
const AccountId kMiner = account_from_name("miner");

std::shared_ptr<WorldState> funded_state() {
    auto state = std::make_shared<WorldState>();
    state->account(kAlice).balance = Wei(10'000'000'000ULL);
    state->account(kBob).balance = Wei(10'000'000'000ULL);
    return state;
}

Transaction transfer(const AccountId& from, const AccountId& to, Wei amount, uint64_t nonce,
                     uint64_t gas_price = 1) {
    Transaction tx;
    tx.sender = from;
    tx.nonce = nonce;
    tx.gas_limit = 21'000;
    tx.gas_price = gas_price;
    tx.payload = ValueTransfer{to, amount};
    return tx;
}

ChainView mined_chain(int blocks, Mempool& pool) {
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    for (int i = 0; i < blocks; ++i) {
        BlockRecord record =
            mint_block(chain, kMiner, pool, schedule.block_gas_limit, (i + 1) * 14, schedule);
        const Hash256 hash = record.header.hash;
        chain.insert_block(std::move(record));
        chain.fork_choice(hash);
    }
    return chain;
}

} // namespace

TEST_SUITE("chain") {

TEST_CASE("transactions round trip and hash deterministically") {
    Transaction tx;
    tx.sender = account_from_name("op");
    tx.nonce = 3;
    tx.gas_limit = 21'000;
    tx.gas_price = 5;
    tx.payload = ValueTransfer{account_from_name("sink"), 42};
    CHECK_EQ(tx.hash().hex(),
             "f90c61a0c524fb80c9e9fbafcd9310baa9bf4524298dc2abce16ed59edc7025c");
    CHECK_EQ(tx.serialize().size(), 82);

    const Transaction back = Transaction::deserialize(tx.serialize());
    CHECK(back.hash() == tx.hash());
    CHECK_EQ(back.nonce, 3);
    CHECK(back.authorized);

    Transaction call = tx;
    call.payload = ContractCall{pinning_address(), "pin_add", Bytes{1, 2, 3}};
    CHECK(Transaction::deserialize(call.serialize()).hash() == call.hash());
    Transaction create = tx;
    create.payload = ContractCreate{Bytes{9, 9}};
    CHECK(Transaction::deserialize(create.serialize()).hash() == create.hash());
}

TEST_CASE("header hash commits to the serialized fields") {
    Mempool pool;
    ChainView chain = mined_chain(3, pool);
    for (uint64_t n = 0; n <= 3; ++n) {
        const BlockHeader& header = chain.header(chain.canonical_at(n));
        CHECK(sha256(header.hash_input()) == header.hash);
        const BlockHeader back = BlockHeader::from_hash_input(header.hash_input());
        CHECK(back.parent_hash == header.parent_hash);
        CHECK_EQ(back.number, header.number);
        CHECK_EQ(back.weight, header.weight);
    }
}

TEST_CASE("number and weight advance by construction") {
    Mempool pool;
    ChainView chain = mined_chain(5, pool);
    uint64_t previous_weight = 0;
    for (uint64_t n = 1; n <= 5; ++n) {
        const BlockHeader& header = chain.header(chain.canonical_at(n));
        const BlockHeader& parent = chain.header(header.parent_hash);
        CHECK_EQ(header.number, parent.number + 1);
        CHECK_EQ(header.weight, parent.weight + 1 + header.uncle_count);
        CHECK(header.weight > previous_weight);
        previous_weight = header.weight;
    }
}

TEST_CASE("insert rejects broken invariants") {
    Mempool pool;
    ChainView chain = mined_chain(2, pool);
    const BlockRecord& head = chain.record(chain.head());

    BlockRecord orphan = extend_empty_block(head, kMiner, 0, 100);
    orphan.header.parent_hash = hash_of_string("nowhere");
    CHECK_THROWS_AS(chain.insert_block(orphan), Error);

    BlockRecord bad_number = extend_empty_block(head, kMiner, 0, 100);
    bad_number.header.number += 1;
    CHECK_THROWS_AS(chain.insert_block(bad_number), Error);

    BlockRecord tampered = extend_empty_block(head, kMiner, 0, 100);
    tampered.header.hash = hash_of_string("forged");
    CHECK_THROWS_AS(chain.insert_block(tampered), Error);

    BlockRecord fine = extend_empty_block(head, kMiner, 0, 100);
    chain.insert_block(fine);
    CHECK_THROWS_AS(chain.insert_block(fine), Error); // duplicate hash
}

TEST_CASE("rejection statuses leave state untouched") {
    WorldState state = *funded_state();
    const Hash256 before = state.commitment();
    GasSchedule schedule;
    ExecContext ctx{1, 14};

    Transaction forged = transfer(kAlice, kBob, 5, 0);
    forged.authorized = false;
    CHECK_EQ(apply_transaction(state, forged, schedule.block_gas_limit, schedule, ctx, kMiner)
                 .status,
             TxStatus::Unauthorized);

    CHECK_EQ(apply_transaction(state, transfer(kAlice, kBob, 5, 7), schedule.block_gas_limit,
                               schedule, ctx, kMiner)
                 .status,
             TxStatus::BadNonce);

    CHECK_EQ(apply_transaction(state, transfer(kAlice, kBob, 5, 0), 20'000, schedule, ctx, kMiner)
                 .status,
             TxStatus::BlockGasExceeded);

    Transaction broke = transfer(kAlice, kBob, Wei(20'000'000'000ULL), 0);
    CHECK_EQ(apply_transaction(state, broke, schedule.block_gas_limit, schedule, ctx, kMiner)
                 .status,
             TxStatus::InsufficientBalance);

    CHECK(state.commitment() == before);
    CHECK_EQ(state.account(kAlice).nonce, 0);
}

TEST_CASE("forgery outranks every other rejection") {
    WorldState state = *funded_state();
    GasSchedule schedule;
    Transaction tx = transfer(kAlice, kBob, 5, 99); // also a bad nonce
    tx.authorized = false;
    CHECK_EQ(apply_transaction(state, tx, schedule.block_gas_limit, schedule, ExecContext{1, 14},
                               kMiner)
                 .status,
             TxStatus::Unauthorized);
}

TEST_CASE("nonce overflow at the signed-counter boundary") {
    WorldState state = *funded_state();
    state.account(kAlice).nonce = kMaxNonce;
    GasSchedule schedule;
    Transaction tx = transfer(kAlice, kBob, 1, kMaxNonce);
    const Receipt receipt = apply_transaction(state, tx, schedule.block_gas_limit, schedule,
                                              ExecContext{1, 14}, kMiner);
    CHECK_EQ(receipt.status, TxStatus::NonceOverflow);
    CHECK_EQ(state.account(kAlice).nonce, kMaxNonce);
    CHECK_EQ(kMaxNonce, (uint64_t{1} << 63) - 1);
}

TEST_CASE("successful transfer settles balances and fees") {
    WorldState state = *funded_state();
    GasSchedule schedule;
    Transaction tx = transfer(kAlice, kBob, 1'000, 0, 3);
    const Receipt receipt = apply_transaction(state, tx, schedule.block_gas_limit, schedule,
                                              ExecContext{1, 14}, kMiner);
    CHECK_EQ(receipt.status, TxStatus::Success);
    CHECK_EQ(receipt.gas_used, 21'000);
    CHECK(state.account(kAlice).balance ==
          Wei(10'000'000'000ULL) - Wei(1'000) - Wei(21'000) * Wei(3));
    CHECK(state.account(kBob).balance == Wei(10'000'000'000ULL) + Wei(1'000));
    CHECK(state.account(kMiner).balance == Wei(21'000) * Wei(3));
    CHECK_EQ(state.account(kAlice).nonce, 1);
}

TEST_CASE("out of gas consumes the whole limit and nothing else happens") {
    WorldState state = *funded_state();
    GasSchedule schedule;
    Transaction tx;
    tx.sender = kAlice;
    tx.nonce = 0;
    tx.gas_limit = 30'000; // pin_add costs 64,972
    tx.gas_price = 2;
    tx.payload = ContractCall{pinning_address(), "pin_add", Bytes{}};
    const Receipt receipt = apply_transaction(state, tx, schedule.block_gas_limit, schedule,
                                              ExecContext{1, 14}, kMiner);
    CHECK_EQ(receipt.status, TxStatus::OutOfGas);
    CHECK_EQ(receipt.gas_used, 30'000);
    CHECK(state.account(kAlice).balance == Wei(10'000'000'000ULL) - Wei(30'000) * Wei(2));
    CHECK_EQ(state.account(kAlice).nonce, 1); // included, so the nonce burns
}

TEST_CASE("replaying an included transaction always yields BadNonce") {
    WorldState state = *funded_state();
    GasSchedule schedule;
    Rng rng(21);
    uint64_t expected_nonce = 0;
    for (int i = 0; i < 200; ++i) {
        Transaction tx = transfer(kAlice, kBob, rng.uniform(100), expected_nonce);
        CHECK_EQ(apply_transaction(state, tx, schedule.block_gas_limit, schedule,
                                   ExecContext{1, 14}, kMiner)
                     .status,
                 TxStatus::Success);
        ++expected_nonce;
        // Replay the same transaction and a random stale one.
        CHECK_EQ(apply_transaction(state, tx, schedule.block_gas_limit, schedule,
                                   ExecContext{1, 14}, kMiner)
                     .status,
                 TxStatus::BadNonce);
        Transaction stale = transfer(kAlice, kBob, 1, rng.uniform(expected_nonce));
        CHECK_EQ(apply_transaction(state, stale, schedule.block_gas_limit, schedule,
                                   ExecContext{1, 14}, kMiner)
                     .status,
                 TxStatus::BadNonce);
        Transaction future = transfer(kAlice, kBob, 1, expected_nonce + 1 + rng.uniform(50));
        CHECK_EQ(apply_transaction(state, future, schedule.block_gas_limit, schedule,
                                   ExecContext{1, 14}, kMiner)
                     .status,
                 TxStatus::BadNonce);
    }
}

TEST_CASE("mempool orders by bid then submission") {
    Mempool pool;
    Transaction low = transfer(kAlice, kBob, 1, 0, 1);
    Transaction high = transfer(kBob, kAlice, 1, 0, 9);
    pool.submit(low);
    pool.submit(high);
    CHECK_EQ(pool.size(), 2);
    CHECK(pool.contains(kAlice, 0));
    CHECK_FALSE(pool.contains(kAlice, 1));

    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    BlockRecord block = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    REQUIRE_EQ(block.txs.size(), 2);
    CHECK(block.txs[0].sender == kBob); // higher bid first
    CHECK(block.txs[1].sender == kAlice);
    CHECK(pool.empty());
}

TEST_CASE("equal bids resolve by submission order") {
    Mempool pool;
    pool.submit(transfer(kAlice, kBob, 1, 0, 5));
    pool.submit(transfer(kBob, kAlice, 1, 0, 5));
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    BlockRecord block = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    REQUIRE_EQ(block.txs.size(), 2);
    CHECK(block.txs[0].sender == kAlice);
}

TEST_CASE("a nonce gap parks the sender until it fills") {
    Mempool pool;
    pool.submit(transfer(kAlice, kBob, 1, 1)); // nonce 0 missing
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    BlockRecord empty = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    CHECK(empty.txs.empty());
    CHECK_EQ(pool.size(), 1);
    CHECK_EQ(pool.next_nonce(kAlice, 0), 0);

    pool.submit(transfer(kAlice, kBob, 1, 0));
    CHECK_EQ(pool.next_nonce(kAlice, 0), 2);
    BlockRecord block = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 28, schedule);
    REQUIRE_EQ(block.txs.size(), 2);
    CHECK_EQ(block.txs[0].nonce, 0);
    CHECK_EQ(block.txs[1].nonce, 1);
}

TEST_CASE("mint evicts replayed transactions instead of including them") {
    Mempool pool;
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    const Transaction tx = transfer(kAlice, kBob, 7, 0);
    pool.submit(tx);
    BlockRecord first = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    const Hash256 h1 = first.header.hash;
    chain.insert_block(std::move(first));
    chain.fork_choice(h1);

    pool.submit(tx); // replay
    BlockRecord second = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 28, schedule);
    CHECK(second.txs.empty());
    CHECK(pool.empty());
}

TEST_CASE("block packing reserves gas limits, not usage") {
    Mempool pool;
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    // Each reserves 6M of an 8M block: only one fits per block.
    for (uint64_t n = 0; n < 2; ++n) {
        Transaction tx = transfer(kAlice, kBob, 1, n);
        tx.gas_limit = 6'000'000;
        pool.submit(tx);
    }
    BlockRecord block = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    CHECK_EQ(block.txs.size(), 1);
    CHECK_EQ(pool.size(), 1);
}

TEST_CASE("equal weight never displaces the head") {
    Mempool pool;
    ChainView chain = mined_chain(3, pool);
    const Hash256 incumbent = chain.head();
    const BlockRecord& parent = chain.record(chain.canonical_at(2));
    BlockRecord rival = extend_empty_block(parent, account_from_name("rival"), 0, 50);
    const Hash256 rival_hash = rival.header.hash;
    chain.insert_block(std::move(rival));
    const ForkChoiceResult result = chain.fork_choice(rival_hash);
    CHECK_FALSE(result.switched);
    CHECK(chain.head() == incumbent);
    CHECK_FALSE(result.reorg.has_value());
}

TEST_CASE("heavier branch wins and reports the reorg") {
    Mempool pool;
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;

    pool.submit(transfer(kAlice, kBob, 11, 0));
    BlockRecord a1 = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    const Hash256 a1h = a1.header.hash;
    chain.insert_block(std::move(a1));
    chain.fork_choice(a1h);
    pool.submit(transfer(kAlice, kBob, 12, 1));
    BlockRecord a2 = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 28, schedule);
    const Hash256 a2h = a2.header.hash;
    chain.insert_block(std::move(a2));
    chain.fork_choice(a2h);

    const std::set<Hash256> old_canonical{chain.canonical_at(0), a1h, a2h};

    // Three empty blocks from genesis outweigh the two-block incumbent.
    const AccountId rival = account_from_name("rival");
    const BlockRecord* cursor = &chain.record(chain.canonical_at(0));
    std::vector<Hash256> branch;
    std::vector<BlockRecord> built;
    for (int i = 0; i < 3; ++i) {
        built.push_back(extend_empty_block(*cursor, rival, 0, 30 + i));
        cursor = &built.back();
        branch.push_back(built.back().header.hash);
    }
    for (BlockRecord& record : built) chain.insert_block(std::move(record));
    const ForkChoiceResult result = chain.fork_choice(branch.back());

    CHECK(result.switched);
    REQUIRE(result.reorg.has_value());
    const ReorgReport& report = *result.reorg;
    CHECK_EQ(report.reverted, std::vector<Hash256>{a1h, a2h});
    CHECK_EQ(report.adopted, branch);

    // Conservation: reverted and adopted are disjoint; dropped transactions
    // are exactly the reverted blocks' transactions minus re-included ones.
    for (const Hash256& hash : report.reverted) {
        CHECK(std::find(report.adopted.begin(), report.adopted.end(), hash) ==
              report.adopted.end());
    }
    CHECK_EQ(report.dropped_txs.size(), 2);
    CHECK_EQ(chain.head_number(), 3);

    // State rewound: the transfers never happened on the new branch.
    CHECK(chain.head_state().find_account(kBob)->balance == Wei(10'000'000'000ULL));

    // New canonical set = (old canonical minus reverted) plus adopted.
    std::set<Hash256> expected = old_canonical;
    for (const Hash256& hash : report.reverted) expected.erase(hash);
    expected.insert(report.adopted.begin(), report.adopted.end());
    std::set<Hash256> actual;
    for (uint64_t n = 0; n <= chain.head_number(); ++n) actual.insert(chain.canonical_at(n));
    CHECK(actual == expected);
}

TEST_CASE("reorg keeps re-included transactions out of dropped_txs") {
    Mempool pool;
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    const Transaction kept = transfer(kAlice, kBob, 11, 0);
    pool.submit(kept);
    BlockRecord a1 = mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule);
    const Hash256 a1h = a1.header.hash;
    chain.insert_block(std::move(a1));
    chain.fork_choice(a1h);

    // Rival branch re-includes the same transaction in its first block.
    const Hash256 genesis = chain.canonical_at(0);
    BlockRecord b1 = build_block(chain, genesis, account_from_name("rival"), {kept}, 0, 20,
                                 schedule);
    BlockRecord b2 = extend_empty_block(b1, account_from_name("rival"), 0, 21);
    const Hash256 tip = b2.header.hash;
    chain.insert_block(std::move(b1));
    chain.insert_block(std::move(b2));
    const ForkChoiceResult result = chain.fork_choice(tip);
    REQUIRE(result.reorg.has_value());
    CHECK(result.reorg->dropped_txs.empty());
}

TEST_CASE("canonical queries and confirmations") {
    Mempool pool;
    ChainView chain = mined_chain(4, pool);
    CHECK_EQ(chain.confirmations(chain.canonical_at(1)), 3);
    CHECK_EQ(chain.confirmations(chain.head()), 0);
    CHECK(chain.is_canonical(chain.canonical_at(2)));
    CHECK_THROWS_AS(chain.canonical_at(99), Error);
    CHECK_THROWS_AS(chain.record(hash_of_string("missing")), Error);
    CHECK_FALSE(chain.contains(hash_of_string("missing")));
}

TEST_CASE("minting is deterministic for identical inputs") {
    auto build = [] {
        Mempool pool;
        pool.submit(transfer(kAlice, kBob, 5, 0, 2));
        pool.submit(transfer(kBob, kAlice, 6, 0, 3));
        ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
        GasSchedule schedule;
        return mint_block(chain, kMiner, pool, schedule.block_gas_limit, 14, schedule)
            .header.hash;
    };
    CHECK(build() == build());
}

TEST_CASE("replaying the canonical chain reproduces every commitment") {
    // Contract state is a pure function of the transaction sequence: applying
    // each canonical block's transactions onto the parent state must land on
    // the recorded state_commitment.
    Mempool pool;
    Rng rng(31);
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, funded_state(), 0);
    GasSchedule schedule;
    uint64_t alice_nonce = 0;
    uint64_t bob_nonce = 0;
    for (int b = 0; b < 10; ++b) {
        const uint64_t count = rng.uniform(4);
        for (uint64_t i = 0; i < count; ++i) {
            if (rng.bernoulli(0.5)) {
                pool.submit(transfer(kAlice, kBob, rng.uniform(1000), alice_nonce++,
                                     1 + rng.uniform(5)));
            } else {
                pool.submit(transfer(kBob, kAlice, rng.uniform(1000), bob_nonce++,
                                     1 + rng.uniform(5)));
            }
        }
        BlockRecord record =
            mint_block(chain, kMiner, pool, schedule.block_gas_limit, (b + 1) * 14, schedule);
        const Hash256 hash = record.header.hash;
        chain.insert_block(std::move(record));
        chain.fork_choice(hash);
    }

    WorldState replayed = *chain.record(chain.canonical_at(0)).state;
    for (uint64_t n = 1; n <= chain.head_number(); ++n) {
        const BlockRecord& record = chain.record(chain.canonical_at(n));
        const ExecContext ctx{record.header.number, record.header.timestamp};
        for (const Transaction& tx : record.txs) {
            apply_transaction(replayed, tx, schedule.block_gas_limit, schedule, ctx,
                              record.header.miner);
        }
        CHECK(replayed.commitment() == record.header.state_commitment);
    }
}

TEST_CASE("resume prunes history but keeps the head usable") {
    Mempool pool;
    ChainView chain = mined_chain(5, pool);
    ChainView resumed = ChainView::resume(FinalityMode::Probabilistic,
                                          chain.record(chain.head()));
    CHECK_EQ(resumed.head_number(), 5);
    CHECK(resumed.head() == chain.head());
    CHECK_THROWS_AS(resumed.canonical_at(0), Error);
    CHECK_EQ(resumed.block_count(), 1);
}

} // TEST_SUITE("chain")
