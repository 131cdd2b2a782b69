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

#include "chaincoord/world.hpp"

#include <cmath>

#include "chaincoord/errors.hpp"

namespace chaincoord {

World::World(uint64_t seed, int64_t genesis_time)
    : seed_(seed), now_(genesis_time), genesis_time_(genesis_time) {}

SimChain& World::add_chain(std::string name, FinalityMode mode, const GasSchedule& schedule,
                           const FinalityPolicy& policy, double block_time, bool stochastic,
                           double initial_gas_price,
                           const std::vector<std::pair<AccountId, Wei>>& balances) {
    auto chain = std::make_unique<SimChain>();
    chain->id = hash_of_string(name);
    chain->name = std::move(name);
    chain->mode = mode;
    chain->policy = policy;
    chain->schedule = schedule;
    chain->price.gas_price = initial_gas_price;
    chain->price.floor_price = initial_gas_price;
    chain->block_time = block_time;
    chain->stochastic = stochastic;
    chain->miner = account_from_name(chain->name + "/miner");
    chain->timing_rng = next_stream();

    auto state = std::make_shared<WorldState>();
    state->meta.chain_id = chain->id;
    for (const auto& [account, balance] : balances) state->account(account).balance = balance;
    chain->chain =
        ChainView::genesis(mode, std::move(state), genesis_time_, initial_gas_price);
    chain->next_block_at = genesis_time_;
    schedule_next_block(*chain);

    chains_.push_back(std::move(chain));
    return *chains_.back();
}

SimChain* World::find_chain(std::string_view name) {
    for (auto& chain : chains_) {
        if (chain->name == name) return chain.get();
    }
    return nullptr;
}

SimChain* World::find_chain(const Hash256& id) {
    for (auto& chain : chains_) {
        if (chain->id == id) return chain.get();
    }
    return nullptr;
}

void World::run_until(int64_t t) {
    while (now_ < t) {
        ++now_;
        tick();
    }
}

void World::tick() {
    for (size_t i = 0; i < components_.size(); ++i) components_[i]->on_tick(*this);
    drain_actions();
    for (auto& chain : chains_) {
        while (now_ >= chain->next_block_at) mint_due(*chain);
    }
}

void World::schedule_next_block(SimChain& chain) {
    int64_t gap;
    if (chain.stochastic) {
        gap = std::max<int64_t>(1, std::llround(chain.timing_rng.exponential(chain.block_time)));
    } else {
        gap = std::max<int64_t>(1, std::llround(chain.block_time));
    }
    chain.next_block_at += gap;
}

void World::mint_due(SimChain& chain) {
    const int64_t at = chain.next_block_at;
    schedule_next_block(chain);

    BlockRecord record =
        mint_block(chain.chain, chain.miner, chain.pool, chain.schedule.block_gas_limit, at,
                   chain.schedule);
    const double utilization =
        static_cast<double>(reserved_gas(record)) / static_cast<double>(chain.schedule.block_gas_limit);
    chain.price = update_price(chain.price, utilization);
    record.gas_price_after = chain.price.gas_price;

    const Hash256 hash = record.header.hash;
    if (chain.mode == FinalityMode::Instant) {
        chain.chain.append_final(std::move(record));
    } else {
        chain.chain.insert_block(std::move(record));
        chain.chain.fork_choice(hash); // extends the head; never reorgs
    }
    chain.events.blocks_minted += 1;
    dispatch_block(chain, hash);
    drain_actions();
}

void World::dispatch_block(SimChain& chain, const Hash256& hash) {
    const BlockRecord& record = chain.chain.record(hash);
    for (size_t i = 0; i < components_.size(); ++i) components_[i]->on_block(*this, chain, record);
}

void World::dispatch_reorg(SimChain& chain, const ReorgReport& report) {
    for (size_t i = 0; i < components_.size(); ++i) components_[i]->on_reorg(*this, chain, report);
}

void World::drain_actions() {
    while (!actions_.empty()) {
        auto action = std::move(actions_.front());
        actions_.pop_front();
        action(*this);
    }
}

void World::submit_tx(SimChain& chain, Transaction tx) { chain.pool.submit(std::move(tx)); }

uint64_t World::next_nonce(SimChain& chain, const AccountId& sender) const {
    const Account* account = chain.chain.head_state().find_account(sender);
    const uint64_t base = account != nullptr ? account->nonce : 0;
    return chain.pool.next_nonce(sender, base);
}

uint64_t World::current_bid(const SimChain& chain) const {
    return std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(chain.price.gas_price)));
}

ForkChoiceResult World::submit_branch(SimChain& chain, std::vector<BlockRecord> branch) {
    if (branch.empty()) fail(Errc::InternalError, "empty branch");
    const uint64_t old_head_number = chain.chain.head_number();
    const Hash256 tip = branch.back().header.hash;
    for (BlockRecord& record : branch) chain.chain.insert_block(std::move(record));
    ForkChoiceResult result = chain.chain.fork_choice(tip);
    if (result.switched) {
        // Keep the fee market consistent with whatever branch won.
        chain.price.gas_price = chain.chain.record(chain.chain.head()).gas_price_after;
    }
    if (result.reorg) {
        chain.events.reorg_events += 1;
        chain.events.reverted_blocks += result.reorg->reverted.size();
        for (const Hash256& hash : result.reorg->reverted) {
            const uint64_t number = chain.chain.header(hash).number;
            if (old_head_number >= number &&
                old_head_number - number >= chain.policy.confirmations) {
                chain.events.finalized_reverted += 1;
            }
        }
        dispatch_reorg(chain, *result.reorg);
    }
    if (result.switched) dispatch_block(chain, chain.chain.head());
    drain_actions();
    return result;
}

void World::enqueue(std::function<void(World&)> action) {
    actions_.push_back(std::move(action));
}

uint64_t reserved_gas(const BlockRecord& block) {
    uint64_t total = 0;
    for (const Transaction& tx : block.txs) total += tx.gas_limit;
    return total;
}

} // namespace chaincoord
