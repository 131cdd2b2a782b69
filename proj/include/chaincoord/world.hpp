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
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chaincoord/chain.hpp"
#include "chaincoord/rng.hpp"

namespace chaincoord {

class World;

// Live counters a final chain walk cannot reconstruct.
struct ChainEvents {
    uint64_t reorg_events = 0;
    uint64_t reverted_blocks = 0;
    // Reverted blocks that already had policy.confirmations at reorg time.
    uint64_t finalized_reverted = 0;
    uint64_t blocks_minted = 0;
};

// One block-producing chain inside a simulation: a coordination root
// (probabilistic) or an intermediate pinning chain (instant).
struct SimChain {
    Hash256 id{};
    std::string name;
    FinalityMode mode = FinalityMode::Probabilistic;
    FinalityPolicy policy{};
    GasSchedule schedule{};
    PriceState price{};
    double block_time = 14.0;
    bool stochastic = false;
    AccountId miner{};
    ChainView chain;
    Mempool pool;
    int64_t next_block_at = 0;
    Rng timing_rng{0};
    ChainEvents events;
};

// Simulation actors implement this and react to the world's fixed dispatch
// order: every component ticks each second (registration order), then each
// due chain mints, then block/reorg notifications fire, then deferred
// actions drain. Determinism holds because nothing else reorders work.
class Component {
  public:
    virtual ~Component() = default;
    virtual void on_tick(World& world) { (void)world; }
    virtual void on_block(World& world, SimChain& chain, const BlockRecord& block) {
        (void)world, (void)chain, (void)block;
    }
    virtual void on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
        (void)world, (void)chain, (void)report;
    }
};

// Deterministic discrete event loop with a one-second clock. The first
// registered chain is the root.
class World {
  public:
    explicit World(uint64_t seed, int64_t genesis_time = 0);
    World(World&&) = default;
    World& operator=(World&&) = default;

    SimChain& add_chain(std::string name, FinalityMode mode, const GasSchedule& schedule,
                        const FinalityPolicy& policy, double block_time, bool stochastic,
                        double initial_gas_price,
                        const std::vector<std::pair<AccountId, Wei>>& balances);

    SimChain& root() { return *chains_.front(); }
    const SimChain& root() const { return *chains_.front(); }
    size_t chain_count() const { return chains_.size(); }
    SimChain& chain_at(size_t index) { return *chains_.at(index); }
    SimChain* find_chain(std::string_view name);
    SimChain* find_chain(const Hash256& id);

    template <class T, class... Args>
    T& add_component(Args&&... args) {
        auto owned = std::make_unique<T>(std::forward<Args>(args)...);
        T& ref = *owned;
        components_.push_back(std::move(owned));
        return ref;
    }

    int64_t now() const { return now_; }
    uint64_t seed() const { return seed_; }
    // Sequential per-consumer streams; draw order is registration order.
    Rng next_stream() { return Rng(Rng::derive_seed(seed_, stream_count_++)); }

    void run_until(int64_t t);
    void run_for(int64_t seconds) { run_until(now_ + seconds); }

    // Transaction intake: stamps nothing, just pools the transaction.
    void submit_tx(SimChain& chain, Transaction tx);
    // Smallest usable nonce given head state and what is already pooled.
    uint64_t next_nonce(SimChain& chain, const AccountId& sender) const;
    // Current bid in whole wei for new transactions on `chain`.
    uint64_t current_bid(const SimChain& chain) const;

    // Inserts a foreign block (or branch) and runs fork choice on the tip,
    // dispatching block and reorg notifications exactly like honest minting.
    ForkChoiceResult submit_branch(SimChain& chain, std::vector<BlockRecord> branch);

    // Defers `action` until the current dispatch finishes; used by components
    // that must not mutate chains from inside a notification.
    void enqueue(std::function<void(World&)> action);

  private:
    void tick();
    void mint_due(SimChain& chain);
    void schedule_next_block(SimChain& chain);
    void dispatch_block(SimChain& chain, const Hash256& hash);
    void dispatch_reorg(SimChain& chain, const ReorgReport& report);
    void drain_actions();

    uint64_t seed_;
    uint64_t stream_count_ = 0;
    int64_t now_;
    int64_t genesis_time_;
    std::vector<std::unique_ptr<SimChain>> chains_;
    std::vector<std::unique_ptr<Component>> components_;
    std::deque<std::function<void(World&)>> actions_;
};

// Total gas the included transactions reserved (sum of gas_limit), the
// quantity block packing is bounded by.
uint64_t reserved_gas(const BlockRecord& block);

} // namespace chaincoord
