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

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chaincoord/sidechain.hpp"
#include "chaincoord/world.hpp"

namespace chaincoord {

// Tracks submitted-but-unresolved transactions by hash. Dropped transactions
// are not re-pooled by the chain, so every client owns its own retries.
class TxTracker {
  public:
    void track(const Transaction& tx);
    bool untrack(const Hash256& tx_hash);
    bool tracked(const Hash256& tx_hash) const;
    size_t pending() const { return outstanding_.size(); }
    uint64_t resubmissions() const { return resubmissions_; }

    // Resubmits every tracked transaction the reorg dropped, keeping payload
    // and bid but drawing a fresh nonce. Returns (old hash, new tx) pairs.
    std::vector<std::pair<Hash256, Transaction>> resubmit_dropped(World& world, SimChain& chain,
                                                                  const ReorgReport& report);

  private:
    std::map<Hash256, Transaction> outstanding_;
    uint64_t resubmissions_ = 0;
};

// ---------------------------------------------------------------------------
// Sidechain runtime: seals queued transactions each tick and holds the
// provisional (not yet decided) crosschain overlays off-state.

class SidechainRuntime : public Component {
  public:
    // `heartbeat` caps how long the head may stand still: an empty block is
    // sealed after that many quiet seconds, so successive pins always carry
    // increasing block numbers. After `stop_at` (-1 = never) nothing seals,
    // freezing the head for the final pin and the archive.
    SidechainRuntime(Sidechain side, GasSchedule schedule, std::string coordination_chain,
                     int64_t heartbeat = 600, int64_t stop_at = -1);

    const Hash256& id() const { return side_.id; }
    Sidechain& side() { return side_; }
    const Sidechain& side() const { return side_; }
    std::pair<uint64_t, Hash256> head_info() const;
    Hash256 state_commitment() const { return side_.chain.head_state().commitment(); }
    const GasSchedule& schedule() const { return schedule_; }

    // Queued transactions seal into one final block at the next tick.
    void queue_tx(Transaction tx);
    // Convenience: queue a contract call from a validator account.
    void queue_call(const ContractCall& call, size_t validator_index = 0);

    void put_provisional(const Hash256& tx_id, std::vector<KvWrite> writes);
    void drop_provisional(const Hash256& tx_id);
    bool has_provisional(const Hash256& tx_id) const;
    // Turns the overlay into a sealed kv_put transaction.
    void commit_writes(const Hash256& tx_id);
    // Committed value for `key`, overlay-blind (reads sealed state only).
    std::optional<Bytes> committed_read(const Hash256& key) const;

    // Active key-set version on the coordination chain as last observed.
    uint64_t observed_keyset_version() const { return observed_keyset_version_; }

    uint64_t blocks_sealed() const { return blocks_sealed_; }
    uint64_t txs_sealed() const { return txs_sealed_; }

    void on_tick(World& world) override;
    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;

  private:
    uint64_t take_nonce(const AccountId& account);

    Sidechain side_;
    GasSchedule schedule_;
    std::string coordination_chain_;
    int64_t heartbeat_;
    int64_t stop_at_;
    int64_t last_seal_ = 0;
    std::vector<Transaction> pending_;
    std::map<Hash256, std::vector<KvWrite>> overlays_;
    std::map<AccountId, uint64_t> local_nonces_;
    uint64_t observed_keyset_version_ = 0;
    uint64_t blocks_sealed_ = 0;
    uint64_t txs_sealed_ = 0;
};

// ---------------------------------------------------------------------------
// Pin client: posts the source chain's head to the target chain's pinning
// contract on a fixed schedule, rotating the posting account, resubmitting
// dropped pins, and measuring inclusion latency and stack-wide finality.

struct PinSample {
    uint64_t pinned_number = 0;
    Hash256 pinned_hash{};
    int64_t scheduled_at = 0;
    int64_t submitted_at = 0;
    int64_t included_at = -1;
    int64_t final_at = -1;
    Hash256 included_block{};
    uint64_t resubmissions = 0;
    bool rejected = false; // pin reverted (stale after a racing resubmit)
};

class PinClient : public Component {
  public:
    // `stack_chains` runs from the target chain to the root; `source_id` is
    // the registry key the pins are filed under.
    PinClient(Hash256 source_id, std::function<std::pair<uint64_t, Hash256>()> head_fn,
              std::string target_chain, std::vector<std::string> stack_chains,
              std::vector<AccountId> posters, int64_t pin_interval, int64_t schedule_horizon,
              double bid_multiplier = 1.0);

    const std::vector<PinSample>& samples() const { return samples_; }
    uint64_t submitted() const { return submitted_; }
    uint64_t landed() const { return landed_; }
    uint64_t finalized() const { return finalized_; }
    uint64_t resubmissions() const { return tracker_.resubmissions(); }
    size_t stack_depth() const { return stack_chains_.size(); }

    void on_tick(World& world) override;
    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;
    void on_reorg(World& world, SimChain& chain, const ReorgReport& report) override;

  private:
    void submit_pin(World& world, size_t sample_index);
    void refresh_finality(World& world);
    std::vector<PinStackLevel> build_stack(World& world) const;

    Hash256 source_id_;
    std::function<std::pair<uint64_t, Hash256>()> head_fn_;
    std::string target_chain_;
    std::vector<std::string> stack_chains_;
    std::vector<AccountId> posters_;
    int64_t pin_interval_;
    int64_t schedule_horizon_;
    double bid_multiplier_;
    int64_t next_pin_at_ = 0;
    TxTracker tracker_;
    std::map<Hash256, size_t> sample_by_tx_;
    std::vector<PinSample> samples_;
    uint64_t submitted_ = 0;
    uint64_t landed_ = 0;
    uint64_t finalized_ = 0;
};

// ---------------------------------------------------------------------------
// Spam client: floods the target chain at a fixed rate. When tx_gas covers a
// pin transaction it submits pin calls for a nonexistent sidechain (reverted,
// but charged in full); otherwise plain transfers.

class SpamClient : public Component {
  public:
    SpamClient(std::string target_chain, double rate_per_s, uint64_t tx_gas, int64_t start_at,
               int64_t stop_at, size_t account_count = 8);

    uint64_t submitted() const { return submitted_; }
    uint64_t included() const { return included_; }
    // (time, cumulative usd-free spend in wei) sampled once per block.
    const std::vector<std::pair<int64_t, Wei>>& spend_curve() const { return spend_curve_; }
    const std::vector<AccountId>& accounts() const { return accounts_; }

    void on_tick(World& world) override;
    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;
    void on_reorg(World& world, SimChain& chain, const ReorgReport& report) override;

  private:
    std::string target_chain_;
    double rate_;
    uint64_t tx_gas_;
    int64_t start_at_;
    int64_t stop_at_;
    std::vector<AccountId> accounts_;
    std::set<AccountId> account_set_;
    std::map<AccountId, uint64_t> nonces_;
    bool nonces_primed_ = false;
    double accumulator_ = 0.0;
    uint64_t counter_ = 0;
    uint64_t submitted_ = 0;
    uint64_t included_ = 0;
    Wei spent_ = 0;
    std::vector<std::pair<int64_t, Wei>> spend_curve_;
    Hash256 bogus_sidechain_{};
};

// ---------------------------------------------------------------------------
// Private-chain race adversary: withholds a private branch forked below the
// newest block and publishes only once that target is final and the private
// branch is strictly heavier, so every published branch reverts a final
// block. Per honest block the adversary's progress is Poisson(q/p).

class PrivateMinerAdversary : public Component {
  public:
    PrivateMinerAdversary(std::string target_chain, double q, uint64_t give_up_deficit, Rng rng);

    uint64_t trials() const { return trials_; }     // targets that became final
    uint64_t reversions() const { return reversions_; }
    double q() const { return q_; }

    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;
    void on_reorg(World& world, SimChain& chain, const ReorgReport& report) override;

  private:
    void publish(World& world, SimChain& chain);
    void reset_epoch();

    std::string target_chain_;
    double q_;
    uint64_t give_up_;
    Rng rng_;
    AccountId miner_;

    bool epoch_active_ = false;
    bool counted_ = false;
    Hash256 target_hash_{};
    uint64_t target_number_ = 0;
    Hash256 fork_parent_{};
    uint64_t fork_parent_number_ = 0;
    uint64_t private_len_ = 0;

    uint64_t trials_ = 0;
    uint64_t reversions_ = 0;
};

// ---------------------------------------------------------------------------
// Reorg injector: at each scheduled instant, replaces the top `depth` blocks
// of the target chain with a one-longer empty branch. Depth stays below the
// finality policy by construction of the scenario validator.

class ReorgInjector : public Component {
  public:
    ReorgInjector(std::string target_chain, std::vector<std::pair<int64_t, uint64_t>> schedule);

    uint64_t injected() const { return injected_; }

    void on_tick(World& world) override;

  private:
    std::string target_chain_;
    std::vector<std::pair<int64_t, uint64_t>> schedule_; // (at, depth)
    size_t next_ = 0;
    uint64_t injected_ = 0;
    AccountId miner_;
};

// ---------------------------------------------------------------------------
// Setup driver: lands the sidechain's masked membership, the reveals, and
// (optionally) the version-1 key set on one target chain, then reports when
// the activation block turns final — the earliest usable moment.

class SetupDriver : public Component {
  public:
    SetupDriver(Hash256 sidechain_id, std::string sidechain_name, std::string target_chain,
                AccountId operator_account, std::vector<AccountId> participants, bool with_keyset,
                int64_t submit_at = 0);

    bool ready() const { return ready_; }
    // Seconds from activation inclusion to activation finality; -1 until known.
    double readiness_delay() const;
    int64_t inclusion_time() const { return inclusion_time_; }
    int64_t ready_time() const { return ready_time_; }
    uint64_t resubmissions() const { return tracker_.resubmissions(); }
    const Hash256& sidechain_id() const { return sidechain_id_; }
    const std::string& target_chain() const { return target_chain_; }
    bool with_keyset() const { return with_keyset_; }

    // Deterministic per-participant reveal salt.
    static Bytes salt_for(const std::string& sidechain_name, size_t index);
    static PublicKey48 keyset_key(const std::string& sidechain_name, uint64_t version);

    void on_tick(World& world) override;
    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;
    void on_reorg(World& world, SimChain& chain, const ReorgReport& report) override;

  private:
    void submit_batch(World& world, SimChain& chain);
    void submit_call(World& world, SimChain& chain, const AccountId& sender,
                     const ContractCall& call);

    Hash256 sidechain_id_;
    std::string sidechain_name_;
    std::string target_chain_;
    AccountId operator_;
    std::vector<AccountId> participants_;
    bool with_keyset_;
    int64_t submit_at_;
    bool submitted_ = false;
    TxTracker tracker_;

    bool activation_seen_ = false;
    Hash256 activation_block_{};
    int64_t inclusion_time_ = -1;
    bool ready_ = false;
    int64_t ready_time_ = -1;
};

// Seconds between key-set activation landing on the target chain and that
// block turning final, the earliest a first crosschain transaction can use
// the keys. -1 until final; 0 on instant-finality targets.
inline double first_transaction_readiness(const SetupDriver& setup) {
    return setup.readiness_delay();
}

// Rotates the key set to `version` at `submit_at`: one proposal plus a vote
// from every participant, with reorg-driven resubmission.

class RotationDriver : public Component {
  public:
    RotationDriver(Hash256 sidechain_id, std::string sidechain_name, std::string target_chain,
                   std::vector<AccountId> participants, uint64_t version, int64_t submit_at);

    bool activated() const { return activated_; }
    int64_t activation_time() const { return activation_time_; }

    void on_tick(World& world) override;
    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;
    void on_reorg(World& world, SimChain& chain, const ReorgReport& report) override;

  private:
    Hash256 sidechain_id_;
    std::string sidechain_name_;
    std::string target_chain_;
    std::vector<AccountId> participants_;
    uint64_t version_;
    int64_t submit_at_;
    bool submitted_ = false;
    bool activated_ = false;
    int64_t activation_time_ = -1;
    TxTracker tracker_;
};

} // namespace chaincoord
