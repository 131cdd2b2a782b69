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

#include "chaincoord/clients.hpp"

#include <algorithm>
#include <cmath>

#include "chaincoord/errors.hpp"

namespace chaincoord {

// ---------------------------------------------------------------------------
// TxTracker

void TxTracker::track(const Transaction& tx) { outstanding_.emplace(tx.hash(), tx); }

bool TxTracker::untrack(const Hash256& tx_hash) { return outstanding_.erase(tx_hash) > 0; }

bool TxTracker::tracked(const Hash256& tx_hash) const { return outstanding_.count(tx_hash) > 0; }

std::vector<std::pair<Hash256, Transaction>> TxTracker::resubmit_dropped(
    World& world, SimChain& chain, const ReorgReport& report) {
    std::vector<std::pair<Hash256, Transaction>> resubmitted;
    for (const Transaction& dropped : report.dropped_txs) {
        const Hash256 old_hash = dropped.hash();
        auto it = outstanding_.find(old_hash);
        if (it == outstanding_.end()) continue;
        Transaction fresh = it->second;
        outstanding_.erase(it);
        fresh.nonce = world.next_nonce(chain, fresh.sender);
        outstanding_.emplace(fresh.hash(), fresh);
        world.submit_tx(chain, fresh);
        resubmitted.emplace_back(old_hash, fresh);
        ++resubmissions_;
    }
    return resubmitted;
}

// ---------------------------------------------------------------------------
// SidechainRuntime

SidechainRuntime::SidechainRuntime(Sidechain side, GasSchedule schedule,
                                   std::string coordination_chain, int64_t heartbeat,
                                   int64_t stop_at)
    : side_(std::move(side)), schedule_(schedule),
      coordination_chain_(std::move(coordination_chain)), heartbeat_(heartbeat),
      stop_at_(stop_at) {}

std::pair<uint64_t, Hash256> SidechainRuntime::head_info() const {
    return {side_.chain.head_number(), side_.chain.head()};
}

uint64_t SidechainRuntime::take_nonce(const AccountId& account) {
    auto it = local_nonces_.find(account);
    if (it == local_nonces_.end()) {
        const Account* on_chain = side_.chain.head_state().find_account(account);
        it = local_nonces_.emplace(account, on_chain != nullptr ? on_chain->nonce : 0).first;
    }
    return it->second++;
}

void SidechainRuntime::queue_tx(Transaction tx) { pending_.push_back(std::move(tx)); }

void SidechainRuntime::queue_call(const ContractCall& call, size_t validator_index) {
    if (side_.validators.empty()) fail(Errc::InternalError, "sidechain has no validators");
    Transaction tx;
    tx.sender = side_.validators[validator_index % side_.validators.size()];
    tx.nonce = take_nonce(tx.sender);
    tx.gas_limit = worst_case_call_gas(call, schedule_);
    tx.gas_price = 1;
    tx.payload = call;
    queue_tx(std::move(tx));
}

void SidechainRuntime::put_provisional(const Hash256& tx_id, std::vector<KvWrite> writes) {
    overlays_[tx_id] = std::move(writes);
}

void SidechainRuntime::drop_provisional(const Hash256& tx_id) { overlays_.erase(tx_id); }

bool SidechainRuntime::has_provisional(const Hash256& tx_id) const {
    return overlays_.count(tx_id) > 0;
}

void SidechainRuntime::commit_writes(const Hash256& tx_id) {
    auto it = overlays_.find(tx_id);
    if (it == overlays_.end()) fail(Errc::NotFound, "no provisional overlay for that tx");
    queue_call(make_kv_put(it->second));
    overlays_.erase(it);
}

std::optional<Bytes> SidechainRuntime::committed_read(const Hash256& key) const {
    const auto& kv = side_.chain.head_state().kv;
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
}

void SidechainRuntime::on_tick(World& world) {
    if (side_.archived) return;
    if (stop_at_ >= 0 && world.now() > stop_at_) return;
    const bool due_heartbeat = world.now() - last_seal_ >= heartbeat_;
    if (pending_.empty() && !due_heartbeat) return;
    const BlockRecord& sealed = seal_block(side_, pending_, world.now(), schedule_);
    txs_sealed_ += sealed.txs.size();
    blocks_sealed_ += 1;
    last_seal_ = world.now();
    pending_.clear();
}

void SidechainRuntime::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    (void)world, (void)block;
    if (chain.name != coordination_chain_) return;
    observed_keyset_version_ = chain.chain.head_state().contracts.keyset.active_version(side_.id);
}

// ---------------------------------------------------------------------------
// PinClient

PinClient::PinClient(Hash256 source_id, std::function<std::pair<uint64_t, Hash256>()> head_fn,
                     std::string target_chain, std::vector<std::string> stack_chains,
                     std::vector<AccountId> posters, int64_t pin_interval,
                     int64_t schedule_horizon, double bid_multiplier)
    : source_id_(source_id), head_fn_(std::move(head_fn)), target_chain_(std::move(target_chain)),
      stack_chains_(std::move(stack_chains)), posters_(std::move(posters)),
      pin_interval_(pin_interval), schedule_horizon_(schedule_horizon),
      bid_multiplier_(bid_multiplier) {
    if (posters_.empty()) fail(Errc::InternalError, "pin client needs posting accounts");
}

void PinClient::on_tick(World& world) {
    while (next_pin_at_ <= world.now() && next_pin_at_ < schedule_horizon_) {
        PinSample sample;
        sample.scheduled_at = next_pin_at_;
        sample.submitted_at = world.now();
        samples_.push_back(sample);
        submit_pin(world, samples_.size() - 1);
        next_pin_at_ += pin_interval_;
    }
}

void PinClient::submit_pin(World& world, size_t sample_index) {
    SimChain* target = world.find_chain(target_chain_);
    if (target == nullptr) fail(Errc::NotFound, "pin target chain missing: " + target_chain_);
    PinSample& sample = samples_[sample_index];
    const auto [number, hash] = head_fn_();
    sample.pinned_number = number;
    sample.pinned_hash = hash;

    Transaction tx;
    tx.sender = posters_[sample_index % posters_.size()];
    tx.nonce = world.next_nonce(*target, tx.sender);
    tx.gas_limit = target->schedule.pin_tx_gas;
    tx.gas_price = std::max<uint64_t>(
        1, static_cast<uint64_t>(std::llround(world.current_bid(*target) * bid_multiplier_)));
    tx.payload = make_pin_add(source_id_, number, hash);
    sample_by_tx_[tx.hash()] = sample_index;
    tracker_.track(tx);
    world.submit_tx(*target, tx);
    ++submitted_;
}

std::vector<PinStackLevel> PinClient::build_stack(World& world) const {
    std::vector<PinStackLevel> stack;
    for (const std::string& name : stack_chains_) {
        SimChain* chain = world.find_chain(name);
        if (chain == nullptr) fail(Errc::NotFound, "stack chain missing: " + name);
        PinStackLevel level;
        level.chain_id = chain->id;
        level.chain = &chain->chain;
        level.mode = chain->mode;
        level.policy = chain->policy;
        stack.push_back(level);
    }
    return stack;
}

void PinClient::refresh_finality(World& world) {
    const std::vector<PinStackLevel> stack = build_stack(world);
    for (PinSample& sample : samples_) {
        if (sample.included_at < 0 || sample.final_at >= 0 || sample.rejected) continue;
        try {
            if (pin_finality(source_id_, sample.pinned_number, stack) == PinStatus::Final) {
                sample.final_at = world.now();
                ++finalized_;
                // Settled; a later reorg shallower than finality cannot drop it.
                for (auto it = sample_by_tx_.begin(); it != sample_by_tx_.end(); ++it) {
                    if (it->second == static_cast<size_t>(&sample - samples_.data())) {
                        tracker_.untrack(it->first);
                    }
                }
            }
        } catch (const Error& err) {
            if (err.code() != Errc::UnknownPin) throw;
        }
    }
}

void PinClient::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    if (chain.name == target_chain_) {
        for (size_t i = 0; i < block.txs.size(); ++i) {
            auto it = sample_by_tx_.find(block.txs[i].hash());
            if (it == sample_by_tx_.end()) continue;
            PinSample& sample = samples_[it->second];
            if (block.receipts[i].status == TxStatus::Success) {
                sample.included_at = block.header.timestamp;
                sample.included_block = block.header.hash;
                ++landed_;
            } else {
                sample.rejected = true;
                tracker_.untrack(block.txs[i].hash());
            }
        }
    }
    if (std::find(stack_chains_.begin(), stack_chains_.end(), chain.name) !=
        stack_chains_.end()) {
        refresh_finality(world);
    }
}

void PinClient::on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
    if (chain.name != target_chain_) return;
    const auto resubmitted = tracker_.resubmit_dropped(world, chain, report);
    for (const auto& [old_hash, fresh] : resubmitted) {
        auto it = sample_by_tx_.find(old_hash);
        if (it == sample_by_tx_.end()) continue;
        const size_t index = it->second;
        sample_by_tx_.erase(it);
        sample_by_tx_[fresh.hash()] = index;
        PinSample& sample = samples_[index];
        sample.resubmissions += 1;
        sample.included_at = -1;
        sample.included_block = Hash256{};
    }
    // Pins that rode along into the adopted branch keep their inclusion but
    // move to the new block.
    for (const Hash256& adopted : report.adopted) {
        const BlockRecord& record = chain.chain.record(adopted);
        for (size_t i = 0; i < record.txs.size(); ++i) {
            auto it = sample_by_tx_.find(record.txs[i].hash());
            if (it == sample_by_tx_.end()) continue;
            PinSample& sample = samples_[it->second];
            if (record.receipts[i].status == TxStatus::Success) {
                sample.included_at = record.header.timestamp;
                sample.included_block = record.header.hash;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// SpamClient

SpamClient::SpamClient(std::string target_chain, double rate_per_s, uint64_t tx_gas,
                       int64_t start_at, int64_t stop_at, size_t account_count)
    : target_chain_(std::move(target_chain)), rate_(rate_per_s), tx_gas_(tx_gas),
      start_at_(start_at), stop_at_(stop_at) {
    for (size_t i = 0; i < account_count; ++i) {
        accounts_.push_back(account_from_name("spam/account/" + std::to_string(i)));
    }
    account_set_.insert(accounts_.begin(), accounts_.end());
    bogus_sidechain_ = hash_of_string("spam/void");
}

void SpamClient::on_tick(World& world) {
    if (world.now() < start_at_ || world.now() >= stop_at_) return;
    SimChain* target = world.find_chain(target_chain_);
    if (target == nullptr) fail(Errc::NotFound, "spam target chain missing: " + target_chain_);
    if (!nonces_primed_) {
        for (const AccountId& account : accounts_) {
            nonces_[account] = world.next_nonce(*target, account);
        }
        nonces_primed_ = true;
    }
    accumulator_ += rate_;
    const uint64_t bid = world.current_bid(*target);
    while (accumulator_ >= 1.0) {
        accumulator_ -= 1.0;
        const AccountId& sender = accounts_[counter_ % accounts_.size()];
        Transaction tx;
        tx.sender = sender;
        tx.nonce = nonces_[sender]++;
        tx.gas_limit = tx_gas_;
        tx.gas_price = bid;
        if (tx_gas_ >= target->schedule.pin_tx_gas) {
            // Reverts with UnknownSidechain yet still burns the full pin cost.
            tx.payload = make_pin_add(bogus_sidechain_, counter_, hash_of_string("spam"));
        } else {
            tx.payload = ValueTransfer{account_from_name("spam/sink"), 0};
        }
        ++counter_;
        ++submitted_;
        world.submit_tx(*target, std::move(tx));
    }
}

void SpamClient::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    if (chain.name != target_chain_) return;
    bool any = false;
    for (size_t i = 0; i < block.txs.size(); ++i) {
        const Transaction& tx = block.txs[i];
        if (account_set_.count(tx.sender) == 0) continue;
        ++included_;
        spent_ += Wei(block.receipts[i].gas_used) * Wei(tx.gas_price);
        any = true;
    }
    if (any) spend_curve_.emplace_back(world.now(), spent_);
}

void SpamClient::on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
    (void)world;
    if (chain.name != target_chain_) return;
    // Account nonces rewound with the state, so the dropped transactions are
    // valid again verbatim.
    for (const Transaction& dropped : report.dropped_txs) {
        if (account_set_.count(dropped.sender) > 0) chain.pool.submit(dropped);
    }
}

// ---------------------------------------------------------------------------
// PrivateMinerAdversary

PrivateMinerAdversary::PrivateMinerAdversary(std::string target_chain, double q,
                                             uint64_t give_up_deficit, Rng rng)
    : target_chain_(std::move(target_chain)), q_(q), give_up_(give_up_deficit), rng_(rng),
      miner_(account_from_name("adversary/miner")) {
    if (q < 0.0 || q >= 1.0) fail(Errc::DomainError, "q must lie in [0, 1)");
}

void PrivateMinerAdversary::reset_epoch() {
    epoch_active_ = false;
    counted_ = false;
    private_len_ = 0;
}

void PrivateMinerAdversary::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    if (chain.name != target_chain_ || q_ <= 0.0) return;
    if (block.header.miner == miner_) return; // own published branch

    const double lambda = q_ / (1.0 - q_);
    if (!epoch_active_) {
        epoch_active_ = true;
        counted_ = false;
        target_hash_ = block.header.hash;
        target_number_ = block.header.number;
        fork_parent_ = block.header.parent_hash;
        fork_parent_number_ = block.header.number - 1;
        private_len_ = 0; // progress accrues per honest block on top of the target
    } else {
        private_len_ += rng_.poisson(lambda);
    }

    if (!chain.chain.is_canonical(target_hash_)) {
        // Someone else reverted the target; the race is moot.
        reset_epoch();
        return;
    }
    // The race ledger counts blocks on top of the target, so the deficit at
    // acceptance is exactly the confirmation count, the closed form's walk.
    const uint64_t honest_len = block.header.number - target_number_;
    if (!counted_ && honest_len >= chain.policy.confirmations) {
        counted_ = true;
        ++trials_;
    }
    if (!counted_) return;
    if (private_len_ >= honest_len) {
        // Breakeven counts as a catch-up, the closed form's convention.
        world.enqueue([this, name = chain.name](World& w) {
            SimChain* target = w.find_chain(name);
            if (target != nullptr) publish(w, *target);
        });
    } else if (honest_len >= private_len_ + give_up_) {
        reset_epoch();
    }
}

void PrivateMinerAdversary::publish(World& world, SimChain& chain) {
    if (!epoch_active_ || !chain.chain.is_canonical(target_hash_)) {
        reset_epoch();
        return;
    }
    const uint64_t honest_len = chain.chain.head_number() - target_number_;
    if (private_len_ < honest_len) return; // lead evaporated; keep racing

    // One block beyond the honest head wins fork choice; at breakeven that
    // block is the one the walk grants the attacker on catching up.
    const uint64_t publish_len = (chain.chain.head_number() - fork_parent_number_) + 1;
    std::vector<BlockRecord> branch;
    const BlockRecord* cursor = &chain.chain.record(fork_parent_);
    for (uint64_t i = 0; i < publish_len; ++i) {
        branch.push_back(extend_empty_block(*cursor, miner_, 0, world.now()));
        cursor = &branch.back();
    }
    const Hash256 target = target_hash_;
    const ForkChoiceResult result = world.submit_branch(chain, std::move(branch));
    if (result.switched && !chain.chain.is_canonical(target)) ++reversions_;
    reset_epoch();
}

void PrivateMinerAdversary::on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
    (void)world, (void)report;
    if (chain.name != target_chain_ || !epoch_active_) return;
    if (!chain.chain.is_canonical(target_hash_)) reset_epoch();
}

// ---------------------------------------------------------------------------
// ReorgInjector

ReorgInjector::ReorgInjector(std::string target_chain,
                             std::vector<std::pair<int64_t, uint64_t>> schedule)
    : target_chain_(std::move(target_chain)), schedule_(std::move(schedule)),
      miner_(account_from_name("injector/miner")) {}

void ReorgInjector::on_tick(World& world) {
    while (next_ < schedule_.size() && world.now() >= schedule_[next_].first) {
        SimChain* target = world.find_chain(target_chain_);
        if (target == nullptr) fail(Errc::NotFound, "reorg target chain missing");
        const uint64_t depth = schedule_[next_].second;
        if (target->chain.head_number() < depth) return; // retry next tick
        const Hash256 fork_parent =
            target->chain.canonical_at(target->chain.head_number() - depth);
        std::vector<BlockRecord> branch;
        const BlockRecord* cursor = &target->chain.record(fork_parent);
        for (uint64_t i = 0; i < depth + 1; ++i) {
            branch.push_back(extend_empty_block(*cursor, miner_, 0, world.now()));
            cursor = &branch.back();
        }
        ++next_;
        ++injected_;
        world.submit_branch(*target, std::move(branch));
    }
}

// ---------------------------------------------------------------------------
// SetupDriver

SetupDriver::SetupDriver(Hash256 sidechain_id, std::string sidechain_name,
                         std::string target_chain, AccountId operator_account,
                         std::vector<AccountId> participants, bool with_keyset, int64_t submit_at)
    : sidechain_id_(sidechain_id), sidechain_name_(std::move(sidechain_name)),
      target_chain_(std::move(target_chain)), operator_(operator_account),
      participants_(std::move(participants)), with_keyset_(with_keyset), submit_at_(submit_at) {
    if (participants_.empty()) fail(Errc::InternalError, "setup needs participants");
}

Bytes SetupDriver::salt_for(const std::string& sidechain_name, size_t index) {
    const Hash256 digest = hash_of_string(sidechain_name + "/salt/" + std::to_string(index));
    return Bytes(digest.v.begin(), digest.v.end());
}

PublicKey48 SetupDriver::keyset_key(const std::string& sidechain_name, uint64_t version) {
    const std::string base = sidechain_name + "/keyset/" + std::to_string(version);
    const Hash256 a = hash_of_string(base + "/a");
    const Hash256 b = hash_of_string(base + "/b");
    PublicKey48 key{};
    std::copy(a.v.begin(), a.v.end(), key.begin());
    std::copy(b.v.begin(), b.v.begin() + 16, key.begin() + 32);
    return key;
}

double SetupDriver::readiness_delay() const {
    return ready_ ? static_cast<double>(ready_time_ - inclusion_time_) : -1.0;
}

void SetupDriver::submit_call(World& world, SimChain& chain, const AccountId& sender,
                              const ContractCall& call) {
    Transaction tx;
    tx.sender = sender;
    tx.nonce = world.next_nonce(chain, sender);
    tx.gas_limit = worst_case_call_gas(call, chain.schedule);
    tx.gas_price = world.current_bid(chain);
    tx.payload = call;
    tracker_.track(tx);
    world.submit_tx(chain, tx);
}

void SetupDriver::submit_batch(World& world, SimChain& chain) {
    for (size_t i = 0; i < participants_.size(); ++i) {
        const Bytes salt = salt_for(sidechain_name_, i);
        submit_call(world, chain, operator_,
                    make_add_masked(sidechain_id_,
                                    participant_commitment(salt, participants_[i])));
    }
    for (size_t i = 0; i < participants_.size(); ++i) {
        const Bytes salt = salt_for(sidechain_name_, i);
        submit_call(world, chain, participants_[i],
                    make_unmask(sidechain_id_, salt, participants_[i]));
    }
    if (with_keyset_) {
        submit_call(world, chain, participants_[0],
                    make_keyset_propose(sidechain_id_, 1, keyset_key(sidechain_name_, 1)));
        for (const AccountId& participant : participants_) {
            submit_call(world, chain, participant, make_keyset_vote(sidechain_id_, 1));
        }
    }
}

void SetupDriver::on_tick(World& world) {
    if (submitted_ || world.now() < submit_at_) return;
    SimChain* target = world.find_chain(target_chain_);
    if (target == nullptr) fail(Errc::NotFound, "setup target chain missing");
    submit_batch(world, *target);
    submitted_ = true;
}

void SetupDriver::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    (void)world;
    if (chain.name != target_chain_) return;
    for (const Transaction& tx : block.txs) tracker_.untrack(tx.hash());
    if (!with_keyset_) return;
    if (!activation_seen_) {
        if (chain.chain.head_state().contracts.keyset.active_version(sidechain_id_) >= 1) {
            activation_seen_ = true;
            activation_block_ = block.header.hash;
            inclusion_time_ = block.header.timestamp;
        }
    }
    if (activation_seen_ && !ready_) {
        if (chain.mode == FinalityMode::Instant) {
            ready_ = true;
            ready_time_ = inclusion_time_;
        } else if (chain.chain.is_canonical(activation_block_) &&
                   chain.chain.confirmations(activation_block_) >= chain.policy.confirmations) {
            ready_ = true;
            ready_time_ = block.header.timestamp;
        }
    }
}

void SetupDriver::on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
    if (chain.name != target_chain_) return;
    tracker_.resubmit_dropped(world, chain, report);
    if (activation_seen_ && !ready_) {
        for (const Hash256& reverted : report.reverted) {
            if (reverted == activation_block_) {
                // Readiness clock restarts from whatever block re-activates.
                activation_seen_ = false;
                inclusion_time_ = -1;
                activation_block_ = Hash256{};
            }
        }
    }
}

// ---------------------------------------------------------------------------
// RotationDriver

RotationDriver::RotationDriver(Hash256 sidechain_id, std::string sidechain_name,
                               std::string target_chain, std::vector<AccountId> participants,
                               uint64_t version, int64_t submit_at)
    : sidechain_id_(sidechain_id), sidechain_name_(std::move(sidechain_name)),
      target_chain_(std::move(target_chain)), participants_(std::move(participants)),
      version_(version), submit_at_(submit_at) {}

void RotationDriver::on_tick(World& world) {
    if (submitted_ || world.now() < submit_at_) return;
    SimChain* target = world.find_chain(target_chain_);
    if (target == nullptr) fail(Errc::NotFound, "rotation target chain missing");
    auto submit = [&](const AccountId& sender, const ContractCall& call) {
        Transaction tx;
        tx.sender = sender;
        tx.nonce = world.next_nonce(*target, sender);
        tx.gas_limit = worst_case_call_gas(call, target->schedule);
        tx.gas_price = world.current_bid(*target);
        tx.payload = call;
        tracker_.track(tx);
        world.submit_tx(*target, tx);
    };
    submit(participants_[0],
           make_keyset_propose(sidechain_id_, version_,
                               SetupDriver::keyset_key(sidechain_name_, version_)));
    for (const AccountId& participant : participants_) {
        submit(participant, make_keyset_vote(sidechain_id_, version_));
    }
    submitted_ = true;
}

void RotationDriver::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    (void)world;
    if (chain.name != target_chain_) return;
    for (const Transaction& tx : block.txs) tracker_.untrack(tx.hash());
    const uint64_t active =
        chain.chain.head_state().contracts.keyset.active_version(sidechain_id_);
    if (!activated_ && active >= version_) {
        activated_ = true;
        activation_time_ = block.header.timestamp;
    } else if (activated_ && active < version_) {
        activated_ = false; // rolled back with a reorg; re-detect later
        activation_time_ = -1;
    }
}

void RotationDriver::on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
    if (chain.name != target_chain_) return;
    tracker_.resubmit_dropped(world, chain, report);
}

} // namespace chaincoord
