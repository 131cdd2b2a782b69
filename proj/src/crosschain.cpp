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

#include "chaincoord/crosschain.hpp"

#include <set>

#include "chaincoord/errors.hpp"

namespace chaincoord {

std::string_view leg_fault_name(LegFault fault) {
    switch (fault) {
    case LegFault::None: return "none";
    case LegFault::Silent: return "silent";
    case LegFault::StaleKeyset: return "stale-keyset";
    }
    return "unknown";
}

namespace {

Bytes attested_value(const std::vector<KvWrite>& writes) {
    ByteWriter writer;
    writer.u32(static_cast<uint32_t>(writes.size()));
    for (const KvWrite& write : writes) {
        writer.hash(write.key);
        writer.blob(write.value);
    }
    return writer.take();
}

} // namespace

CrosschainCoordinator::CrosschainCoordinator(std::string coordination_chain, AccountId account,
                                             bool wait_start_final)
    : coordination_chain_(std::move(coordination_chain)), account_(account),
      wait_start_final_(wait_start_final) {}

void CrosschainCoordinator::register_runtime(SidechainRuntime* runtime) {
    runtimes_[runtime->id()] = runtime;
}

SimChain& CrosschainCoordinator::coordination(World& world) {
    SimChain* chain = world.find_chain(coordination_chain_);
    if (chain == nullptr) fail(Errc::NotFound, "coordination chain missing");
    return *chain;
}

SidechainRuntime& CrosschainCoordinator::runtime_for(const Hash256& sidechain_id) {
    auto it = runtimes_.find(sidechain_id);
    if (it == runtimes_.end()) fail(Errc::NotFound, "no runtime for sidechain " + sidechain_id.hex());
    return *it->second;
}

std::string CrosschainCoordinator::precondition_error(SimChain& chain,
                                                      const XtxPlan& plan) const {
    std::set<Hash256> distinct;
    for (const LegPlan& leg : plan.legs) distinct.insert(leg.sidechain_id);
    if (distinct.size() < 2 || distinct.size() != plan.legs.size())
        return "ValidationError: needs >= 2 distinct sidechain legs";
    const WorldState& state = chain.chain.head_state();
    for (const LegPlan& leg : plan.legs) {
        if (runtimes_.count(leg.sidechain_id) == 0)
            return "ValidationError: unknown sidechain leg";
        if (state.contracts.keyset.active_version(leg.sidechain_id) == 0)
            return "NoActiveKeyset";
    }
    if (state.contracts.xtx.find(plan.tx_id) != nullptr) return "DuplicateTxId";
    for (const XtxRun& run : runs_) {
        if (run.plan.tx_id == plan.tx_id) return "DuplicateTxId";
    }
    return {};
}

void CrosschainCoordinator::add_plan(XtxPlan plan) {
    XtxRun run;
    run.plan = std::move(plan);
    runs_.push_back(std::move(run));
}

void CrosschainCoordinator::add_plan_strict(World& world, XtxPlan plan) {
    const std::string error = precondition_error(coordination(world), plan);
    if (error == "NoActiveKeyset") fail(Errc::NoActiveKeyset, "a leg has no active key set");
    if (error == "DuplicateTxId") fail(Errc::DuplicateTxId, "tx_id already used");
    if (!error.empty()) fail(Errc::ValidationError, error);
    add_plan(std::move(plan));
}

bool CrosschainCoordinator::all_resolved() const {
    for (const XtxRun& run : runs_) {
        if (!run.resolved) return false;
    }
    return true;
}

const XtxRun* CrosschainCoordinator::find_run(const Hash256& tx_id) const {
    for (const XtxRun& run : runs_) {
        if (run.plan.tx_id == tx_id) return &run;
    }
    return nullptr;
}

void CrosschainCoordinator::submit_start(World& world, SimChain& chain, XtxRun& run) {
    std::set<Hash256> sidechains;
    for (const LegPlan& leg : run.plan.legs) sidechains.insert(leg.sidechain_id);
    Transaction tx;
    tx.sender = account_;
    tx.nonce = world.next_nonce(chain, tx.sender);
    const ContractCall call = make_xtx_start(run.plan.tx_id, sidechains, run.plan.timeout_blocks);
    tx.gas_limit = worst_case_call_gas(call, chain.schedule);
    tx.gas_price = world.current_bid(chain);
    tx.payload = call;
    run.start_tx = tx.hash();
    tracker_.track(tx);
    world.submit_tx(chain, tx);
    run.phase = XtxPhase::StartPending;
    if (run.submit_time < 0) run.submit_time = world.now();
}

void CrosschainCoordinator::run_legs(World& world, SimChain& chain, XtxRun& run) {
    for (const LegPlan& leg : run.plan.legs) {
        if (run.attestations.count(leg.sidechain_id) > 0) continue;
        if (leg.fault == LegFault::Silent) continue;
        if (world.now() < run.legs_dispatched_at + leg.attest_delay) continue;
        SidechainRuntime& runtime = runtime_for(leg.sidechain_id);
        runtime.put_provisional(run.plan.tx_id, leg.writes);
        Attestation attestation;
        attestation.sidechain_id = leg.sidechain_id;
        const uint64_t observed = runtime.observed_keyset_version();
        attestation.keyset_version =
            leg.fault == LegFault::StaleKeyset ? (observed > 0 ? observed - 1 : 0) : observed;
        attestation.value = attested_value(leg.writes);
        run.attestations.emplace(leg.sidechain_id, std::move(attestation));
    }
    // A decision already in flight (a reorg replayed the start under it)
    // must land or revert before another may be packaged.
    if (run.attestations.size() == run.plan.legs.size() && run.decision_tx.is_zero())
        package_decision(world, chain, run);
}

void CrosschainCoordinator::package_decision(World& world, SimChain& chain, XtxRun& run) {
    // Commit only rides while it can still land before the timeout.
    if (run.timeout_block > 0 && chain.chain.head_number() > run.timeout_block) return;
    const KeysetContract& keysets = chain.chain.head_state().contracts.keyset;
    bool all_valid = true;
    std::vector<std::pair<Hash256, uint64_t>> versions;
    for (const LegPlan& leg : run.plan.legs) {
        Attestation& attestation = run.attestations.at(leg.sidechain_id);
        attestation.valid =
            attestation.keyset_version == keysets.active_version(leg.sidechain_id) &&
            attestation.keyset_version > 0;
        all_valid = all_valid && attestation.valid;
        versions.emplace_back(leg.sidechain_id, attestation.keyset_version);
    }
    const ContractCall call = all_valid ? make_xtx_commit(run.plan.tx_id, versions)
                                        : make_xtx_ignore(run.plan.tx_id);
    Transaction tx;
    tx.sender = account_;
    tx.nonce = world.next_nonce(chain, tx.sender);
    tx.gas_limit = worst_case_call_gas(call, chain.schedule);
    tx.gas_price = world.current_bid(chain);
    tx.payload = call;
    run.decision_is_commit = all_valid;
    run.decision_tx = tx.hash();
    run.decision_submitted_at = world.now();
    tracker_.track(tx);
    world.submit_tx(chain, tx);
    run.phase = XtxPhase::DecisionPending;
}

void CrosschainCoordinator::resolve(World& world, XtxRun& run, XtxState outcome) {
    (void)world;
    for (const LegPlan& leg : run.plan.legs) {
        SidechainRuntime& runtime = runtime_for(leg.sidechain_id);
        if (outcome == XtxState::Committed) {
            runtime.commit_writes(run.plan.tx_id);
        } else if (runtime.has_provisional(run.plan.tx_id)) {
            runtime.drop_provisional(run.plan.tx_id);
        }
    }
    run.outcome = outcome;
    run.resolved = true;
    run.resolved_at = world.now();
    run.phase = XtxPhase::Done;
}

void CrosschainCoordinator::on_tick(World& world) {
    SimChain& chain = coordination(world);
    for (XtxRun& run : runs_) {
        if (run.resolved) continue;
        switch (run.phase) {
        case XtxPhase::Waiting: {
            if (world.now() < run.plan.submit_at) break;
            // Preconditions may heal (key sets activate mid-run), so a failed
            // check waits and retries; the last failure is reported if the
            // run never starts. The run itself sits in runs_, so only
            // contract-level duplication counts here.
            const std::string error = precondition_error(chain, run.plan);
            if (!error.empty() && error != "DuplicateTxId") {
                run.error = error;
                break;
            }
            if (chain.chain.head_state().contracts.xtx.find(run.plan.tx_id) != nullptr) {
                run.error = "DuplicateTxId";
                break;
            }
            run.error.clear();
            submit_start(world, chain, run);
            break;
        }
        case XtxPhase::LegsRunning: run_legs(world, chain, run); break;
        default: break;
        }
        // Timeout resolves at the first final post-timeout block; the read
        // needs no transaction.
        if (!run.resolved && run.timeout_block > 0 && run.phase != XtxPhase::DecisionIncluded) {
            const uint64_t head = chain.chain.head_number();
            const XtxContract& xtx = chain.chain.head_state().contracts.xtx;
            if (head >= run.timeout_block + 1 + chain.policy.confirmations &&
                xtx.find(run.plan.tx_id) != nullptr &&
                xtx.status(run.plan.tx_id, head) == XtxState::Ignored) {
                resolve(world, run, XtxState::Ignored);
            }
        }
    }
}

void CrosschainCoordinator::on_block(World& world, SimChain& chain, const BlockRecord& block) {
    if (chain.name != coordination_chain_) return;
    for (size_t i = 0; i < block.txs.size(); ++i) {
        const Hash256 tx_hash = block.txs[i].hash();
        const Receipt& receipt = block.receipts[i];
        for (XtxRun& run : runs_) {
            if (run.resolved) continue;
            if (tx_hash == run.start_tx) {
                tracker_.untrack(tx_hash);
                if (receipt.status == TxStatus::Success) {
                    run.start_block = block.header.hash;
                    run.start_included_at = block.header.timestamp;
                    const CrosschainTxRecord* record =
                        chain.chain.head_state().contracts.xtx.find(run.plan.tx_id);
                    if (record == nullptr)
                        fail(Errc::InternalError, "started tx missing from contract");
                    run.timeout_block = record->timeout_block;
                    run.phase = XtxPhase::StartIncluded;
                    if (!wait_start_final_) {
                        run.phase = XtxPhase::LegsRunning;
                        run.legs_dispatched_at = world.now();
                    }
                } else {
                    run.error = std::string(contract_error_name(receipt.revert_reason));
                    run.resolved = true;
                    run.resolved_at = world.now();
                    run.phase = XtxPhase::Done;
                }
            } else if (tx_hash == run.decision_tx && run.decision_block.is_zero()) {
                // Phase may lag at LegsRunning when a reorg replayed the
                // start with this decision already pooled behind it.
                tracker_.untrack(tx_hash);
                if (receipt.status == TxStatus::Success) {
                    run.decision_block = block.header.hash;
                    run.phase = XtxPhase::DecisionIncluded;
                } else {
                    // StaleAttestation or TimeoutExpired: repackage, which
                    // re-verifies versions and falls back to ignore.
                    run.decision_tx = Hash256{};
                    run.phase = XtxPhase::LegsRunning;
                }
            }
        }
    }

    for (XtxRun& run : runs_) {
        if (run.resolved) continue;
        if (run.phase == XtxPhase::StartIncluded && wait_start_final_) {
            if (chain.chain.is_canonical(run.start_block) &&
                chain.chain.confirmations(run.start_block) >= chain.policy.confirmations) {
                run.start_final_at = block.header.timestamp;
                run.phase = XtxPhase::LegsRunning;
                run.legs_dispatched_at = world.now();
            }
        } else if (run.phase == XtxPhase::DecisionIncluded) {
            if (chain.chain.is_canonical(run.decision_block) &&
                chain.chain.confirmations(run.decision_block) >= chain.policy.confirmations) {
                const XtxState expected =
                    run.decision_is_commit ? XtxState::Committed : XtxState::Ignored;
                const XtxState actual = chain.chain.head_state().contracts.xtx.status(
                    run.plan.tx_id, chain.chain.head_number());
                if (actual != expected)
                    fail(Errc::InternalError, "contract disagrees with a final decision");
                resolve(world, run, expected);
            }
        }
    }
}

void CrosschainCoordinator::on_reorg(World& world, SimChain& chain, const ReorgReport& report) {
    if (chain.name != coordination_chain_) return;
    const auto resubmitted = tracker_.resubmit_dropped(world, chain, report);
    for (const auto& [old_hash, fresh] : resubmitted) {
        for (XtxRun& run : runs_) {
            if (run.resolved) continue;
            if (old_hash == run.start_tx) {
                run.start_tx = fresh.hash();
                run.start_block = Hash256{};
                run.timeout_block = 0;
                // Collected attestations survive; the phase replays from
                // inclusion once the fresh start lands.
                run.phase = XtxPhase::StartPending;
            } else if (old_hash == run.decision_tx) {
                run.decision_tx = fresh.hash();
                run.decision_block = Hash256{};
                run.phase = XtxPhase::DecisionPending;
            }
        }
    }
    // Included-but-unfinal run transactions were untracked at inclusion, so
    // the tracker cannot see them fall out. Their nonces are free again in
    // the adopted branch, so the identical bytes go back into the pool and
    // the phase rolls back to the matching pending state.
    for (const Transaction& dropped : report.dropped_txs) {
        const Hash256 tx_hash = dropped.hash();
        for (XtxRun& run : runs_) {
            if (run.resolved) continue;
            if (tx_hash == run.decision_tx && !run.decision_block.is_zero()) {
                world.submit_tx(chain, dropped);
                run.decision_block = Hash256{};
                if (run.phase == XtxPhase::DecisionIncluded)
                    run.phase = XtxPhase::DecisionPending;
            } else if (tx_hash == run.start_tx && !run.start_block.is_zero()) {
                world.submit_tx(chain, dropped);
                run.start_block = Hash256{};
                run.timeout_block = 0;
                run.phase = XtxPhase::StartPending;
            }
        }
    }
    // Transactions that rode into the adopted branch keep their standing.
    for (const Hash256& adopted : report.adopted) {
        const BlockRecord& record = chain.chain.record(adopted);
        for (size_t i = 0; i < record.txs.size(); ++i) {
            if (record.receipts[i].status != TxStatus::Success) continue;
            const Hash256 tx_hash = record.txs[i].hash();
            for (XtxRun& run : runs_) {
                if (run.resolved) continue;
                if (tx_hash == run.start_tx) {
                    run.start_block = record.header.hash;
                    run.start_included_at = record.header.timestamp;
                } else if (tx_hash == run.decision_tx) {
                    run.decision_block = record.header.hash;
                    if (run.phase == XtxPhase::DecisionPending)
                        run.phase = XtxPhase::DecisionIncluded;
                }
            }
        }
    }
}

XtxState run_crosschain(World& world, CrosschainCoordinator& coordinator, XtxPlan plan,
                        int64_t horizon) {
    const Hash256 tx_id = plan.tx_id;
    coordinator.add_plan_strict(world, plan);
    while (world.now() < horizon) {
        const XtxRun* run = coordinator.find_run(tx_id);
        if (run != nullptr && run->resolved) break;
        world.run_for(1);
    }
    const XtxRun* run = coordinator.find_run(tx_id);
    if (run == nullptr || !run->resolved)
        fail(Errc::InternalError, "crosschain transaction unresolved at horizon");
    if (!run->error.empty()) fail(Errc::ValidationError, run->error);
    world.run_for(2); // let committed writes seal
    return run->outcome;
}

double effective_start_delay(const FinalityPolicy& policy, double block_time,
                             double inclusion_wait) {
    return inclusion_wait + static_cast<double>(policy.confirmations) * block_time;
}

} // namespace chaincoord
