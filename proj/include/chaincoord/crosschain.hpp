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

#include <map>
#include <string>
#include <vector>

#include "chaincoord/clients.hpp"

namespace chaincoord {

enum class LegFault : uint8_t {
    None,
    Silent,     // never attests; the transaction can only time out
    StaleKeyset // attests under the previous key-set version
};

std::string_view leg_fault_name(LegFault fault);

struct LegPlan {
    Hash256 sidechain_id{};
    std::vector<KvWrite> writes;
    int64_t attest_delay = 1; // seconds after legs dispatch
    LegFault fault = LegFault::None;
};

struct XtxPlan {
    Hash256 tx_id{};
    std::string label;
    std::vector<LegPlan> legs;
    uint64_t timeout_blocks = 20;
    int64_t submit_at = 0;
};

// Verification outcome for one leg's proof-of-update. Valid iff the version
// it was formed under is still the Active one on the coordination chain.
struct Attestation {
    Hash256 sidechain_id{};
    uint64_t keyset_version = 0;
    Bytes value;
    bool valid = false;
};

enum class XtxPhase : uint8_t {
    Waiting,
    StartPending,
    StartIncluded,
    LegsRunning,
    DecisionPending,
    DecisionIncluded,
    Done
};

struct XtxRun {
    XtxPlan plan;
    XtxPhase phase = XtxPhase::Waiting;
    int64_t submit_time = -1;
    Hash256 start_tx{};
    Hash256 start_block{};
    int64_t start_included_at = -1;
    int64_t start_final_at = -1;
    int64_t legs_dispatched_at = -1;
    uint64_t timeout_block = 0;
    std::map<Hash256, Attestation> attestations;
    bool decision_is_commit = false;
    Hash256 decision_tx{};
    Hash256 decision_block{};
    int64_t decision_submitted_at = -1;
    XtxState outcome = XtxState::Ignored;
    bool resolved = false;
    int64_t resolved_at = -1;
    std::string error; // precondition failure recorded instead of a run
};

// Drives atomic crosschain transactions against the coordination contract.
// Legs apply provisional overlays only; sealed sidechain writes happen solely
// after the decision block is final, so per-leg outcomes can never split.
class CrosschainCoordinator : public Component {
  public:
    CrosschainCoordinator(std::string coordination_chain, AccountId account,
                          bool wait_start_final);

    void register_runtime(SidechainRuntime* runtime);
    // Scenario intake: precondition failures become error rows, not throws.
    void add_plan(XtxPlan plan);
    // Strict intake: throws NoActiveKeyset / DuplicateTxId / ValidationError.
    void add_plan_strict(World& world, XtxPlan plan);

    const std::vector<XtxRun>& runs() const { return runs_; }
    bool all_resolved() const;
    const XtxRun* find_run(const Hash256& tx_id) const;
    bool wait_start_final() const { return wait_start_final_; }

    void on_tick(World& world) override;
    void on_block(World& world, SimChain& chain, const BlockRecord& block) override;
    void on_reorg(World& world, SimChain& chain, const ReorgReport& report) override;

  private:
    SimChain& coordination(World& world);
    SidechainRuntime& runtime_for(const Hash256& sidechain_id);
    void submit_start(World& world, SimChain& chain, XtxRun& run);
    void run_legs(World& world, SimChain& chain, XtxRun& run);
    void package_decision(World& world, SimChain& chain, XtxRun& run);
    void resolve(World& world, XtxRun& run, XtxState outcome);
    std::string precondition_error(SimChain& chain, const XtxPlan& plan) const;

    std::string coordination_chain_;
    AccountId account_;
    bool wait_start_final_;
    std::map<Hash256, SidechainRuntime*> runtimes_;
    std::vector<XtxRun> runs_;
    TxTracker tracker_;
};

// Runs one crosschain transaction to resolution (plus two ticks so committed
// writes seal). Throws on precondition failure or an unresolved horizon.
XtxState run_crosschain(World& world, CrosschainCoordinator& coordinator, XtxPlan plan,
                        int64_t horizon);

// Seconds from start-transaction submission to start finality when inclusion
// takes `inclusion_wait` seconds: inclusion_wait + confirmations * block_time.
double effective_start_delay(const FinalityPolicy& policy, double block_time,
                             double inclusion_wait = 0.0);

} // namespace chaincoord
