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
//
// End-to-end gate: one numbered check per release criterion, each printing a
// single PASS or FAIL line with its wall time. Exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaincoord/chain.hpp"
#include "chaincoord/clients.hpp"
#include "chaincoord/contracts.hpp"
#include "chaincoord/crosschain.hpp"
#include "chaincoord/errors.hpp"
#include "chaincoord/finality.hpp"
#include "chaincoord/gas.hpp"
#include "chaincoord/rng.hpp"
#include "chaincoord/scenario.hpp"
#include "chaincoord/sidechain.hpp"
#include "chaincoord/simulation.hpp"
#include "chaincoord/strength.hpp"
#include "chaincoord/world.hpp"
#include "chaincoord/worldstate.hpp"
#include "harness.hpp"

namespace {

using namespace chaincoord;
using namespace chaincoord::testing;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

template <typename T> std::string str(const T& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

std::string scenario_path(const char* name) {
    return std::string(CHAINCOORD_SCENARIO_DIR) + "/" + name;
}

// 1. catchup_probability(0.1, 6) equals 0.00024 within 5e-6, in under 1 ms.
std::string check_point_probability() {
    (void)catchup_probability(0.1, 6); // warm caches and lazy init
    double best_ms = 1e9;
    double p = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
        const auto start = Clock::now();
        p = catchup_probability(0.1, 6);
        best_ms = std::min(best_ms, ms_since(start));
    }
    expect(std::fabs(p - 0.00024) <= 5e-6,
           "value " + str(p) + " is not within 5e-6 of 0.00024");
    expect(best_ms < 1.0, "single evaluation took " + str(best_ms) + " ms");
    return "p = " + str(p) + ", " + str(best_ms) + " ms per call";
}

// 2. Monte Carlo reversion matches the closed form within 3 standard errors
//    for q in {0.1, 0.2, 0.3} x z in {1..6}, 1e5 trials each, under 30 s.
std::string check_monte_carlo_grid() {
    const auto start = Clock::now();
    const double qs[] = {0.1, 0.2, 0.3};
    constexpr uint64_t kTrials = 100'000;
    double worst_pull = 0.0;
    int grid_points = 0;
    for (int qi = 0; qi < 3; ++qi) {
        for (uint32_t z = 1; z <= 6; ++z) {
            const double q = qs[qi];
            const double analytic = catchup_probability(q, z);
            const uint64_t seed = 101 + 17 * uint64_t(qi) + z;
            const MonteCarloResult mc = monte_carlo_reversion(q, z, kTrials, seed);
            const double se =
                std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(kTrials));
            const double pull = std::fabs(mc.probability - analytic) / se;
            worst_pull = std::max(worst_pull, pull);
            expect(pull <= 3.0, "q=" + str(q) + " z=" + str(z) + ": empirical " +
                                    str(mc.probability) + " vs analytic " + str(analytic) +
                                    " differs by " + str(pull) + " standard errors");
            ++grid_points;
        }
    }
    const double total_ms = ms_since(start);
    expect(total_ms < 30'000.0, "grid took " + str(total_ms / 1000.0) + " s");
    return str(grid_points) + " grid points, worst deviation " + str(worst_pull) +
           " standard errors";
}

// 3. Throughput at the default gas schedule: 8.8 pin-tx/s, 27 minimal-tx/s,
//    4.3 maximal-tx/min, each at the precision those figures are quoted to.
std::string check_throughput() {
    const GasSchedule schedule;
    const double pin_rate = block_throughput(schedule.pin_tx_gas, schedule);
    const double minimal_rate = block_throughput(schedule.intrinsic_tx_gas, schedule);
    const double maximal_per_min = block_throughput(schedule.block_gas_limit, schedule) * 60.0;
    expect(std::round(pin_rate * 10.0) == 88.0,
           "pin throughput " + str(pin_rate) + " does not round to 8.8/s");
    expect(std::round(minimal_rate) == 27.0,
           "minimal-tx throughput " + str(minimal_rate) + " does not round to 27/s");
    expect(std::round(maximal_per_min * 10.0) == 43.0,
           "maximal-tx throughput " + str(maximal_per_min) + " does not round to 4.3/min");
    return str(pin_rate) + " pin/s, " + str(minimal_rate) + " min-tx/s, " +
           str(maximal_per_min) + " max-tx/min";
}

// 4. Twelve 14 s confirmations make 168 s, and a quiet default run reports a
//    first-use readiness of 168 s within one block time.
std::string check_readiness() {
    expect(finality_time(kDefaultPolicy) == 168.0,
           "12 x 14 s evaluated to " + str(finality_time(kDefaultPolicy)));
    Simulation simulation(load_scenario(scenario_path("quiet.cfg")));
    simulation.run();
    const SetupDriver* setup = simulation.root_setup("alpha");
    expect(setup != nullptr, "quiet run has no setup driver for 'alpha'");
    expect(setup->ready(), "key set never became usable in the quiet run");
    const double readiness = first_transaction_readiness(*setup);
    expect(std::fabs(readiness - 168.0) <= 14.0,
           "readiness " + str(readiness) + " s is more than one block from 168 s");
    return "readiness " + str(readiness) + " s";
}

// 5. Hourly pinning costs $508/year within a dollar at the reference prices,
//    and N hierarchical sidechains share one root pin stream: the root-chain
//    ledger charges them exactly 1/N of the direct group's pins and gas.
std::string check_pin_cost() {
    const double annual = annual_pin_cost(GasSchedule{}, 3600.0, 5.95e9, 150.0);
    expect(std::fabs(annual - 508.0) <= 1.0, "annual cost $" + str(annual));

    ScenarioConfig config = load_scenario(scenario_path("compare.cfg"));
    config.duration = 14'400; // four hourly pin rounds; the ratio is duration-invariant
    Simulation simulation(config);
    simulation.run();
    const RunReport report = simulation.report();

    uint64_t direct_chains = 0, direct_txs = 0, intermediate_txs = 0;
    double direct_gas = 0.0, intermediate_gas = 0.0;
    for (const PinStats& pin : report.pins) {
        if (pin.strategy == "direct") {
            ++direct_chains;
            direct_txs += pin.root_pin_txs;
            direct_gas += pin.root_pin_gas;
        } else if (pin.strategy == "intermediate") {
            intermediate_txs += pin.root_pin_txs;
            intermediate_gas += pin.root_pin_gas;
        } else {
            expect(pin.root_pin_txs == 0,
                   "hierarchical sidechain '" + pin.sidechain + "' pinned the root directly");
            expect(pin.accepted > 0,
                   "hierarchical sidechain '" + pin.sidechain + "' never pinned its target");
        }
    }
    expect(direct_chains == 50, "expected 50 direct sidechains, saw " + str(direct_chains));
    expect(intermediate_txs > 0, "the intermediate posted no root pins");
    expect(direct_txs == direct_chains * intermediate_txs,
           str(direct_txs) + " direct root pins vs " + str(intermediate_txs) +
               " via the intermediate is not an exact 1/50 split");
    expect(direct_gas == static_cast<double>(direct_chains) * intermediate_gas,
           "root gas " + str(direct_gas) + " vs " + str(intermediate_gas) +
               " is not an exact 1/50 split");
    return "$" + str(annual) + "/year; " + str(direct_txs) + " direct vs " +
           str(intermediate_txs) + " shared root pins";
}

// 6. Atomicity sweep. Exhaustive per-leg option enumeration for 2 and 3 legs
//    (prompt/slow attestation, silent leg, stale key set), crossed with a
//    shallow injected reorg at each phase and an optional mid-flight key
//    rotation; then >= 1e4 randomized schedules over 4-6 legs. Zero mixed
//    outcomes, in under 60 s.
struct SweepTally {
    uint64_t runs = 0;
    uint64_t committed = 0;
    uint64_t ignored = 0;
    uint64_t mixed = 0;
    uint64_t reorgs = 0;
    uint64_t rotations = 0;
};

void tally_outcome(SweepTally& tally, XtxHarness& h, const XtxPlan& plan) {
    const XtxRun* run = h.coordinator->find_run(plan.tx_id);
    expect(run != nullptr && run->resolved, "plan '" + plan.label + "' never resolved");
    const size_t applied = applied_legs(h, plan);
    const bool committed = run->outcome == XtxState::Committed;
    const bool mixed = committed ? applied != plan.legs.size() : applied != 0;
    ++tally.runs;
    if (committed) ++tally.committed;
    else ++tally.ignored;
    if (mixed) {
        ++tally.mixed;
        throw std::runtime_error("mixed outcome in '" + plan.label + "': " +
                                 (committed ? "committed" : "ignored") + " with " +
                                 str(applied) + "/" + str(plan.legs.size()) +
                                 " legs applied");
    }
}

void apply_leg_option(LegPlan& leg, int option) {
    switch (option) {
    case 0: leg.attest_delay = 1; break;
    case 1: leg.attest_delay = 7; break;
    case 2: leg.fault = LegFault::Silent; break;
    default: leg.fault = LegFault::StaleKeyset; break;
    }
}

void run_exhaustive_case(SweepTally& tally, uint64_t seed, const std::vector<int>& options,
                         int reorg_phase, bool rotate) {
    const size_t legs = options.size();
    XtxHarness h = make_xtx_harness(seed, legs, 3, 2.0, false);
    std::vector<size_t> indices(legs);
    for (size_t i = 0; i < legs; ++i) indices[i] = i;
    XtxPlan plan = make_plan(h, "e" + str(seed), indices, 12, h.world->now());
    bool any_fault = false;
    for (size_t i = 0; i < legs; ++i) {
        apply_leg_option(plan.legs[i], options[i]);
        any_fault = any_fault || options[i] >= 2;
    }
    h.coordinator->add_plan_strict(*h.world, plan);

    bool reorg_done = reorg_phase == 0;
    bool rotate_done = !rotate;
    const int64_t cap = h.world->now() + 400;
    while (h.world->now() < cap) {
        const XtxRun* run = h.coordinator->find_run(plan.tx_id);
        if (run->resolved) break;
        if (!rotate_done && run->legs_dispatched_at >= 0) {
            rotate_keyset(h, 0);
            ++tally.rotations;
            rotate_done = true;
        }
        if (!reorg_done) {
            const bool due = (reorg_phase == 1 && run->start_included_at >= 0) ||
                             (reorg_phase == 2 && !run->attestations.empty()) ||
                             (reorg_phase == 3 && run->decision_submitted_at >= 0);
            if (due) {
                inject_reorg(*h.world, 2); // depth 2 < the 3-block finality rule
                ++tally.reorgs;
                reorg_done = true;
            }
        }
        h.world->run_for(1);
    }
    h.world->run_for(2);
    tally_outcome(tally, h, plan);

    if (!rotate) {
        // Without rotation the outcome is forced by the fault set.
        const XtxRun* run = h.coordinator->find_run(plan.tx_id);
        const XtxState want = any_fault ? XtxState::Ignored : XtxState::Committed;
        expect(run->outcome == want, "plan '" + plan.label + "' resolved " +
                                         std::string(xtx_state_name(run->outcome)) +
                                         " but the fault set demands " +
                                         std::string(xtx_state_name(want)));
    }
}

std::string check_atomicity() {
    const auto start = Clock::now();
    SweepTally tally;

    // Exhaustive: every per-leg option combination for 2 and 3 legs, crossed
    // with reorg phase (none/start/attest/decision) and optional rotation.
    uint64_t seed = 40'000;
    for (size_t legs = 2; legs <= 3; ++legs) {
        size_t combos = 1;
        for (size_t i = 0; i < legs; ++i) combos *= 4;
        for (size_t combo = 0; combo < combos; ++combo) {
            std::vector<int> options(legs);
            size_t rest = combo;
            for (size_t i = 0; i < legs; ++i) {
                options[i] = static_cast<int>(rest % 4);
                rest /= 4;
            }
            for (int reorg_phase = 0; reorg_phase < 4; ++reorg_phase) {
                for (int rotate = 0; rotate < 2; ++rotate) {
                    run_exhaustive_case(tally, ++seed, options, reorg_phase, rotate == 1);
                }
            }
        }
    }
    const uint64_t exhaustive_runs = tally.runs;
    expect(exhaustive_runs == 640, "expected 640 exhaustive runs, ran " + str(exhaustive_runs));

    // Randomized: waves of three concurrent 4-6 leg plans over a shared
    // six-sidechain world, with random faults, delays, reorgs and rotations.
    constexpr uint64_t kRandomPlans = 10'000;
    Rng rng(2026);
    XtxHarness h;
    uint64_t done = 0, wave = 0, world_seed = 70'000;
    while (done < kRandomPlans) {
        if (wave % 40 == 0) h = make_xtx_harness(++world_seed, 6, 3, 2.0, false);
        ++wave;

        const uint64_t batch = std::min<uint64_t>(3, kRandomPlans - done);
        std::vector<XtxPlan> plans;
        for (uint64_t b = 0; b < batch; ++b) {
            const size_t legs = 4 + static_cast<size_t>(rng.uniform(3));
            std::vector<size_t> pool{0, 1, 2, 3, 4, 5};
            std::vector<size_t> chosen;
            for (size_t i = 0; i < legs; ++i) {
                const size_t pick = static_cast<size_t>(rng.uniform(pool.size()));
                chosen.push_back(pool[pick]);
                pool.erase(pool.begin() + static_cast<long>(pick));
            }
            XtxPlan plan = make_plan(h, "r" + str(done + b), chosen, 12, h.world->now());
            for (LegPlan& leg : plan.legs) {
                const double roll = rng.next_unit();
                if (roll < 0.60) apply_leg_option(leg, 0);
                else if (roll < 0.72) apply_leg_option(leg, 1);
                else if (roll < 0.87) apply_leg_option(leg, 2);
                else apply_leg_option(leg, 3);
            }
            h.coordinator->add_plan_strict(*h.world, plan);
            plans.push_back(std::move(plan));
        }

        const bool do_reorg = rng.next_unit() < 0.25;
        const uint64_t reorg_tick = 3 + rng.uniform(6);
        const uint64_t reorg_depth = 1 + rng.uniform(2);
        const bool do_rotate = wave % 37 == 0;
        const size_t rotate_leg = static_cast<size_t>(rng.uniform(6));

        const int64_t cap = h.world->now() + 400;
        uint64_t ticks = 0;
        while (h.world->now() < cap) {
            bool all_done = true;
            for (const XtxPlan& plan : plans) {
                const XtxRun* run = h.coordinator->find_run(plan.tx_id);
                all_done = all_done && run != nullptr && run->resolved;
            }
            if (all_done) break;
            if (do_reorg && ticks == reorg_tick && inject_reorg(*h.world, reorg_depth))
                ++tally.reorgs;
            if (do_rotate && ticks == 2) {
                rotate_keyset(h, rotate_leg);
                ++tally.rotations;
            }
            h.world->run_for(1);
            ++ticks;
        }
        h.world->run_for(2);
        for (const XtxPlan& plan : plans) tally_outcome(tally, h, plan);
        done += batch;
    }

    const double total_ms = ms_since(start);
    expect(tally.mixed == 0, str(tally.mixed) + " mixed outcomes");
    expect(tally.runs >= 640 + kRandomPlans, "only " + str(tally.runs) + " runs");
    expect(tally.committed > 500 && tally.ignored > 500,
           "sweep is degenerate: " + str(tally.committed) + " committed / " +
               str(tally.ignored) + " ignored");
    expect(total_ms < 60'000.0, "sweep took " + str(total_ms / 1000.0) + " s");
    return str(tally.runs) + " runs (" + str(tally.committed) + " committed, " +
           str(tally.ignored) + " ignored, " + str(tally.reorgs) + " reorgs, " +
           str(tally.rotations) + " rotations), 0 mixed";
}

// 7. Archiving a pinned sidechain and restoring it preserves the head and the
//    state commitment, and every single-bit corruption of the encoded blob is
//    rejected, exhaustively, in under 10 s.
std::string check_archive() {
    const auto start = Clock::now();
    const Hash256 side_id = hash_of_string("acceptance/archived");
    const AccountId validator = account_from_name("acceptance/validator");
    const AccountId poster = account_from_name("acceptance/poster");
    const AccountId miner = account_from_name("acceptance/miner");
    const GasSchedule schedule;
    const FinalityPolicy policy{2, 14.0};

    auto genesis = std::make_shared<WorldState>();
    genesis->meta.chain_id = hash_of_string("acceptance/root");
    genesis->account(poster).balance = Wei(1'000'000'000);
    genesis->contracts.pinning.seed_unmasked(side_id, poster);
    ChainView root = ChainView::genesis(FinalityMode::Probabilistic, genesis, 0, 1.0);

    Sidechain side = make_sidechain(side_id, {validator}, 1, 0, Wei(1'000'000'000));
    for (uint64_t i = 0; i < 3; ++i) {
        Transaction tx;
        tx.sender = validator;
        tx.nonce = i;
        tx.gas_limit = 200'000;
        tx.gas_price = 1;
        KvWrite write;
        write.key = hash_of_string("entry/" + str(i));
        const std::string text = "value-" + str(i);
        write.value = Bytes(text.begin(), text.end());
        tx.payload = make_kv_put({write});
        seal_block(side, {tx}, static_cast<int64_t>(i + 1) * 2, schedule);
    }
    const Hash256 head = side.chain.head();
    const Hash256 commitment = side.chain.head_state().commitment();

    Mempool pool;
    Transaction pin;
    pin.sender = poster;
    pin.nonce = 0;
    pin.gas_limit = schedule.pin_tx_gas;
    pin.gas_price = 1;
    pin.payload = make_pin_add(side_id, side.chain.head_number(), head);
    pool.submit(pin);
    for (int64_t n = 1; n <= 3; ++n) { // pin block plus two confirmations
        const BlockRecord block =
            mint_block(root, miner, pool, schedule.block_gas_limit, n * 14, schedule);
        root.insert_block(block);
        root.fork_choice(block.header.hash);
    }
    expect(root.record(root.canonical_at(1)).receipts.at(0).status == TxStatus::Success,
           "the pin transaction did not land");

    const std::vector<PinStackLevel> stack{
        {side_id, &root, FinalityMode::Probabilistic, policy}};
    const ArchiveBlob blob = archive_sidechain(side, stack);
    expect(side.archived, "archive did not mark the sidechain archived");
    const Bytes encoded = encode_archive(blob);
    expect(encoded.size() <= 4096, "blob is " + str(encoded.size()) + " bytes");

    const Sidechain restored = restore_sidechain(encoded, root);
    expect(restored.chain.head() == head, "restored head differs");
    expect(restored.chain.head_state().commitment() == commitment,
           "restored state commitment differs");
    expect(restored.id == side_id, "restored id differs");

    const size_t bits = encoded.size() * 8;
    size_t rejected = 0;
    Bytes corrupt = encoded;
    for (size_t bit = 0; bit < bits; ++bit) {
        corrupt[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
        try {
            (void)restore_sidechain(corrupt, root);
        } catch (const Error&) {
            ++rejected;
        }
        corrupt[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    }
    const double total_ms = ms_since(start);
    expect(rejected == bits,
           str(bits - rejected) + " of " + str(bits) + " single-bit corruptions slipped through");
    expect(total_ms < 10'000.0, "took " + str(total_ms / 1000.0) + " s");
    return str(bits) + " bit flips over " + str(encoded.size()) + " bytes, all rejected";
}

// 8. The generic-attack strength table, exact values.
std::string check_strength_table() {
    const auto exact = [](const StrengthQuery& query, double want, const char* label) {
        const double got = strength_bits(query);
        expect(got == want, std::string(label) + ": " + str(got) + " != " + str(want));
    };
    exact({DigestSpec{256, 256}, AttackProperty::Preimage, ComputeModel::Classical}, 256.0,
          "256-bit preimage, classical");
    exact({DigestSpec{256, 256}, AttackProperty::Collision, ComputeModel::Classical}, 128.0,
          "256-bit collision, classical");
    exact({DigestSpec{256, 160}, AttackProperty::SecondPreimage, ComputeModel::Classical}, 160.0,
          "truncated-160 second preimage, classical");
    exact({DigestSpec{256, 256}, AttackProperty::Preimage, ComputeModel::QuantumGrover}, 128.0,
          "256-bit preimage, quantum search");
    exact({SignatureScheme::EcdsaSecp256k1, AttackProperty::KeyRecovery, ComputeModel::Classical},
          128.0, "secp256k1 key recovery, classical");
    return "5 table entries exact";
}

// 9. Replayed and out-of-order transactions are rejected across randomized
//    workloads, and the nonce counter refuses to pass 2^63 - 1.
std::string check_replay_protection() {
    expect(kMaxNonce == (uint64_t{1} << 63) - 1, "nonce ceiling moved");
    const GasSchedule schedule;
    const ExecContext ctx{1, 14};
    const AccountId miner = account_from_name("acceptance/miner");

    std::vector<AccountId> senders;
    WorldState state;
    state.meta.chain_id = hash_of_string("acceptance/replay");
    for (int i = 0; i < 6; ++i) {
        senders.push_back(account_from_name("acceptance/sender/" + str(i)));
        state.account(senders.back()).balance = Wei(1'000'000'000) * Wei(1'000'000);
    }
    const AccountId sink = account_from_name("acceptance/sink");

    const auto transfer = [&](const AccountId& from, uint64_t nonce) {
        Transaction tx;
        tx.sender = from;
        tx.nonce = nonce;
        tx.gas_limit = schedule.intrinsic_tx_gas;
        tx.gas_price = 1;
        tx.payload = ValueTransfer{sink, Wei(1)};
        return tx;
    };

    Rng rng(99);
    std::vector<uint64_t> next(senders.size(), 0);
    std::vector<Transaction> history;
    uint64_t accepted = 0, replays = 0, stale = 0, future = 0;
    for (int round = 0; round < 3000; ++round) {
        const size_t who = static_cast<size_t>(rng.uniform(senders.size()));
        const uint64_t action = rng.uniform(4);
        if (action == 0 || history.empty()) {
            const Receipt receipt = apply_transaction(state, transfer(senders[who], next[who]),
                                                      schedule.block_gas_limit, schedule, ctx,
                                                      miner);
            expect(receipt.status == TxStatus::Success, "in-order transaction rejected");
            history.push_back(transfer(senders[who], next[who]));
            ++next[who];
            ++accepted;
        } else if (action == 1) {
            const Transaction& replay = history[rng.uniform(history.size())];
            const Receipt receipt = apply_transaction(state, replay, schedule.block_gas_limit,
                                                      schedule, ctx, miner);
            expect(receipt.status == TxStatus::BadNonce, "replayed transaction accepted");
            ++replays;
        } else if (action == 2 && next[who] > 0) {
            const Receipt receipt = apply_transaction(
                state, transfer(senders[who], rng.uniform(next[who])), schedule.block_gas_limit,
                schedule, ctx, miner);
            expect(receipt.status == TxStatus::BadNonce, "stale-nonce transaction accepted");
            ++stale;
        } else {
            const Receipt receipt = apply_transaction(
                state, transfer(senders[who], next[who] + 1 + rng.uniform(10)),
                schedule.block_gas_limit, schedule, ctx, miner);
            expect(receipt.status == TxStatus::BadNonce, "future-nonce transaction accepted");
            ++future;
        }
    }
    expect(replays > 200 && stale > 200 && future > 200, "workload mix is degenerate");
    for (size_t i = 0; i < senders.size(); ++i) {
        expect(state.account(senders[i]).nonce == next[i], "nonce drifted for a sender");
    }

    // Block-level: replays and shuffles across minted blocks never include a
    // (sender, nonce) pair twice.
    auto genesis = std::make_shared<WorldState>();
    genesis->meta.chain_id = hash_of_string("acceptance/replay/chain");
    for (const AccountId& sender : senders)
        genesis->account(sender).balance = Wei(1'000'000'000) * Wei(1'000'000);
    ChainView chain = ChainView::genesis(FinalityMode::Probabilistic, genesis, 0, 1.0);
    Mempool pool;
    std::set<std::pair<AccountId, uint64_t>> included;
    std::vector<Transaction> landed;
    std::vector<uint64_t> issued(senders.size(), 0);
    uint64_t resubmitted = 0;
    for (int64_t block_number = 1; block_number <= 40; ++block_number) {
        for (int j = 0; j < 12; ++j) {
            const size_t who = static_cast<size_t>(rng.uniform(senders.size()));
            if (rng.uniform(3) != 0 || landed.empty()) {
                pool.submit(transfer(senders[who], issued[who]++));
            } else {
                pool.submit(landed[rng.uniform(landed.size())]); // replay a settled tx
                ++resubmitted;
            }
        }
        const BlockRecord block = mint_block(chain, miner, pool, schedule.block_gas_limit,
                                             block_number * 14, schedule);
        chain.insert_block(block);
        chain.fork_choice(block.header.hash);
        for (size_t i = 0; i < block.txs.size(); ++i) {
            expect(block.receipts[i].status == TxStatus::Success,
                   "minted block carries a failed transaction");
            const auto key = std::make_pair(block.txs[i].sender, block.txs[i].nonce);
            expect(included.insert(key).second, "a (sender, nonce) pair was included twice");
            landed.push_back(block.txs[i]);
        }
    }
    expect(resubmitted > 50, "too few replay attempts at the block level");
    for (size_t i = 0; i < senders.size(); ++i) {
        const Account* account = chain.head_state().find_account(senders[i]);
        expect(account != nullptr && account->nonce == issued[i],
               "chain nonce drifted for a sender");
    }

    // Boundary fixture: the last representable nonce refuses to advance.
    WorldState edge;
    const AccountId maxed = account_from_name("acceptance/maxed");
    edge.account(maxed).balance = Wei(1'000'000'000);
    edge.account(maxed).nonce = kMaxNonce;
    const Receipt receipt = apply_transaction(edge, transfer(maxed, kMaxNonce),
                                              schedule.block_gas_limit, schedule, ctx, miner);
    expect(receipt.status == TxStatus::NonceOverflow, "nonce ceiling did not trip");
    expect(edge.account(maxed).nonce == kMaxNonce, "overflow mutated the account nonce");

    return str(accepted) + " accepted; " + str(replays + stale + future) +
           " replay/out-of-order all rejected; overflow trips at 2^63-1";
}

// 10. Identical (scenario, seed) pairs reproduce byte-identical JSON reports.
std::string check_determinism() {
    size_t bytes_checked = 0;
    const auto replay = [&](const ScenarioConfig& config, const char* label) {
        const std::string first = to_json(run_scenario(config));
        const std::string second = to_json(run_scenario(config));
        expect(first == second, std::string(label) + ": reports differ between runs");
        bytes_checked += first.size();
    };
    replay(load_scenario(scenario_path("quiet.cfg")), "quiet");
    replay(load_scenario(scenario_path("crosschain.cfg")), "crosschain");

    ScenarioConfig noisy = parse_scenario(R"(
[coordination]
block_time = 2
confirmations = 3
stochastic_blocks = true

[run]
seed = 77
duration = 400

[sidechain]
name = jitter
pin_interval = 90
heartbeat = 45

[adversary]
kind = spammer
rate = 25
tx_gas = 21000
start = 30
stop = 300
)");
    validate_scenario(noisy);
    replay(noisy, "stochastic");
    return "3 scenarios replayed, " + str(bytes_checked) + " report bytes compared";
}

struct Criterion {
    int id;
    const char* label;
    std::function<std::string()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "attacker catch-up probability point value", check_point_probability},
        {2, "Monte Carlo reversion grid vs closed form", check_monte_carlo_grid},
        {3, "block gas throughput rates", check_throughput},
        {4, "confirmation wait and first-use readiness", check_readiness},
        {5, "annual pin cost and hierarchical fan-in", check_pin_cost},
        {6, "crosschain atomicity sweep", check_atomicity},
        {7, "archive round trip and bit-flip rejection", check_archive},
        {8, "security strength table", check_strength_table},
        {9, "replay and nonce protection", check_replay_protection},
        {10, "seeded runs reproduce identical reports", check_determinism},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = Clock::now();
        try {
            const std::string detail = criterion.run();
            std::printf("[%2d] PASS %9.1f ms  %s (%s)\n", criterion.id, ms_since(start),
                        criterion.label, detail.c_str());
        } catch (const std::exception& e) {
            ++failed;
            std::printf("[%2d] FAIL %9.1f ms  %s: %s\n", criterion.id, ms_since(start),
                        criterion.label, e.what());
        }
        std::fflush(stdout);
    }
    if (failed == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("acceptance: %d of %zu criteria FAILED\n", failed, criteria.size());
    }
    return failed == 0 ? 0 : 1;
}
