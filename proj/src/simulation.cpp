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

#include "chaincoord/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "chaincoord/errors.hpp"
#include "chaincoord/finality.hpp"

namespace chaincoord {

namespace {

constexpr double kSecondsPerDay = 86'400.0;
constexpr double kSecondsPerYear = 365.0 * 86'400.0;

// Ample balance so fee volatility never starves a scripted actor.
Wei actor_funding() { return Wei(1'000'000'000) * Wei(1'000'000'000) * Wei(1'000'000'000); }

std::string short_hex(const AccountId& account) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (size_t i = 0; i < 4; ++i) {
        out += digits[account.v[i] >> 4];
        out += digits[account.v[i] & 0xf];
    }
    return out;
}

} // namespace

Simulation::Simulation(ScenarioConfig config, std::optional<uint64_t> seed_override)
    : config_(std::move(config)), seed_(seed_override.value_or(config_.seed)), world_(seed_) {
    validate_scenario(config_);
    build();
}

void Simulation::build() {
    const CoordinationConfig& coord = config_.coordination;
    const double initial_price_wei = config_.prices.gas_price_gwei * 1e9;
    const FinalityPolicy policy{static_cast<uint32_t>(coord.confirmations),
                                coord.schedule.block_time};

    operator_ = account_from_name("setup/operator");
    roles_[operator_] = "setup/operator";
    xtx_account_ = account_from_name("xtx/coordinator");
    roles_[xtx_account_] = "xtx/coordinator";

    for (const SidechainConfig& side : config_.sidechains) {
        SidechainActors actors;
        actors.config = side;
        actors.id = hash_of_string(side.name);
        for (size_t i = 0; i < side.participants; ++i) {
            const AccountId member = account_from_name(side.name + "/member/" + std::to_string(i));
            actors.members.push_back(member);
            roles_[member] = side.name + "/member/" + std::to_string(i);
        }
        if (side.lifetime > 0)
            actors.stop_at = side.lifetime / side.pin_interval * side.pin_interval;
        sidechains_.push_back(std::move(actors));
    }
    for (const IntermediateConfig& mid : config_.intermediates) {
        IntermediateActors actors;
        actors.config = mid;
        actors.chain_id = hash_of_string(mid.name);
        for (size_t i = 0; i < mid.validators; ++i) {
            const AccountId member = account_from_name(mid.name + "/member/" + std::to_string(i));
            actors.members.push_back(member);
            roles_[member] = mid.name + "/member/" + std::to_string(i);
        }
        intermediates_.push_back(std::move(actors));
    }

    bool any_spammer = false;
    for (const AdversaryConfig& adversary : config_.adversaries) {
        if (adversary.kind == AdversaryKind::Spammer) any_spammer = true;
    }

    std::vector<std::pair<AccountId, Wei>> root_balances;
    root_balances.emplace_back(operator_, actor_funding());
    root_balances.emplace_back(xtx_account_, actor_funding());
    for (const SidechainActors& actors : sidechains_) {
        for (const AccountId& member : actors.members)
            root_balances.emplace_back(member, actor_funding());
    }
    for (const IntermediateActors& actors : intermediates_) {
        for (const AccountId& member : actors.members)
            root_balances.emplace_back(member, actor_funding());
    }
    if (any_spammer) {
        for (size_t i = 0; i < 8; ++i) {
            const AccountId account = account_from_name("spam/account/" + std::to_string(i));
            root_balances.emplace_back(account, actor_funding());
            roles_[account] = "spam/account/" + std::to_string(i);
        }
    }

    SimChain& root = world_.add_chain(coord.name, FinalityMode::Probabilistic, coord.schedule,
                                      policy, coord.schedule.block_time, coord.stochastic_blocks,
                                      initial_price_wei, root_balances);
    root.price.sensitivity = coord.price_sensitivity;
    root.price.target_utilization = coord.price_target;

    for (IntermediateActors& actors : intermediates_) {
        std::vector<std::pair<AccountId, Wei>> balances;
        balances.emplace_back(operator_, actor_funding());
        for (const SidechainActors& side : sidechains_) {
            if (side.config.strategy == PinStrategy::Hierarchical &&
                side.config.pin_target == actors.config.name) {
                for (const AccountId& member : side.members)
                    balances.emplace_back(member, actor_funding());
            }
        }
        world_.add_chain(actors.config.name, FinalityMode::Instant, coord.schedule, policy,
                         actors.config.block_time, false, 1.0, balances);
    }

    // Setup drivers run first each tick so membership lands ahead of pins.
    for (SidechainActors& actors : sidechains_) {
        actors.root_setup = &world_.add_component<SetupDriver>(
            actors.id, actors.config.name, coord.name, operator_, actors.members, true, 0);
        if (actors.config.strategy == PinStrategy::Hierarchical) {
            actors.target_setup = &world_.add_component<SetupDriver>(
                actors.id, actors.config.name, actors.config.pin_target, operator_,
                actors.members, false, 0);
        }
    }
    for (IntermediateActors& actors : intermediates_) {
        actors.setup = &world_.add_component<SetupDriver>(
            actors.chain_id, actors.config.name, coord.name, operator_, actors.members, false, 0);
    }

    for (SidechainActors& actors : sidechains_) {
        Sidechain side = make_sidechain(actors.id, actors.members, 1, 0, actor_funding());
        actors.runtime = &world_.add_component<SidechainRuntime>(
            std::move(side), GasSchedule{}, coord.name, actors.config.heartbeat, actors.stop_at);
    }

    for (SidechainActors& actors : sidechains_) {
        const bool direct = actors.config.strategy == PinStrategy::Direct;
        const std::string target = direct ? coord.name : actors.config.pin_target;
        std::vector<std::string> stack =
            direct ? std::vector<std::string>{coord.name}
                   : std::vector<std::string>{actors.config.pin_target, coord.name};
        const int64_t horizon = actors.stop_at >= 0 ? actors.stop_at + 1 : config_.duration;
        SidechainRuntime* runtime = actors.runtime;
        actors.pins = &world_.add_component<PinClient>(
            actors.id, [runtime] { return runtime->head_info(); }, target, std::move(stack),
            actors.members, actors.config.pin_interval, horizon);
    }
    for (IntermediateActors& actors : intermediates_) {
        World* world = &world_;
        const std::string name = actors.config.name;
        auto head_fn = [world, name]() -> std::pair<uint64_t, Hash256> {
            SimChain* chain = world->find_chain(name);
            if (chain == nullptr) fail(Errc::NotFound, "intermediate chain missing");
            return {chain->chain.head_number(), chain->chain.head()};
        };
        actors.pins = &world_.add_component<PinClient>(
            actors.chain_id, head_fn, coord.name, std::vector<std::string>{coord.name},
            actors.members, actors.config.pin_interval, config_.duration);
    }

    coordinator_ = &world_.add_component<CrosschainCoordinator>(coord.name, xtx_account_,
                                                                config_.wait_start_finality);
    for (SidechainActors& actors : sidechains_) coordinator_->register_runtime(actors.runtime);
    for (const CrosschainSpec& spec : config_.crosschain) {
        XtxPlan plan;
        plan.label = spec.label;
        plan.tx_id = hash_of_string("xtx/" + spec.label);
        plan.timeout_blocks = spec.timeout_blocks;
        plan.submit_at = spec.submit_at;
        for (const std::string& leg_name : spec.legs) {
            LegPlan leg;
            leg.sidechain_id = hash_of_string(leg_name);
            const std::string text = spec.label + "@" + leg_name;
            leg.writes.push_back(KvWrite{hash_of_string(spec.label + "/" + leg_name),
                                         Bytes(text.begin(), text.end())});
            auto fault = spec.faults.find(leg_name);
            if (fault != spec.faults.end()) leg.fault = fault->second;
            plan.legs.push_back(std::move(leg));
        }
        coordinator_->add_plan(std::move(plan));
    }

    for (const AdversaryConfig& adversary : config_.adversaries) {
        AdversaryActors actors;
        actors.config = adversary;
        switch (adversary.kind) {
        case AdversaryKind::PrivateMiner:
            actors.miner = &world_.add_component<PrivateMinerAdversary>(
                coord.name, adversary.q, adversary.give_up, world_.next_stream());
            break;
        case AdversaryKind::Spammer:
            actors.spammer = &world_.add_component<SpamClient>(
                coord.name, adversary.rate, adversary.tx_gas, adversary.start,
                adversary.stop < 0 ? config_.duration : adversary.stop);
            break;
        case AdversaryKind::ReorgInjector:
            actors.injector =
                &world_.add_component<ReorgInjector>(coord.name, adversary.reorgs);
            break;
        }
        adversaries_.push_back(actors);
    }
}

void Simulation::run() { world_.run_until(config_.duration); }

SidechainRuntime* Simulation::runtime(const std::string& sidechain_name) {
    for (SidechainActors& actors : sidechains_) {
        if (actors.config.name == sidechain_name) return actors.runtime;
    }
    return nullptr;
}

PinClient* Simulation::pin_client(const std::string& sidechain_name) {
    for (SidechainActors& actors : sidechains_) {
        if (actors.config.name == sidechain_name) return actors.pins;
    }
    return nullptr;
}

SetupDriver* Simulation::root_setup(const std::string& sidechain_name) {
    for (SidechainActors& actors : sidechains_) {
        if (actors.config.name == sidechain_name) return actors.root_setup;
    }
    return nullptr;
}

std::vector<PinStackLevel> Simulation::stack_for(const SidechainActors& actors) {
    std::vector<std::string> names;
    if (actors.config.strategy == PinStrategy::Direct) {
        names = {config_.coordination.name};
    } else {
        names = {actors.config.pin_target, config_.coordination.name};
    }
    std::vector<PinStackLevel> stack;
    for (const std::string& name : names) {
        SimChain* chain = world_.find_chain(name);
        if (chain == nullptr) fail(Errc::NotFound, "stack chain missing: " + name);
        stack.push_back(PinStackLevel{chain->id, &chain->chain, chain->mode, chain->policy});
    }
    return stack;
}

void Simulation::try_archive(SidechainActors& actors) {
    if (actors.stop_at < 0 || actors.runtime->side().archived) return;
    try {
        archive_sidechain(actors.runtime->side(), stack_for(actors));
    } catch (const Error&) {
        // Not archivable yet (final pin still unconfirmed); the flag stays off.
    }
}

RunReport Simulation::report() {
    RunReport out;
    out.seed = seed_;
    out.duration = config_.duration;
    out.gas_price_gwei = config_.prices.gas_price_gwei;
    out.eth_usd = config_.prices.eth_usd;

    for (size_t i = 0; i < world_.chain_count(); ++i) {
        SimChain& chain = world_.chain_at(i);
        ChainStats stats;
        stats.name = chain.name;
        stats.finality =
            chain.mode == FinalityMode::Probabilistic ? "probabilistic" : "instant";
        stats.blocks = chain.chain.head_number();
        double utilization_sum = 0.0;
        for (uint64_t number = 1; number <= chain.chain.head_number(); ++number) {
            const BlockRecord& record = chain.chain.record(chain.chain.canonical_at(number));
            stats.transactions += record.txs.size();
            utilization_sum += static_cast<double>(reserved_gas(record)) /
                               static_cast<double>(chain.schedule.block_gas_limit);
        }
        if (stats.blocks > 0) stats.mean_utilization = utilization_sum / stats.blocks;
        stats.final_gas_price_wei = chain.price.gas_price;
        stats.reorg_events = chain.events.reorg_events;
        stats.reverted_blocks = chain.events.reverted_blocks;
        stats.finalized_reverted = chain.events.finalized_reverted;
        out.chains.push_back(std::move(stats));
    }

    // Sidechain ledgers live inside their runtimes, not the world.
    for (const SidechainActors& actors : sidechains_) {
        const ChainView& side = actors.runtime->side().chain;
        ChainStats stats;
        stats.name = actors.config.name;
        stats.finality = "instant";
        stats.blocks = side.head_number();
        double utilization_sum = 0.0;
        const double gas_limit =
            static_cast<double>(actors.runtime->schedule().block_gas_limit);
        for (uint64_t number = 1; number <= side.head_number(); ++number) {
            const BlockRecord& record = side.record(side.canonical_at(number));
            stats.transactions += record.txs.size();
            utilization_sum += static_cast<double>(reserved_gas(record)) / gas_limit;
        }
        if (stats.blocks > 0) stats.mean_utilization = utilization_sum / stats.blocks;
        stats.final_gas_price_wei = side.record(side.head()).gas_price_after;
        out.chains.push_back(std::move(stats));
    }

    // Accepted pin transactions on the root chain, keyed by pinned source.
    std::map<Hash256, std::pair<uint64_t, double>> root_pins;
    std::map<std::string, std::pair<double, Wei>> spend;
    {
        SimChain& root = world_.root();
        for (uint64_t number = 1; number <= root.chain.head_number(); ++number) {
            const BlockRecord& record = root.chain.record(root.chain.canonical_at(number));
            for (size_t i = 0; i < record.txs.size(); ++i) {
                const Transaction& tx = record.txs[i];
                const Receipt& receipt = record.receipts[i];
                auto role = roles_.find(tx.sender);
                const std::string label =
                    role != roles_.end() ? role->second : "other/" + short_hex(tx.sender);
                auto& row = spend[label];
                row.first += static_cast<double>(receipt.gas_used);
                row.second += Wei(receipt.gas_used) * Wei(tx.gas_price);
                if (receipt.status != TxStatus::Success) continue;
                const ContractCall* call = std::get_if<ContractCall>(&tx.payload);
                if (call == nullptr || call->op != "pin_add" || call->contract != pinning_address())
                    continue;
                ByteReader reader{BytesView(call->args)};
                const Hash256 source = reader.hash();
                auto& totals = root_pins[source];
                totals.first += 1;
                totals.second += static_cast<double>(receipt.gas_used);
            }
        }
    }

    for (SidechainActors& actors : sidechains_) {
        try_archive(actors);
        const PinClient& client = *actors.pins;
        PinStats stats;
        stats.sidechain = actors.config.name;
        stats.strategy = std::string(pin_strategy_name(actors.config.strategy));
        stats.pin_target = actors.config.strategy == PinStrategy::Direct
                               ? config_.coordination.name
                               : actors.config.pin_target;
        stats.scheduled = client.samples().size();
        stats.submitted = client.submitted();
        stats.accepted = client.landed();
        stats.finalized = client.finalized();
        stats.resubmissions = client.resubmissions();
        double inclusion_sum = 0.0, finality_sum = 0.0;
        uint64_t inclusion_count = 0, finality_count = 0;
        for (const PinSample& sample : client.samples()) {
            if (sample.rejected) ++stats.rejected;
            if (sample.included_at >= 0) {
                inclusion_sum += static_cast<double>(sample.included_at - sample.scheduled_at);
                ++inclusion_count;
            }
            if (sample.final_at >= 0) {
                const double delay = static_cast<double>(sample.final_at - sample.scheduled_at);
                finality_sum += delay;
                stats.max_finality_delay_s = std::max(stats.max_finality_delay_s, delay);
                ++finality_count;
            }
        }
        if (inclusion_count > 0) stats.mean_inclusion_delay_s = inclusion_sum / inclusion_count;
        if (finality_count > 0) stats.mean_finality_delay_s = finality_sum / finality_count;
        auto totals = root_pins.find(actors.id);
        if (totals != root_pins.end()) {
            stats.root_pin_txs = totals->second.first;
            stats.root_pin_gas = totals->second.second;
        }
        stats.observation_duty = client.stack_depth();
        stats.exposure = actors.config.strategy == PinStrategy::Direct ? "public" : "private";
        stats.archived = actors.runtime->side().archived;
        out.pins.push_back(std::move(stats));
    }

    for (const IntermediateActors& actors : intermediates_) {
        const PinClient& client = *actors.pins;
        PinStats stats;
        stats.sidechain = actors.config.name;
        stats.strategy = "intermediate";
        stats.pin_target = config_.coordination.name;
        stats.scheduled = client.samples().size();
        stats.submitted = client.submitted();
        stats.accepted = client.landed();
        stats.finalized = client.finalized();
        stats.resubmissions = client.resubmissions();
        double inclusion_sum = 0.0, finality_sum = 0.0;
        uint64_t inclusion_count = 0, finality_count = 0;
        for (const PinSample& sample : client.samples()) {
            if (sample.rejected) ++stats.rejected;
            if (sample.included_at >= 0) {
                inclusion_sum += static_cast<double>(sample.included_at - sample.scheduled_at);
                ++inclusion_count;
            }
            if (sample.final_at >= 0) {
                const double delay = static_cast<double>(sample.final_at - sample.scheduled_at);
                finality_sum += delay;
                stats.max_finality_delay_s = std::max(stats.max_finality_delay_s, delay);
                ++finality_count;
            }
        }
        if (inclusion_count > 0) stats.mean_inclusion_delay_s = inclusion_sum / inclusion_count;
        if (finality_count > 0) stats.mean_finality_delay_s = finality_sum / finality_count;
        auto totals = root_pins.find(actors.chain_id);
        if (totals != root_pins.end()) {
            stats.root_pin_txs = totals->second.first;
            stats.root_pin_gas = totals->second.second;
        }
        stats.observation_duty = 1;
        stats.exposure = "public";
        out.pins.push_back(std::move(stats));
    }

    for (const SidechainActors& actors : sidechains_) {
        for (const SetupDriver* setup : {actors.root_setup, actors.target_setup}) {
            if (setup == nullptr) continue;
            ReadinessRow row;
            row.sidechain = actors.config.name;
            row.chain = setup->target_chain();
            row.keyset = setup->with_keyset();
            row.ready = setup->ready();
            row.readiness_delay_s = setup->readiness_delay();
            out.readiness.push_back(std::move(row));
        }
    }
    for (const IntermediateActors& actors : intermediates_) {
        ReadinessRow row;
        row.sidechain = actors.config.name;
        row.chain = actors.setup->target_chain();
        row.keyset = false;
        row.ready = actors.setup->ready();
        row.readiness_delay_s = actors.setup->readiness_delay();
        out.readiness.push_back(std::move(row));
    }

    for (const XtxRun& run : coordinator_->runs()) {
        XtxReport row;
        row.label = run.plan.label;
        row.legs = run.plan.legs.size();
        for (const LegPlan& leg : run.plan.legs) {
            SidechainRuntime* runtime = nullptr;
            for (SidechainActors& actors : sidechains_) {
                if (actors.id == leg.sidechain_id) runtime = actors.runtime;
            }
            if (runtime == nullptr) continue;
            bool applied = !leg.writes.empty();
            for (const KvWrite& write : leg.writes) {
                const std::optional<Bytes> value = runtime->committed_read(write.key);
                applied = applied && value.has_value() && *value == write.value;
            }
            if (applied) ++row.legs_applied;
        }
        if (!run.resolved) {
            row.outcome = "error:" + (run.error.empty() ? std::string("unresolved") : run.error);
            row.mixed = row.legs_applied != 0;
            ++out.xtx_errors;
        } else if (!run.error.empty()) {
            row.outcome = "error:" + run.error;
            row.mixed = row.legs_applied != 0;
            ++out.xtx_errors;
        } else if (run.outcome == XtxState::Committed) {
            row.outcome = "committed";
            row.mixed = row.legs_applied != row.legs;
            ++out.xtx_committed;
        } else {
            row.outcome = "ignored";
            row.mixed = row.legs_applied != 0;
            ++out.xtx_ignored;
        }
        if (row.mixed) ++out.xtx_mixed;
        if (run.resolved && run.submit_time >= 0)
            row.duration_s = static_cast<double>(run.resolved_at - run.submit_time);
        out.crosschain.push_back(std::move(row));
    }

    for (const auto& [label, totals] : spend) {
        SpendRow row;
        row.account = label;
        row.gas = totals.first;
        row.usd = static_cast<double>(totals.second) / 1e18 * config_.prices.eth_usd;
        out.spend.push_back(std::move(row));
    }

    for (const AdversaryActors& actors : adversaries_) {
        AdversaryReport row;
        if (actors.miner != nullptr) {
            row.kind = "private_miner";
            row.q = actors.config.q;
            row.trials = actors.miner->trials();
            row.reversions = actors.miner->reversions();
            if (row.trials > 0)
                row.empirical_rate =
                    static_cast<double>(row.reversions) / static_cast<double>(row.trials);
            row.analytic_rate = catchup_probability(
                actors.config.q, static_cast<uint32_t>(config_.coordination.confirmations));
            if (row.trials > 0) {
                row.three_sigma_bound =
                    row.analytic_rate + 3.0 * std::sqrt(row.analytic_rate *
                                                        (1.0 - row.analytic_rate) /
                                                        static_cast<double>(row.trials));
            } else {
                row.three_sigma_bound = 1.0;
            }
            row.within_bound = row.empirical_rate <= row.three_sigma_bound;
        } else if (actors.spammer != nullptr) {
            row.kind = "spammer";
            row.rate = actors.config.rate;
            row.submitted = actors.spammer->submitted();
            row.included = actors.spammer->included();
        } else {
            row.kind = "reorg_injector";
            row.injected = actors.injector->injected();
        }
        out.adversaries.push_back(std::move(row));
    }

    return out;
}

RunReport run_scenario(const ScenarioConfig& config, std::optional<uint64_t> seed_override) {
    Simulation simulation(config, seed_override);
    simulation.run();
    return simulation.report();
}

StrategyComparison compare_strategies(const ScenarioConfig& config) {
    bool any_direct = false;
    bool any_hierarchical = false;
    for (const SidechainConfig& side : config.sidechains) {
        if (side.strategy == PinStrategy::Direct) any_direct = true;
        else any_hierarchical = true;
    }
    if (!any_direct || !any_hierarchical)
        fail(Errc::MissingVariant,
             "strategy comparison needs at least one direct and one hierarchical sidechain");

    Simulation simulation(config);
    simulation.run();
    const RunReport report = simulation.report();

    const double day_scale = kSecondsPerDay / static_cast<double>(config.duration);
    const double year_scale = kSecondsPerYear / static_cast<double>(config.duration);
    const double price_wei = config.prices.gas_price_gwei * 1e9;

    StrategyComparison comparison;
    comparison.direct.strategy = "direct";
    comparison.direct.observation_duty = 1;
    comparison.direct.exposure = "public";
    comparison.hierarchical.strategy = "hierarchical";
    comparison.hierarchical.observation_duty = 2;
    comparison.hierarchical.exposure = "private";

    double direct_delay_sum = 0.0, hierarchical_delay_sum = 0.0;
    uint64_t direct_delay_count = 0, hierarchical_delay_count = 0;
    std::set<std::string> hierarchical_targets;
    for (const SidechainConfig& side : config.sidechains) {
        if (side.strategy == PinStrategy::Hierarchical)
            hierarchical_targets.insert(side.pin_target);
    }

    for (const PinStats& pin : report.pins) {
        if (pin.strategy == "direct") {
            comparison.direct.sidechains += 1;
            comparison.direct.root_pin_txs += pin.root_pin_txs;
            comparison.direct.root_gas_per_year += pin.root_pin_gas;
            if (pin.mean_finality_delay_s >= 0) {
                direct_delay_sum += pin.mean_finality_delay_s;
                ++direct_delay_count;
            }
        } else if (pin.strategy == "hierarchical") {
            comparison.hierarchical.sidechains += 1;
            if (pin.mean_finality_delay_s >= 0) {
                hierarchical_delay_sum += pin.mean_finality_delay_s;
                ++hierarchical_delay_count;
            }
        } else if (hierarchical_targets.count(pin.sidechain) > 0) {
            // The hierarchical group's root footprint is its intermediates'.
            comparison.hierarchical.root_pin_txs += pin.root_pin_txs;
            comparison.hierarchical.root_gas_per_year += pin.root_pin_gas;
        }
    }

    if (direct_delay_count > 0)
        comparison.direct.mean_finality_delay_s = direct_delay_sum / direct_delay_count;
    if (hierarchical_delay_count > 0)
        comparison.hierarchical.mean_finality_delay_s =
            hierarchical_delay_sum / hierarchical_delay_count;

    comparison.direct.root_txs_per_day = comparison.direct.root_pin_txs * day_scale;
    comparison.direct.root_gas_per_year *= year_scale;
    comparison.direct.usd_per_year =
        fiat_cost(comparison.direct.root_gas_per_year, price_wei, config.prices.eth_usd);

    comparison.hierarchical.root_txs_per_day = comparison.hierarchical.root_pin_txs * day_scale;
    comparison.hierarchical.root_gas_per_year *= year_scale;
    comparison.hierarchical.usd_per_year =
        fiat_cost(comparison.hierarchical.root_gas_per_year, price_wei, config.prices.eth_usd);

    return comparison;
}

} // namespace chaincoord
