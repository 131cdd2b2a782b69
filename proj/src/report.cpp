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

#include "chaincoord/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace chaincoord {

namespace {

using nlohmann::json;

json chain_json(const ChainStats& chain) {
    return json{{"name", chain.name},
                {"finality", chain.finality},
                {"blocks", chain.blocks},
                {"transactions", chain.transactions},
                {"mean_utilization", chain.mean_utilization},
                {"final_gas_price_wei", chain.final_gas_price_wei},
                {"reorg_events", chain.reorg_events},
                {"reverted_blocks", chain.reverted_blocks},
                {"finalized_reverted", chain.finalized_reverted}};
}

json pin_json(const PinStats& pin) {
    return json{{"sidechain", pin.sidechain},
                {"strategy", pin.strategy},
                {"pin_target", pin.pin_target},
                {"scheduled", pin.scheduled},
                {"submitted", pin.submitted},
                {"accepted", pin.accepted},
                {"finalized", pin.finalized},
                {"resubmissions", pin.resubmissions},
                {"rejected", pin.rejected},
                {"mean_inclusion_delay_s", pin.mean_inclusion_delay_s},
                {"mean_finality_delay_s", pin.mean_finality_delay_s},
                {"max_finality_delay_s", pin.max_finality_delay_s},
                {"root_pin_txs", pin.root_pin_txs},
                {"root_pin_gas", pin.root_pin_gas},
                {"observation_duty", pin.observation_duty},
                {"exposure", pin.exposure},
                {"archived", pin.archived}};
}

json readiness_json(const ReadinessRow& row) {
    return json{{"sidechain", row.sidechain},
                {"chain", row.chain},
                {"keyset", row.keyset},
                {"ready", row.ready},
                {"readiness_delay_s", row.readiness_delay_s}};
}

json xtx_json(const XtxReport& xtx) {
    return json{{"label", xtx.label},       {"outcome", xtx.outcome},
                {"legs", xtx.legs},         {"legs_applied", xtx.legs_applied},
                {"mixed", xtx.mixed},       {"duration_s", xtx.duration_s}};
}

json spend_json(const SpendRow& row) {
    return json{{"account", row.account}, {"gas", row.gas}, {"usd", row.usd}};
}

json adversary_json(const AdversaryReport& adversary) {
    json out{{"kind", adversary.kind}};
    if (adversary.kind == "private_miner") {
        out["q"] = adversary.q;
        out["trials"] = adversary.trials;
        out["reversions"] = adversary.reversions;
        out["empirical_rate"] = adversary.empirical_rate;
        out["analytic_rate"] = adversary.analytic_rate;
        out["three_sigma_bound"] = adversary.three_sigma_bound;
        out["within_bound"] = adversary.within_bound;
    } else if (adversary.kind == "spammer") {
        out["rate"] = adversary.rate;
        out["submitted"] = adversary.submitted;
        out["included"] = adversary.included;
    } else {
        out["injected"] = adversary.injected;
    }
    return out;
}

json aggregate_json(const StrategyAggregate& aggregate) {
    return json{{"strategy", aggregate.strategy},
                {"sidechains", aggregate.sidechains},
                {"root_pin_txs", aggregate.root_pin_txs},
                {"root_txs_per_day", aggregate.root_txs_per_day},
                {"root_gas_per_year", aggregate.root_gas_per_year},
                {"usd_per_year", aggregate.usd_per_year},
                {"mean_finality_delay_s", aggregate.mean_finality_delay_s},
                {"observation_duty", aggregate.observation_duty},
                {"exposure", aggregate.exposure}};
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt(double value, int precision = 3) {
    std::ostringstream stream;
    stream << std::fixed << std::setprecision(precision) << value;
    return stream.str();
}

} // namespace

std::string to_json(const RunReport& report) {
    json out;
    out["seed"] = report.seed;
    out["duration"] = report.duration;
    out["gas_price_gwei"] = report.gas_price_gwei;
    out["eth_usd"] = report.eth_usd;
    out["chains"] = json::array();
    for (const ChainStats& chain : report.chains) out["chains"].push_back(chain_json(chain));
    out["pins"] = json::array();
    for (const PinStats& pin : report.pins) out["pins"].push_back(pin_json(pin));
    out["readiness"] = json::array();
    for (const ReadinessRow& row : report.readiness)
        out["readiness"].push_back(readiness_json(row));
    out["crosschain"] = json::array();
    for (const XtxReport& xtx : report.crosschain) out["crosschain"].push_back(xtx_json(xtx));
    out["xtx_committed"] = report.xtx_committed;
    out["xtx_ignored"] = report.xtx_ignored;
    out["xtx_mixed"] = report.xtx_mixed;
    out["xtx_errors"] = report.xtx_errors;
    out["spend"] = json::array();
    for (const SpendRow& row : report.spend) out["spend"].push_back(spend_json(row));
    out["adversaries"] = json::array();
    for (const AdversaryReport& adversary : report.adversaries)
        out["adversaries"].push_back(adversary_json(adversary));
    return out.dump(2) + "\n";
}

std::string to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "section,name,finality,blocks,transactions,mean_utilization,final_gas_price_wei,"
           "reorg_events,reverted_blocks,finalized_reverted\n";
    for (const ChainStats& chain : report.chains) {
        out << "chain," << csv_escape(chain.name) << ',' << chain.finality << ',' << chain.blocks
            << ',' << chain.transactions << ',' << fmt(chain.mean_utilization, 6) << ','
            << fmt(chain.final_gas_price_wei, 3) << ',' << chain.reorg_events << ','
            << chain.reverted_blocks << ',' << chain.finalized_reverted << '\n';
    }
    out << "\nsection,sidechain,strategy,pin_target,scheduled,submitted,accepted,finalized,"
           "resubmissions,rejected,mean_inclusion_delay_s,mean_finality_delay_s,"
           "max_finality_delay_s,root_pin_txs,root_pin_gas,observation_duty,exposure,archived\n";
    for (const PinStats& pin : report.pins) {
        out << "pins," << csv_escape(pin.sidechain) << ',' << pin.strategy << ','
            << csv_escape(pin.pin_target) << ',' << pin.scheduled << ',' << pin.submitted << ','
            << pin.accepted << ',' << pin.finalized << ',' << pin.resubmissions << ','
            << pin.rejected << ',' << fmt(pin.mean_inclusion_delay_s) << ','
            << fmt(pin.mean_finality_delay_s) << ',' << fmt(pin.max_finality_delay_s) << ','
            << pin.root_pin_txs << ',' << fmt(pin.root_pin_gas, 0) << ',' << pin.observation_duty
            << ',' << pin.exposure << ',' << (pin.archived ? "true" : "false") << '\n';
    }
    out << "\nsection,label,outcome,legs,legs_applied,mixed,duration_s\n";
    for (const XtxReport& xtx : report.crosschain) {
        out << "crosschain," << csv_escape(xtx.label) << ',' << csv_escape(xtx.outcome) << ','
            << xtx.legs << ',' << xtx.legs_applied << ',' << (xtx.mixed ? "true" : "false") << ','
            << fmt(xtx.duration_s) << '\n';
    }
    out << "\nsection,account,gas,usd\n";
    for (const SpendRow& row : report.spend) {
        out << "spend," << csv_escape(row.account) << ',' << fmt(row.gas, 0) << ','
            << fmt(row.usd, 6) << '\n';
    }
    return out.str();
}

std::string to_table(const RunReport& report) {
    std::ostringstream out;
    out << "run: seed=" << report.seed << " duration=" << report.duration
        << "s gas_price=" << fmt(report.gas_price_gwei, 2) << " gwei eth=$"
        << fmt(report.eth_usd, 2) << "\n\n";

    out << "chains\n";
    out << "  " << std::left << std::setw(18) << "name" << std::setw(15) << "finality"
        << std::right << std::setw(8) << "blocks" << std::setw(9) << "txs" << std::setw(8)
        << "util" << std::setw(22) << "gas_price" << std::setw(8) << "reorgs" << std::setw(10)
        << "reverted" << '\n';
    for (const ChainStats& chain : report.chains) {
        out << "  " << std::left << std::setw(18) << chain.name << std::setw(15) << chain.finality
            << std::right << std::setw(8) << chain.blocks << std::setw(9) << chain.transactions
            << std::setw(8) << fmt(chain.mean_utilization) << std::setw(22)
            << fmt(chain.final_gas_price_wei, 0) << std::setw(8) << chain.reorg_events
            << std::setw(10) << chain.reverted_blocks << '\n';
    }

    if (!report.pins.empty()) {
        out << "\npins\n";
        out << "  " << std::left << std::setw(14) << "sidechain" << std::setw(14) << "strategy"
            << std::right << std::setw(6) << "sched" << std::setw(6) << "ok" << std::setw(7)
            << "final" << std::setw(12) << "incl_s" << std::setw(12) << "final_s" << std::setw(10)
            << "root_txs" << std::setw(6) << "duty" << std::setw(9) << "expose" << '\n';
        for (const PinStats& pin : report.pins) {
            out << "  " << std::left << std::setw(14) << pin.sidechain << std::setw(14)
                << pin.strategy << std::right << std::setw(6) << pin.scheduled << std::setw(6)
                << pin.accepted << std::setw(7) << pin.finalized << std::setw(12)
                << fmt(pin.mean_inclusion_delay_s, 1) << std::setw(12)
                << fmt(pin.mean_finality_delay_s, 1) << std::setw(10) << pin.root_pin_txs
                << std::setw(6) << pin.observation_duty << std::setw(9) << pin.exposure << '\n';
        }
    }

    if (!report.readiness.empty()) {
        out << "\nreadiness (activation inclusion to finality)\n";
        for (const ReadinessRow& row : report.readiness) {
            out << "  " << std::left << std::setw(14) << row.sidechain << " on " << std::setw(14)
                << row.chain << (row.ready ? " ready " : " pending ");
            if (row.ready) out << fmt(row.readiness_delay_s, 1) << " s";
            out << '\n';
        }
    }

    if (!report.crosschain.empty()) {
        out << "\ncrosschain  committed=" << report.xtx_committed
            << " ignored=" << report.xtx_ignored << " mixed=" << report.xtx_mixed
            << " errors=" << report.xtx_errors << '\n';
        for (const XtxReport& xtx : report.crosschain) {
            out << "  " << std::left << std::setw(20) << xtx.label << std::setw(12) << xtx.outcome
                << " legs=" << xtx.legs_applied << '/' << xtx.legs
                << (xtx.mixed ? "  MIXED" : "") << '\n';
        }
    }

    if (!report.spend.empty()) {
        out << "\nspend (root chain)\n";
        for (const SpendRow& row : report.spend) {
            out << "  " << std::left << std::setw(24) << row.account << std::right << std::setw(14)
                << fmt(row.gas, 0) << " gas " << std::setw(12) << ("$" + fmt(row.usd, 4)) << '\n';
        }
    }

    if (!report.adversaries.empty()) {
        out << "\nadversaries\n";
        for (const AdversaryReport& adversary : report.adversaries) {
            out << "  " << adversary.kind;
            if (adversary.kind == "private_miner") {
                out << " q=" << fmt(adversary.q, 2) << " trials=" << adversary.trials
                    << " reversions=" << adversary.reversions
                    << " empirical=" << fmt(adversary.empirical_rate, 6)
                    << " analytic=" << fmt(adversary.analytic_rate, 6)
                    << " bound3s=" << fmt(adversary.three_sigma_bound, 6)
                    << (adversary.within_bound ? " ok" : " EXCEEDED");
            } else if (adversary.kind == "spammer") {
                out << " rate=" << fmt(adversary.rate, 1) << "/s submitted="
                    << adversary.submitted << " included=" << adversary.included;
            } else {
                out << " injected=" << adversary.injected;
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string to_json(const StrategyComparison& comparison) {
    json out;
    out["direct"] = aggregate_json(comparison.direct);
    out["hierarchical"] = aggregate_json(comparison.hierarchical);
    return out.dump(2) + "\n";
}

std::string to_csv(const StrategyComparison& comparison) {
    std::ostringstream out;
    out << "strategy,sidechains,root_pin_txs,root_txs_per_day,root_gas_per_year,usd_per_year,"
           "mean_finality_delay_s,observation_duty,exposure\n";
    for (const StrategyAggregate* aggregate : {&comparison.direct, &comparison.hierarchical}) {
        out << aggregate->strategy << ',' << aggregate->sidechains << ','
            << aggregate->root_pin_txs << ',' << fmt(aggregate->root_txs_per_day, 2) << ','
            << fmt(aggregate->root_gas_per_year, 0) << ',' << fmt(aggregate->usd_per_year, 2)
            << ',' << fmt(aggregate->mean_finality_delay_s, 1) << ','
            << aggregate->observation_duty << ',' << aggregate->exposure << '\n';
    }
    return out.str();
}

std::string to_table(const StrategyComparison& comparison) {
    std::ostringstream out;
    out << std::left << std::setw(26) << "metric" << std::right << std::setw(16) << "direct"
        << std::setw(16) << "hierarchical" << '\n';
    auto row = [&](const std::string& label, const std::string& direct,
                   const std::string& hierarchical) {
        out << std::left << std::setw(26) << label << std::right << std::setw(16) << direct
            << std::setw(16) << hierarchical << '\n';
    };
    const StrategyAggregate& d = comparison.direct;
    const StrategyAggregate& h = comparison.hierarchical;
    row("sidechains", std::to_string(d.sidechains), std::to_string(h.sidechains));
    row("root pin txs", std::to_string(d.root_pin_txs), std::to_string(h.root_pin_txs));
    row("root txs / day", fmt(d.root_txs_per_day, 1), fmt(h.root_txs_per_day, 1));
    row("root gas / year", fmt(d.root_gas_per_year, 0), fmt(h.root_gas_per_year, 0));
    row("usd / year", fmt(d.usd_per_year, 2), fmt(h.usd_per_year, 2));
    row("mean finality delay s", fmt(d.mean_finality_delay_s, 1),
        fmt(h.mean_finality_delay_s, 1));
    row("observation duty", std::to_string(d.observation_duty),
        std::to_string(h.observation_duty));
    row("exposure", d.exposure, h.exposure);
    return out.str();
}

} // namespace chaincoord
