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

#include "chaincoord/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "chaincoord/errors.hpp"

namespace chaincoord {

std::string_view pin_strategy_name(PinStrategy strategy) {
    return strategy == PinStrategy::Direct ? "direct" : "hierarchical";
}

namespace {

std::string trim(std::string_view text) {
    size_t begin = text.find_first_not_of(" \t\r");
    size_t end = text.find_last_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    return std::string(text.substr(begin, end - begin + 1));
}

[[noreturn]] void parse_fail(int line, const std::string& field, const std::string& what) {
    fail(Errc::ParseError, "line " + std::to_string(line) + ", field '" + field + "': " + what);
}

class FieldParser {
  public:
    FieldParser(int line, std::string key, std::string value)
        : line_(line), key_(std::move(key)), value_(std::move(value)) {}

    const std::string& key() const { return key_; }
    const std::string& str() const { return value_; }

    double real() const {
        char* end = nullptr;
        const double parsed = std::strtod(value_.c_str(), &end);
        if (end == value_.c_str() || *end != '\0')
            parse_fail(line_, key_, "expected a number, got '" + value_ + "'");
        return parsed;
    }

    int64_t integer() const {
        char* end = nullptr;
        const long long parsed = std::strtoll(value_.c_str(), &end, 10);
        if (end == value_.c_str() || *end != '\0')
            parse_fail(line_, key_, "expected an integer, got '" + value_ + "'");
        return parsed;
    }

    uint64_t non_negative() const {
        const int64_t parsed = integer();
        if (parsed < 0) parse_fail(line_, key_, "expected a non-negative integer");
        return static_cast<uint64_t>(parsed);
    }

    bool boolean() const {
        if (value_ == "true" || value_ == "yes" || value_ == "1") return true;
        if (value_ == "false" || value_ == "no" || value_ == "0") return false;
        parse_fail(line_, key_, "expected true/false, got '" + value_ + "'");
    }

    std::vector<std::string> list() const {
        std::vector<std::string> items;
        std::stringstream stream(value_);
        std::string item;
        while (std::getline(stream, item, ',')) {
            const std::string cleaned = trim(item);
            if (!cleaned.empty()) items.push_back(cleaned);
        }
        return items;
    }

    [[noreturn]] void unknown() const { parse_fail(line_, key_, "unknown key in this section"); }
    [[noreturn]] void bad(const std::string& what) const { parse_fail(line_, key_, what); }

  private:
    int line_;
    std::string key_;
    std::string value_;
};

void apply_coordination(ScenarioConfig& config, const FieldParser& field) {
    CoordinationConfig& coord = config.coordination;
    if (field.key() == "name") coord.name = field.str();
    else if (field.key() == "block_time") coord.schedule.block_time = field.real();
    else if (field.key() == "block_gas_limit") coord.schedule.block_gas_limit = field.non_negative();
    else if (field.key() == "intrinsic_tx_gas") coord.schedule.intrinsic_tx_gas = field.non_negative();
    else if (field.key() == "pin_tx_gas") coord.schedule.pin_tx_gas = field.non_negative();
    else if (field.key() == "keyset_store_gas") coord.schedule.keyset_store_gas = field.non_negative();
    else if (field.key() == "confirmations") coord.confirmations = field.non_negative();
    else if (field.key() == "stochastic_blocks") coord.stochastic_blocks = field.boolean();
    else if (field.key() == "price_sensitivity") coord.price_sensitivity = field.real();
    else if (field.key() == "price_target_utilization") coord.price_target = field.real();
    else field.unknown();
}

void apply_prices(ScenarioConfig& config, const FieldParser& field) {
    if (field.key() == "gas_price_gwei") config.prices.gas_price_gwei = field.real();
    else if (field.key() == "eth_usd") config.prices.eth_usd = field.real();
    else field.unknown();
}

void apply_run(ScenarioConfig& config, const FieldParser& field) {
    if (field.key() == "seed") config.seed = field.non_negative();
    else if (field.key() == "duration") config.duration = field.integer();
    else if (field.key() == "wait_start_finality") config.wait_start_finality = field.boolean();
    else field.unknown();
}

void apply_intermediate(IntermediateConfig& mid, const FieldParser& field) {
    if (field.key() == "name") mid.name = field.str();
    else if (field.key() == "block_time") mid.block_time = field.real();
    else if (field.key() == "pin_interval") mid.pin_interval = field.integer();
    else if (field.key() == "validators") mid.validators = field.non_negative();
    else field.unknown();
}

void apply_sidechain(SidechainConfig& side, const FieldParser& field) {
    if (field.key() == "name") side.name = field.str();
    else if (field.key() == "participants") side.participants = field.non_negative();
    else if (field.key() == "pin_strategy") {
        if (field.str() == "direct") side.strategy = PinStrategy::Direct;
        else if (field.str() == "hierarchical") side.strategy = PinStrategy::Hierarchical;
        else field.bad("expected direct|hierarchical");
    } else if (field.key() == "pin_target") side.pin_target = field.str();
    else if (field.key() == "pin_interval") side.pin_interval = field.integer();
    else if (field.key() == "heartbeat") side.heartbeat = field.integer();
    else if (field.key() == "lifetime") side.lifetime = field.integer();
    else field.unknown();
}

void apply_adversary(AdversaryConfig& adversary, const FieldParser& field) {
    if (field.key() == "kind") {
        if (field.str() == "private_miner") adversary.kind = AdversaryKind::PrivateMiner;
        else if (field.str() == "spammer") adversary.kind = AdversaryKind::Spammer;
        else if (field.str() == "reorg_injector") adversary.kind = AdversaryKind::ReorgInjector;
        else field.bad("expected private_miner|spammer|reorg_injector");
    } else if (field.key() == "q") adversary.q = field.real();
    else if (field.key() == "give_up") adversary.give_up = field.non_negative();
    else if (field.key() == "rate") adversary.rate = field.real();
    else if (field.key() == "tx_gas") adversary.tx_gas = field.non_negative();
    else if (field.key() == "start") adversary.start = field.integer();
    else if (field.key() == "stop") adversary.stop = field.integer();
    else if (field.key() == "reorg") {
        // "at:depth" pairs, repeatable.
        const std::string& value = field.str();
        const size_t colon = value.find(':');
        if (colon == std::string::npos) field.bad("expected at:depth");
        char* end = nullptr;
        const long long at = std::strtoll(value.c_str(), &end, 10);
        if (end != value.c_str() + colon) field.bad("expected at:depth");
        const long long depth = std::strtoll(value.c_str() + colon + 1, &end, 10);
        if (*end != '\0' || depth < 0) field.bad("expected at:depth");
        adversary.reorgs.emplace_back(at, static_cast<uint64_t>(depth));
    } else field.unknown();
}

void apply_crosschain(CrosschainSpec& spec, const FieldParser& field) {
    if (field.key() == "label") spec.label = field.str();
    else if (field.key() == "legs") spec.legs = field.list();
    else if (field.key() == "timeout_blocks") spec.timeout_blocks = field.non_negative();
    else if (field.key() == "submit_at") spec.submit_at = field.integer();
    else if (field.key() == "fault") {
        const std::string& value = field.str();
        if (value == "none") return;
        const size_t colon = value.find(':');
        if (colon == std::string::npos) field.bad("expected none|silent:<leg>|stale:<leg>");
        const std::string kind = value.substr(0, colon);
        const std::string leg = trim(value.substr(colon + 1));
        if (kind == "silent") spec.faults[leg] = LegFault::Silent;
        else if (kind == "stale") spec.faults[leg] = LegFault::StaleKeyset;
        else field.bad("expected none|silent:<leg>|stale:<leg>");
    } else field.unknown();
}

} // namespace

ScenarioConfig parse_scenario(std::string_view text) {
    ScenarioConfig config;
    std::string section;
    std::set<std::string> seen_scalar_sections;
    int line_number = 0;

    std::stringstream stream{std::string(text)};
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_number;
        const size_t comment = raw.find('#');
        if (comment != std::string::npos) raw.erase(comment);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                parse_fail(line_number, line, "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section == "coordination" || section == "prices" || section == "run") {
                if (!seen_scalar_sections.insert(section).second)
                    parse_fail(line_number, section, "section may appear only once");
            } else if (section == "intermediate") {
                config.intermediates.emplace_back();
            } else if (section == "sidechain") {
                config.sidechains.emplace_back();
            } else if (section == "adversary") {
                config.adversaries.emplace_back();
            } else if (section == "crosschain") {
                config.crosschain.emplace_back();
            } else {
                parse_fail(line_number, section, "unknown section");
            }
            continue;
        }

        const size_t equals = line.find('=');
        if (equals == std::string::npos)
            parse_fail(line_number, line, "expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, equals));
        const std::string value = trim(std::string_view(line).substr(equals + 1));
        if (key.empty()) parse_fail(line_number, line, "empty key");
        if (section.empty()) parse_fail(line_number, key, "key before any [section]");
        const FieldParser field(line_number, key, value);

        if (section == "coordination") apply_coordination(config, field);
        else if (section == "prices") apply_prices(config, field);
        else if (section == "run") apply_run(config, field);
        else if (section == "intermediate") apply_intermediate(config.intermediates.back(), field);
        else if (section == "sidechain") apply_sidechain(config.sidechains.back(), field);
        else if (section == "adversary") apply_adversary(config.adversaries.back(), field);
        else apply_crosschain(config.crosschain.back(), field);
    }
    return config;
}

void validate_scenario(const ScenarioConfig& config) {
    std::vector<std::string> violations;
    auto flag = [&](std::string text) { violations.push_back(std::move(text)); };

    if (config.duration <= 0) flag("run.duration must be > 0");
    if (config.coordination.schedule.block_time <= 0) flag("coordination.block_time must be > 0");
    if (config.coordination.schedule.block_gas_limit <
        config.coordination.schedule.intrinsic_tx_gas)
        flag("coordination.block_gas_limit below intrinsic_tx_gas");
    if (config.coordination.schedule.pin_tx_gas < config.coordination.schedule.intrinsic_tx_gas)
        flag("coordination.pin_tx_gas below intrinsic_tx_gas");
    if (config.prices.gas_price_gwei <= 0) flag("prices.gas_price_gwei must be > 0");
    if (config.prices.eth_usd <= 0) flag("prices.eth_usd must be > 0");

    std::set<std::string> intermediate_names;
    for (const IntermediateConfig& mid : config.intermediates) {
        if (mid.name.empty()) flag("intermediate.name is required");
        else if (!intermediate_names.insert(mid.name).second)
            flag("duplicate intermediate name '" + mid.name + "'");
        if (mid.block_time <= 0) flag("intermediate.block_time must be > 0");
        if (mid.pin_interval <= 0) flag("intermediate.pin_interval must be > 0");
        if (mid.validators == 0) flag("intermediate.validators must be > 0");
        if (mid.name == config.coordination.name)
            flag("intermediate name collides with the coordination chain");
    }

    std::set<std::string> sidechain_names;
    for (const SidechainConfig& side : config.sidechains) {
        if (side.name.empty()) {
            flag("sidechain.name is required");
            continue;
        }
        if (!sidechain_names.insert(side.name).second)
            flag("duplicate sidechain name '" + side.name + "'");
        if (side.participants == 0) flag("sidechain '" + side.name + "': participants must be > 0");
        if (side.pin_interval <= 0) flag("sidechain '" + side.name + "': pin_interval must be > 0");
        if (side.heartbeat <= 0) flag("sidechain '" + side.name + "': heartbeat must be > 0");
        if (side.lifetime < 0) flag("sidechain '" + side.name + "': lifetime must be >= 0");
        if (side.strategy == PinStrategy::Hierarchical) {
            if (side.pin_target.empty())
                flag("sidechain '" + side.name + "': hierarchical pinning needs pin_target");
            else if (intermediate_names.count(side.pin_target) == 0)
                flag("sidechain '" + side.name + "': pin_target '" + side.pin_target +
                     "' does not name an intermediate");
        } else if (!side.pin_target.empty() && side.pin_target != config.coordination.name) {
            flag("sidechain '" + side.name + "': direct pinning targets the coordination chain");
        }
    }

    for (size_t i = 0; i < config.adversaries.size(); ++i) {
        const AdversaryConfig& adversary = config.adversaries[i];
        const std::string tag = "adversary #" + std::to_string(i + 1);
        switch (adversary.kind) {
        case AdversaryKind::PrivateMiner:
            if (!(adversary.q >= 0.0 && adversary.q < 1.0)) flag(tag + ": q must lie in [0, 1)");
            break;
        case AdversaryKind::Spammer:
            if (adversary.rate <= 0) flag(tag + ": rate must be > 0");
            if (adversary.tx_gas < config.coordination.schedule.intrinsic_tx_gas)
                flag(tag + ": tx_gas below the intrinsic transaction cost");
            if (adversary.stop >= 0 && adversary.stop <= adversary.start)
                flag(tag + ": stop must come after start");
            break;
        case AdversaryKind::ReorgInjector:
            if (adversary.reorgs.empty()) flag(tag + ": needs at least one reorg = at:depth");
            for (const auto& [at, depth] : adversary.reorgs) {
                if (depth == 0) flag(tag + ": reorg depth must be > 0");
                if (depth >= config.coordination.confirmations)
                    flag(tag + ": reorg depth must stay below the confirmation count");
                if (at < 0 || at > config.duration) flag(tag + ": reorg instant outside the run");
            }
            break;
        }
    }

    std::set<std::string> labels;
    for (const CrosschainSpec& spec : config.crosschain) {
        const std::string tag = "crosschain '" + spec.label + "'";
        if (spec.label.empty()) flag("crosschain.label is required");
        else if (!labels.insert(spec.label).second) flag("duplicate crosschain label '" + spec.label + "'");
        std::set<std::string> distinct(spec.legs.begin(), spec.legs.end());
        if (distinct.size() < 2 || distinct.size() != spec.legs.size())
            flag(tag + ": needs >= 2 distinct legs");
        for (const std::string& leg : spec.legs) {
            if (sidechain_names.count(leg) == 0)
                flag(tag + ": leg '" + leg + "' does not name a sidechain");
        }
        for (const auto& [leg, fault] : spec.faults) {
            (void)fault;
            if (std::find(spec.legs.begin(), spec.legs.end(), leg) == spec.legs.end())
                flag(tag + ": fault names unknown leg '" + leg + "'");
        }
        if (spec.timeout_blocks == 0) flag(tag + ": timeout_blocks must be > 0");
        if (spec.submit_at < 0 || spec.submit_at >= config.duration)
            flag(tag + ": submit_at outside the run");
    }

    if (!violations.empty()) {
        std::string message;
        for (const std::string& violation : violations) {
            if (!message.empty()) message += "; ";
            message += violation;
        }
        fail(Errc::ValidationError, message);
    }
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) fail(Errc::ParseError, "cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    ScenarioConfig config = parse_scenario(buffer.str());
    validate_scenario(config);
    return config;
}

} // namespace chaincoord
