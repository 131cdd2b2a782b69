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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chaincoord/errors.hpp"
#include "chaincoord/finality.hpp"
#include "chaincoord/simulation.hpp"
#include "chaincoord/strength.hpp"

namespace {

using namespace chaincoord;

// 1 = the input was wrong, 2 = the tool itself broke.
int classify(Errc code) {
    switch (code) {
    case Errc::ParseError:
    case Errc::ValidationError:
    case Errc::MissingVariant:
    case Errc::DomainError:
    case Errc::GasOutOfRange:
    case Errc::UnsupportedCombination:
    case Errc::NotFound:
    case Errc::DecodeError:
        return 1;
    default:
        return 2;
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) fail(Errc::ValidationError, "cannot open output file '" + out_path + "'");
    file << text;
}

int cmd_run(const std::string& scenario_path, std::optional<uint64_t> seed,
            const std::string& format, const std::string& out_path) {
    const ScenarioConfig config = load_scenario(scenario_path);
    const RunReport report = run_scenario(config, seed);
    if (format == "json") emit(to_json(report), out_path);
    else if (format == "csv") emit(to_csv(report), out_path);
    else emit(to_table(report), out_path);
    return 0;
}

int cmd_compare(const std::string& scenario_path, const std::string& format,
                const std::string& out_path) {
    const ScenarioConfig config = load_scenario(scenario_path);
    const StrategyComparison comparison = compare_strategies(config);
    if (format == "json") emit(to_json(comparison), out_path);
    else if (format == "csv") emit(to_csv(comparison), out_path);
    else emit(to_table(comparison), out_path);
    return 0;
}

int cmd_finality(double q, uint32_t z, uint64_t trials, uint64_t seed) {
    const double analytic = catchup_probability(q, z);
    std::printf("catch-up probability for q=%g after z=%u confirmations\n", q, z);
    std::printf("  analytic: %.10g\n", analytic);
    std::printf("  wait at 14 s blocks: %.0f s\n", finality_time(FinalityPolicy{z, 14.0}));
    if (trials > 0) {
        const MonteCarloResult mc = monte_carlo_reversion(q, z, trials, seed);
        std::printf("  monte carlo: %.10g (%llu/%llu, s.e. %.3g, seed %llu)\n", mc.probability,
                    static_cast<unsigned long long>(mc.successes),
                    static_cast<unsigned long long>(mc.trials), mc.standard_error,
                    static_cast<unsigned long long>(seed));
    }
    return 0;
}

AttackProperty parse_property(const std::string& name) {
    if (name == "preimage") return AttackProperty::Preimage;
    if (name == "second-preimage") return AttackProperty::SecondPreimage;
    if (name == "collision") return AttackProperty::Collision;
    if (name == "key-recovery") return AttackProperty::KeyRecovery;
    fail(Errc::ValidationError,
         "property must be preimage|second-preimage|collision|key-recovery");
}

ComputeModel parse_model(const std::string& name) {
    if (name == "classical") return ComputeModel::Classical;
    if (name == "grover") return ComputeModel::QuantumGrover;
    if (name == "collision-bound") return ComputeModel::QuantumCollisionBound;
    fail(Errc::ValidationError, "model must be classical|grover|collision-bound");
}

void strength_row(const char* primitive, const char* property, const char* model,
                  const StrengthQuery& query) {
    try {
        const double bits = strength_bits(query);
        std::printf("  %-22s %-16s %-16s %7.1f  %s\n", primitive, property, model, bits,
                    phaseout_name(phaseout_check(bits)));
    } catch (const Error& err) {
        if (err.code() != Errc::UnsupportedCombination) throw;
    }
}

int cmd_strength(uint32_t bits, uint32_t truncate, const std::string& property,
                 const std::string& model) {
    const DigestSpec digest{bits, truncate == 0 ? bits : truncate};
    if (!property.empty() && !model.empty()) {
        StrengthQuery query;
        query.property = parse_property(property);
        query.model = parse_model(model);
        if (query.property == AttackProperty::KeyRecovery)
            query.primitive = SignatureScheme::EcdsaSecp256k1;
        else
            query.primitive = digest;
        std::printf("%.1f\n", strength_bits(query));
        return 0;
    }
    if (property.empty() != model.empty())
        fail(Errc::ValidationError, "give both --property and --model, or neither for a table");

    char label[64];
    std::snprintf(label, sizeof(label), "digest(%u,%u)", digest.output_bits,
                  digest.truncated_to_bits);
    std::printf("  %-22s %-16s %-16s %7s  %s\n", "primitive", "property", "model", "bits",
                "policy");
    for (AttackProperty prop :
         {AttackProperty::Preimage, AttackProperty::SecondPreimage, AttackProperty::Collision}) {
        const char* prop_name = prop == AttackProperty::Preimage ? "preimage"
                                : prop == AttackProperty::SecondPreimage ? "second-preimage"
                                                                         : "collision";
        for (ComputeModel mode : {ComputeModel::Classical, ComputeModel::QuantumGrover,
                                  ComputeModel::QuantumCollisionBound}) {
            const char* mode_name = mode == ComputeModel::Classical ? "classical"
                                    : mode == ComputeModel::QuantumGrover ? "grover"
                                                                          : "collision-bound";
            strength_row(label, prop_name, mode_name, StrengthQuery{digest, prop, mode});
        }
    }
    strength_row("ecdsa-secp256k1", "key-recovery", "classical",
                 StrengthQuery{SignatureScheme::EcdsaSecp256k1, AttackProperty::KeyRecovery,
                               ComputeModel::Classical});
    strength_row("ecdsa-secp256k1", "key-recovery", "grover",
                 StrengthQuery{SignatureScheme::EcdsaSecp256k1, AttackProperty::KeyRecovery,
                               ComputeModel::QuantumGrover});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic multi-chain pinning and crosschain simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<uint64_t> seed_override;
    std::string format = "table";
    std::string out_path;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a scenario and emit its report");
    run_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    run_cmd->add_option("--seed", seed_override, "override the scenario seed");
    run_cmd->add_option("--format", format, "table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    run_cmd->add_option("--out", out_path, "write the report to a file");

    double q = 0.1;
    uint32_t z = 6;
    uint64_t trials = 0;
    uint64_t mc_seed = 42;
    CLI::App* finality_cmd =
        app.add_subcommand("finality", "catch-up probability for a hashpower fraction");
    finality_cmd->add_option("--q", q, "attacker hashpower fraction")->required();
    finality_cmd->add_option("--z", z, "confirmation count")->required();
    finality_cmd->add_option("--trials", trials, "verify with a Monte Carlo run");
    finality_cmd->add_option("--seed", mc_seed, "Monte Carlo seed");

    uint32_t bits = 256;
    uint32_t truncate = 0;
    std::string property;
    std::string model;
    CLI::App* strength_cmd =
        app.add_subcommand("strength", "security strength of the simulated primitives");
    strength_cmd->add_option("--bits", bits, "digest output bits");
    strength_cmd->add_option("--truncate", truncate, "digest truncation in bits");
    strength_cmd->add_option("--property", property,
                             "preimage|second-preimage|collision|key-recovery");
    strength_cmd->add_option("--model", model, "classical|grover|collision-bound");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "direct vs hierarchical pinning, side by side");
    compare_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    compare_cmd->add_option("--format", format, "table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    compare_cmd->add_option("--out", out_path, "write the comparison to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(scenario_path, seed_override, format, out_path);
        if (finality_cmd->parsed()) return cmd_finality(q, z, trials, mc_seed);
        if (strength_cmd->parsed()) return cmd_strength(bits, truncate, property, model);
        if (compare_cmd->parsed()) return cmd_compare(scenario_path, format, out_path);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return classify(err.code());
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return 2;
    }
    return 2;
}
