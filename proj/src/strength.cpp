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

#include "chaincoord/strength.hpp"

#include "chaincoord/errors.hpp"

namespace chaincoord {

namespace {

double digest_strength(const DigestSpec& spec, AttackProperty property, ComputeModel model) {
    if (spec.output_bits == 0 || spec.truncated_to_bits < 8 ||
        spec.truncated_to_bits > spec.output_bits)
        fail(Errc::DomainError, "truncation must lie in [8, output_bits]");
    const double b = static_cast<double>(spec.truncated_to_bits);
    switch (model) {
    case ComputeModel::Classical:
        switch (property) {
        case AttackProperty::Preimage:
        case AttackProperty::SecondPreimage: return b;
        case AttackProperty::Collision: return b / 2.0; // birthday bound
        case AttackProperty::KeyRecovery: break;
        }
        break;
    case ComputeModel::QuantumGrover:
        switch (property) {
        case AttackProperty::Preimage:
        case AttackProperty::SecondPreimage: return b / 2.0;
        default: break;
        }
        break;
    case ComputeModel::QuantumCollisionBound:
        if (property == AttackProperty::Collision) return b / 3.0;
        break;
    }
    fail(Errc::UnsupportedCombination, "no generic attack for this digest query");
}

double signature_strength(SignatureScheme scheme, AttackProperty property, ComputeModel model) {
    if (property != AttackProperty::KeyRecovery)
        fail(Errc::UnsupportedCombination, "signatures support only key recovery");
    switch (scheme) {
    case SignatureScheme::EcdsaSecp256k1:
        switch (model) {
        case ComputeModel::Classical: return 128.0;
        case ComputeModel::QuantumGrover: return 0.0; // Shor, not Grover, is what applies
        case ComputeModel::QuantumCollisionBound: break;
        }
        break;
    }
    fail(Errc::UnsupportedCombination, "no generic attack for this signature query");
}

} // namespace

double strength_bits(const StrengthQuery& query) {
    if (const auto* digest = std::get_if<DigestSpec>(&query.primitive))
        return digest_strength(*digest, query.property, query.model);
    return signature_strength(std::get<SignatureScheme>(query.primitive), query.property,
                              query.model);
}

PhaseoutVerdict phaseout_check(double bits) {
    if (bits < 0.0) fail(Errc::DomainError, "negative strength");
    if (bits < 112.0) return PhaseoutVerdict::Disallowed;
    if (bits < 128.0) return PhaseoutVerdict::PhaseOutBy2030;
    return PhaseoutVerdict::Acceptable;
}

const char* phaseout_name(PhaseoutVerdict verdict) {
    switch (verdict) {
    case PhaseoutVerdict::Acceptable: return "Acceptable";
    case PhaseoutVerdict::PhaseOutBy2030: return "PhaseOutBy2030";
    case PhaseoutVerdict::Disallowed: return "Disallowed";
    }
    return "Unknown";
}

} // namespace chaincoord
