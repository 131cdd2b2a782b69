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

#include <cstdint>
#include <variant>

namespace chaincoord {

// Generic-attack work factors only; algorithm-specific cryptanalysis is out of
// scope. For a digest truncated to b bits:
//
//   property          classical   quantum search   quantum collision bound
//   preimage            b           b/2 (Grover)      unsupported
//   second preimage     b           b/2 (Grover)      unsupported
//   collision           b/2         unsupported       b/3
//
// Signature key recovery is a table lookup: ECDSA over secp256k1 gives 128
// bits classically and 0 bits against a quantum adversary (Shor); broken
// schemes report 0 rather than erroring so tables render uniformly.

enum class AttackProperty : uint8_t { Preimage, SecondPreimage, Collision, KeyRecovery };

enum class ComputeModel : uint8_t { Classical, QuantumGrover, QuantumCollisionBound };

enum class SignatureScheme : uint8_t { EcdsaSecp256k1 };

struct DigestSpec {
    uint32_t output_bits = 256;
    uint32_t truncated_to_bits = 256; // must be in [8, output_bits]
};

struct StrengthQuery {
    std::variant<DigestSpec, SignatureScheme> primitive;
    AttackProperty property = AttackProperty::Preimage;
    ComputeModel model = ComputeModel::Classical;
};

// Effective bits of security. Throws UnsupportedCombination for pairings with
// no defined generic attack and DomainError for malformed digest sizes.
double strength_bits(const StrengthQuery& query);

enum class PhaseoutVerdict : uint8_t { Acceptable, PhaseOutBy2030, Disallowed };

// Against the standard migration policy: below 112 bits is already disallowed,
// [112, 128) must be retired by 2030, 128 and up is acceptable.
PhaseoutVerdict phaseout_check(double bits);

const char* phaseout_name(PhaseoutVerdict verdict);

} // namespace chaincoord
