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

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chaincoord {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

// Balances and fee arithmetic. 64 bits overflows for wei-denominated spend over
// long simulated horizons, so everything monetary goes through 128 bits.
using Wei = unsigned __int128;

struct Hash256 {
    std::array<uint8_t, 32> v{};

    auto operator<=>(const Hash256&) const = default;
    bool is_zero() const;
    std::string hex() const;
    static Hash256 from_hex(std::string_view text);
};

struct AccountId {
    std::array<uint8_t, 20> v{};

    auto operator<=>(const AccountId&) const = default;
    std::string hex() const;
};

using PublicKey48 = std::array<uint8_t, 48>;

// Fixed 256-bit digest over canonical bytes (SHA-256 via OpenSSL). The chain
// format only assumes determinism and collision resistance at simulation scale.
Hash256 sha256(BytesView data);

// Deterministic ids for named scenario entities.
Hash256 hash_of_string(std::string_view tag);
AccountId account_from_name(std::string_view name);

std::string to_hex(BytesView data);
std::string wei_to_string(Wei amount);
double wei_to_double(Wei amount);

} // namespace chaincoord
