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

#include "chaincoord/bytes.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>

#include "chaincoord/errors.hpp"

namespace chaincoord {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

bool Hash256::is_zero() const {
    return std::all_of(v.begin(), v.end(), [](uint8_t b) { return b == 0; });
}

std::string Hash256::hex() const { return to_hex(BytesView(v.data(), v.size())); }

Hash256 Hash256::from_hex(std::string_view text) {
    if (text.size() != 64) fail(Errc::DecodeError, "hash hex must be 64 chars");
    Hash256 out;
    for (size_t i = 0; i < 32; ++i) {
        int hi = hex_nibble(text[2 * i]);
        int lo = hex_nibble(text[2 * i + 1]);
        if (hi < 0 || lo < 0) fail(Errc::DecodeError, "bad hex digit in hash");
        out.v[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return out;
}

std::string AccountId::hex() const { return to_hex(BytesView(v.data(), v.size())); }

Hash256 sha256(BytesView data) {
    Hash256 out;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.v.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.v.size()) {
        fail(Errc::InternalError, "EVP_Digest failed");
    }
    return out;
}

Hash256 hash_of_string(std::string_view tag) {
    return sha256(BytesView(reinterpret_cast<const uint8_t*>(tag.data()), tag.size()));
}

AccountId account_from_name(std::string_view name) {
    Hash256 h = hash_of_string(name);
    AccountId id;
    std::memcpy(id.v.data(), h.v.data(), id.v.size());
    return id;
}

std::string to_hex(BytesView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

std::string wei_to_string(Wei amount) {
    if (amount == 0) return "0";
    std::string out;
    while (amount > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(amount % 10)));
        amount /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

double wei_to_double(Wei amount) {
    const Wei high = amount >> 64;
    const Wei low = amount & 0xffffffffffffffffULL;
    return static_cast<double>(static_cast<uint64_t>(high)) * 18446744073709551616.0 +
           static_cast<double>(static_cast<uint64_t>(low));
}

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::UnknownBlock: return "UnknownBlock";
    case Errc::InvalidBlock: return "InvalidBlock";
    case Errc::NotCanonical: return "NotCanonical";
    case Errc::DomainError: return "DomainError";
    case Errc::GasOutOfRange: return "GasOutOfRange";
    case Errc::NotFound: return "NotFound";
    case Errc::NothingProposed: return "NothingProposed";
    case Errc::NoPinTarget: return "NoPinTarget";
    case Errc::UnknownPin: return "UnknownPin";
    case Errc::FinalPinNotFinal: return "FinalPinNotFinal";
    case Errc::PinMismatch: return "PinMismatch";
    case Errc::CorruptBlob: return "CorruptBlob";
    case Errc::NoPinFound: return "NoPinFound";
    case Errc::ChainArchived: return "ChainArchived";
    case Errc::NoActiveKeyset: return "NoActiveKeyset";
    case Errc::DuplicateTxId: return "DuplicateTxId";
    case Errc::UnsupportedCombination: return "UnsupportedCombination";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::MissingVariant: return "MissingVariant";
    case Errc::DecodeError: return "DecodeError";
    case Errc::InternalError: return "InternalError";
    }
    return "UnknownError";
}

} // namespace chaincoord
