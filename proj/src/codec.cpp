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

#include "chaincoord/codec.hpp"

#include <cstring>
#include <limits>

#include "chaincoord/errors.hpp"

namespace chaincoord {

void ByteWriter::u8(uint8_t value) { out_.push_back(value); }

void ByteWriter::u16(uint16_t value) {
    out_.push_back(static_cast<uint8_t>(value >> 8));
    out_.push_back(static_cast<uint8_t>(value));
}

void ByteWriter::u32(uint32_t value) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out_.push_back(static_cast<uint8_t>(value >> shift));
}

void ByteWriter::u64(uint64_t value) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out_.push_back(static_cast<uint8_t>(value >> shift));
}

void ByteWriter::i64(int64_t value) { u64(static_cast<uint64_t>(value)); }

void ByteWriter::u128(Wei value) {
    u64(static_cast<uint64_t>(value >> 64));
    u64(static_cast<uint64_t>(value));
}

void ByteWriter::raw(BytesView data) { out_.insert(out_.end(), data.begin(), data.end()); }

void ByteWriter::hash(const Hash256& value) { raw(BytesView(value.v.data(), value.v.size())); }

void ByteWriter::account(const AccountId& value) { raw(BytesView(value.v.data(), value.v.size())); }

void ByteWriter::key48(const PublicKey48& value) { raw(BytesView(value.data(), value.size())); }

void ByteWriter::blob(BytesView data) {
    if (data.size() > std::numeric_limits<uint32_t>::max())
        fail(Errc::InternalError, "blob too large");
    u32(static_cast<uint32_t>(data.size()));
    raw(data);
}

void ByteWriter::str(std::string_view text) {
    blob(BytesView(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

const uint8_t* ByteReader::need(size_t count) {
    if (pos_ + count > in_.size()) fail(Errc::DecodeError, "input truncated");
    const uint8_t* at = in_.data() + pos_;
    pos_ += count;
    return at;
}

uint8_t ByteReader::u8() { return *need(1); }

uint16_t ByteReader::u16() {
    const uint8_t* at = need(2);
    return static_cast<uint16_t>(at[0] << 8 | at[1]);
}

uint32_t ByteReader::u32() {
    const uint8_t* at = need(4);
    uint32_t value = 0;
    for (int i = 0; i < 4; ++i) value = value << 8 | at[i];
    return value;
}

uint64_t ByteReader::u64() {
    const uint8_t* at = need(8);
    uint64_t value = 0;
    for (int i = 0; i < 8; ++i) value = value << 8 | at[i];
    return value;
}

int64_t ByteReader::i64() { return static_cast<int64_t>(u64()); }

Wei ByteReader::u128() {
    Wei high = u64();
    return high << 64 | u64();
}

Bytes ByteReader::raw(size_t count) {
    const uint8_t* at = need(count);
    return Bytes(at, at + count);
}

Hash256 ByteReader::hash() {
    Hash256 out;
    std::memcpy(out.v.data(), need(out.v.size()), out.v.size());
    return out;
}

AccountId ByteReader::account() {
    AccountId out;
    std::memcpy(out.v.data(), need(out.v.size()), out.v.size());
    return out;
}

PublicKey48 ByteReader::key48() {
    PublicKey48 out;
    std::memcpy(out.data(), need(out.size()), out.size());
    return out;
}

Bytes ByteReader::blob() {
    uint32_t len = u32();
    return raw(len);
}

std::string ByteReader::str() {
    Bytes data = blob();
    return std::string(data.begin(), data.end());
}

void ByteReader::expect_done() const {
    if (!done()) fail(Errc::DecodeError, "trailing bytes after value");
}

} // namespace chaincoord
