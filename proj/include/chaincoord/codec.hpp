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
#include <string>
#include <string_view>

#include "chaincoord/bytes.hpp"

namespace chaincoord {

// Canonical wire encoding shared by block hashing, state commitments and the
// archive format: big-endian fixed-width integers, u32 length prefixes, fields
// in declaration order. Two equal values always serialize to identical bytes.
class ByteWriter {
  public:
    void u8(uint8_t value);
    void u16(uint16_t value);
    void u32(uint32_t value);
    void u64(uint64_t value);
    void i64(int64_t value);
    void u128(Wei value);
    void raw(BytesView data);
    void hash(const Hash256& value);
    void account(const AccountId& value);
    void key48(const PublicKey48& value);
    void blob(BytesView data);
    void str(std::string_view text);

    const Bytes& bytes() const { return out_; }
    Bytes take() { return std::move(out_); }

  private:
    Bytes out_;
};

// Throws Error(Errc::DecodeError) on truncated or trailing input.
class ByteReader {
  public:
    explicit ByteReader(BytesView data) : in_(data) {}

    uint8_t u8();
    uint16_t u16();
    uint32_t u32();
    uint64_t u64();
    int64_t i64();
    Wei u128();
    Bytes raw(size_t count);
    Hash256 hash();
    AccountId account();
    PublicKey48 key48();
    Bytes blob();
    std::string str();

    size_t remaining() const { return in_.size() - pos_; }
    bool done() const { return pos_ == in_.size(); }
    void expect_done() const;

  private:
    const uint8_t* need(size_t count);

    BytesView in_;
    size_t pos_ = 0;
};

} // namespace chaincoord
