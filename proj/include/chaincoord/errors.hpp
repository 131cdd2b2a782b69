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

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaincoord {

enum class Errc {
    // chain topology
    UnknownParent,
    UnknownBlock,
    InvalidBlock,
    NotCanonical,
    // numeric domains
    DomainError,
    GasOutOfRange,
    // contract views
    NotFound,
    NothingProposed,
    // sidechain lifecycle
    NoPinTarget,
    UnknownPin,
    FinalPinNotFinal,
    PinMismatch,
    CorruptBlob,
    NoPinFound,
    ChainArchived,
    // crosschain
    NoActiveKeyset,
    DuplicateTxId,
    // strength queries
    UnsupportedCombination,
    // scenario loading
    ParseError,
    ValidationError,
    MissingVariant,
    // serialization
    DecodeError,
    // broken internal invariant; callers should treat as a bug
    InternalError,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace chaincoord
