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

namespace chaincoord {

struct GasSchedule {
    uint64_t block_gas_limit = 8'000'000;
    uint64_t intrinsic_tx_gas = 21'000;
    uint64_t pin_tx_gas = 64'972;
    uint64_t keyset_store_gas = 60'000; // surcharge for storing a 48-byte key set
    double block_time = 14.0;           // seconds between blocks
};

// Per 32-byte word written by a contract operation.
inline constexpr uint64_t kWordGas = 20'000;

// Year length used for recurring-cost projections (365 days of 24 hours).
inline constexpr double kSecondsPerCostYear = 8760.0 * 3600.0;

// Julian year, used for counter-exhaustion horizons.
inline constexpr double kSecondsPerJulianYear = 31'557'600.0;

struct PriceState {
    double gas_price = 1.0; // wei per gas
    double target_utilization = 0.5;
    double sensitivity = 0.05;
    double floor_price = 1.0;
};

// Sustained transactions per second when every transaction costs tx_gas.
// Whole transactions only: floor(block_gas_limit / tx_gas) per block.
// Throws GasOutOfRange unless intrinsic_tx_gas <= tx_gas <= block_gas_limit.
double block_throughput(uint64_t tx_gas, const GasSchedule& schedule);

// Multiplicative congestion response:
//   gas_price <- max(floor, gas_price * (1 + sensitivity * (utilization - target)))
PriceState update_price(const PriceState& state, double utilization);

// USD cost of `gas` at `gas_price_wei` wei/gas and `eth_usd` dollars per ether.
double fiat_cost(double gas, double gas_price_wei, double eth_usd);

// USD per year of posting one pin every pin_interval_s seconds.
double annual_pin_cost(const GasSchedule& schedule, double pin_interval_s, double gas_price_wei,
                       double eth_usd);

// Years until a monotonically increasing transaction counter of `nonce_bits`
// bits wraps at a sustained `tx_rate` transactions per second.
double nonce_wraparound_years(uint32_t nonce_bits, double tx_rate);

} // namespace chaincoord
