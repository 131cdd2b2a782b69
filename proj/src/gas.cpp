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

#include "chaincoord/gas.hpp"

#include <algorithm>
#include <cmath>

#include "chaincoord/errors.hpp"

namespace chaincoord {

double block_throughput(uint64_t tx_gas, const GasSchedule& schedule) {
    if (tx_gas < schedule.intrinsic_tx_gas || tx_gas > schedule.block_gas_limit)
        fail(Errc::GasOutOfRange, "tx_gas outside [intrinsic, block limit]");
    if (schedule.block_time <= 0.0) fail(Errc::DomainError, "block_time must be positive");
    const uint64_t per_block = schedule.block_gas_limit / tx_gas;
    return static_cast<double>(per_block) / schedule.block_time;
}

PriceState update_price(const PriceState& state, double utilization) {
    if (utilization < 0.0 || utilization > 1.0)
        fail(Errc::DomainError, "utilization outside [0, 1]");
    PriceState next = state;
    const double factor = 1.0 + state.sensitivity * (utilization - state.target_utilization);
    next.gas_price = std::max(state.floor_price, state.gas_price * factor);
    return next;
}

double fiat_cost(double gas, double gas_price_wei, double eth_usd) {
    if (gas < 0.0 || gas_price_wei < 0.0 || eth_usd < 0.0)
        fail(Errc::DomainError, "negative cost input");
    return gas * gas_price_wei * eth_usd / 1e18;
}

double annual_pin_cost(const GasSchedule& schedule, double pin_interval_s, double gas_price_wei,
                       double eth_usd) {
    if (pin_interval_s <= 0.0) fail(Errc::DomainError, "pin interval must be positive");
    const double pins_per_year = kSecondsPerCostYear / pin_interval_s;
    return pins_per_year * fiat_cost(static_cast<double>(schedule.pin_tx_gas), gas_price_wei, eth_usd);
}

double nonce_wraparound_years(uint32_t nonce_bits, double tx_rate) {
    if (nonce_bits == 0 || nonce_bits > 128) fail(Errc::DomainError, "nonce_bits outside (0, 128]");
    if (tx_rate <= 0.0) fail(Errc::DomainError, "tx_rate must be positive");
    return std::exp2(static_cast<double>(nonce_bits)) / (tx_rate * kSecondsPerJulianYear);
}

} // namespace chaincoord
