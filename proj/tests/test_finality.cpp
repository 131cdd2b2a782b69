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

#include <doctest.h>

#include <cmath>

#include "chaincoord/chain.hpp"
#include "chaincoord/errors.hpp"
#include "chaincoord/finality.hpp"

using namespace chaincoord;

namespace {

ChainView probabilistic_fixture(int blocks) {
    ChainView chain =
        ChainView::genesis(FinalityMode::Probabilistic, std::make_shared<WorldState>(), 0);
    const AccountId miner = account_from_name("fixture/miner");
    GasSchedule schedule;
    Mempool pool;
    for (int i = 0; i < blocks; ++i) {
        BlockRecord record =
            mint_block(chain, miner, pool, schedule.block_gas_limit, (i + 1) * 14, schedule);
        const Hash256 hash = record.header.hash;
        chain.insert_block(std::move(record));
        chain.fork_choice(hash);
    }
    return chain;
}

} // namespace

TEST_SUITE("finality") {

TEST_CASE("catch-up probabilities match the published race table") {
    CHECK_EQ(catchup_probability(0.1, 1), doctest::Approx(0.2045873).epsilon(1e-6));
    CHECK_EQ(catchup_probability(0.1, 2), doctest::Approx(0.0509779).epsilon(1e-6));
    CHECK_EQ(catchup_probability(0.1, 3), doctest::Approx(0.0131722).epsilon(1e-6));
    CHECK_EQ(catchup_probability(0.1, 4), doctest::Approx(0.0034552).epsilon(1e-5));
    CHECK_EQ(catchup_probability(0.1, 5), doctest::Approx(0.0009137).epsilon(1e-4));
    CHECK_EQ(catchup_probability(0.1, 6), doctest::Approx(0.0002428).epsilon(1e-4));
    CHECK_EQ(catchup_probability(0.3, 5), doctest::Approx(0.1773523).epsilon(1e-6));
    CHECK_EQ(catchup_probability(0.3, 10), doctest::Approx(0.0416605).epsilon(1e-5));
}

TEST_CASE("boundaries: zero depth is certain, zero hashpower is safe") {
    CHECK_EQ(catchup_probability(0.1, 0), 1.0);
    CHECK_EQ(catchup_probability(0.45, 0), 1.0);
    for (uint32_t z = 1; z <= 12; ++z) CHECK_EQ(catchup_probability(0.0, z), 0.0);
}

TEST_CASE("majority hashpower always catches up") {
    CHECK_EQ(catchup_probability(0.5, 6), 1.0);
    CHECK_EQ(catchup_probability(0.7, 30), 1.0);
    CHECK_EQ(catchup_probability(0.999, 1), 1.0);
}

TEST_CASE("domain errors outside [0, 1)") {
    CHECK_THROWS_AS(catchup_probability(-0.01, 6), Error);
    CHECK_THROWS_AS(catchup_probability(1.0, 6), Error);
    CHECK_THROWS_AS(catchup_probability(1.5, 6), Error);
    try {
        catchup_probability(-1.0, 1);
    } catch (const Error& err) {
        CHECK_EQ(err.code(), Errc::DomainError);
    }
}

TEST_CASE("probability is non-increasing in z and non-decreasing in q") {
    for (double q : {0.05, 0.1, 0.2, 0.3, 0.45}) {
        double previous = 1.0;
        for (uint32_t z = 0; z <= 20; ++z) {
            const double p = catchup_probability(q, z);
            CHECK(p <= previous + 1e-15);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            previous = p;
        }
    }
    for (uint32_t z : {1u, 4u, 8u}) {
        double previous = 0.0;
        for (double q = 0.0; q < 0.5; q += 0.02) {
            const double p = catchup_probability(q, z);
            CHECK(p >= previous - 1e-15);
            previous = p;
        }
    }
}

TEST_CASE("required confirmations reproduce the sub-0.1% depths") {
    CHECK_EQ(required_confirmations(0.1, 0.001), 5);
    CHECK_EQ(required_confirmations(0.3, 0.001), 24);
    CHECK_EQ(required_confirmations(0.45, 0.001), 340);
    // The returned depth clears the target and the one above it does not.
    CHECK(catchup_probability(0.3, 24) <= 0.001);
    CHECK(catchup_probability(0.3, 23) > 0.001);
    CHECK_THROWS_AS(required_confirmations(0.5, 0.001), Error);
    CHECK_THROWS_AS(required_confirmations(0.1, 0.0), Error);
    CHECK_THROWS_AS(required_confirmations(0.1, 1.0), Error);
}

TEST_CASE("policy wait times") {
    CHECK_EQ(finality_time(kDefaultPolicy), 168.0);
    CHECK_EQ(finality_time(kDeepConfirmationPolicy), doctest::Approx(518.0));
    CHECK_EQ(finality_time(FinalityPolicy{6, 600.0}), 3600.0);
    CHECK_EQ(kDefaultPolicy.confirmations, 12);
    CHECK_EQ(kDeepConfirmationPolicy.confirmations, 37);
}

TEST_CASE("monte carlo is frozen for a given seed") {
    const MonteCarloResult result = monte_carlo_reversion(0.1, 3, 20000, 7);
    CHECK_EQ(result.trials, 20000);
    CHECK_EQ(result.successes, 279);
    CHECK_EQ(result.probability, doctest::Approx(0.01395).epsilon(1e-12));
    const double se = std::sqrt(result.probability * (1.0 - result.probability) / 20000.0);
    CHECK_EQ(result.standard_error, doctest::Approx(se).epsilon(1e-9));

    const MonteCarloResult again = monte_carlo_reversion(0.1, 3, 20000, 7);
    CHECK_EQ(again.successes, result.successes);
    CHECK(monte_carlo_reversion(0.1, 3, 20000, 8).successes != result.successes);
}

TEST_CASE("partitioned trials merge identically above the async threshold") {
    // 300k trials cross the parallel cutoff; the partition merge order keeps
    // the result equal to any rerun of the same seed.
    const MonteCarloResult a = monte_carlo_reversion(0.2, 4, 300000, 11);
    const MonteCarloResult b = monte_carlo_reversion(0.2, 4, 300000, 11);
    CHECK_EQ(a.successes, 15733);
    CHECK_EQ(a.successes, b.successes);
    CHECK_EQ(a.probability, b.probability);
}

TEST_CASE("monte carlo brackets the analytic value") {
    for (double q : {0.1, 0.2, 0.3}) {
        for (uint32_t z = 1; z <= 8; ++z) {
            const MonteCarloResult mc = monte_carlo_reversion(q, z, 40000, 1234 + z);
            const double analytic = catchup_probability(q, z);
            const double slack = 3.0 * std::max(mc.standard_error, 1e-4);
            CHECK(std::fabs(mc.probability - analytic) <= slack);
        }
    }
}

TEST_CASE("monte carlo extremes") {
    CHECK_EQ(monte_carlo_reversion(0.0, 6, 5000, 1).successes, 0);
    CHECK_EQ(monte_carlo_reversion(0.6, 4, 2000, 1).probability, 1.0);
}

TEST_CASE("is_final honours the confirmation threshold") {
    ChainView chain = probabilistic_fixture(13);
    const Hash256 first = chain.canonical_at(1);
    CHECK_EQ(chain.confirmations(first), 12);
    CHECK(is_final(chain, first, kDefaultPolicy, FinalityMode::Probabilistic));

    const Hash256 second = chain.canonical_at(2);
    CHECK_EQ(chain.confirmations(second), 11);
    CHECK_FALSE(is_final(chain, second, kDefaultPolicy, FinalityMode::Probabilistic));
    CHECK(is_final(chain, second, FinalityPolicy{11, 14.0}, FinalityMode::Probabilistic));
}

TEST_CASE("is_final rejects side-branch blocks") {
    ChainView chain = probabilistic_fixture(4);
    const BlockRecord& parent = chain.record(chain.canonical_at(2));
    BlockRecord side = extend_empty_block(parent, account_from_name("rival"), 0, 100);
    const Hash256 side_hash = side.header.hash;
    chain.insert_block(std::move(side));
    CHECK_THROWS_AS(is_final(chain, side_hash, kDefaultPolicy, FinalityMode::Probabilistic),
                    Error);
}

TEST_CASE("instant mode is final on arrival") {
    ChainView chain = ChainView::genesis(FinalityMode::Instant, std::make_shared<WorldState>(), 0);
    const AccountId sealer = account_from_name("sealer");
    GasSchedule schedule;
    BlockRecord record = build_block(chain, chain.head(), sealer, {}, 0, 1, schedule);
    const Hash256 hash = record.header.hash;
    chain.append_final(std::move(record));
    CHECK(is_final(chain, hash, kDefaultPolicy, FinalityMode::Instant));
    CHECK_EQ(chain.finalized_marker().value(), 1);
}

} // TEST_SUITE("finality")
