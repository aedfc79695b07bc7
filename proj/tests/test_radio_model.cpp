#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "mdmimo/radio_model.hpp"
#include "mdmimo/scenario.hpp"

namespace mdmimo {
namespace {

// Frozen from tests/oracle/scenario_oracle.py over the seed-42 dump.
constexpr double kOracleSumRateW50M64 = 6698927619.507179;
const std::vector<std::size_t> kOracleTop20 = {0, 1, 2, 3, 6, 7, 13, 14, 20, 21, 26, 28, 29, 30, 32, 45, 53, 54, 56, 62};

Scenario default_scenario() { return build_scenario(ScenarioConfig{}); }

Scenario hand_set_2x3() {
    ScenarioConfig cfg;
    cfg.num_users = 2;
    cfg.num_antennas = 3;
    // Column sums 0.3, 0.1, 0.2.
    return Scenario::with_gains(cfg, 2, 3, {0.1, 0.05, 0.15, 0.2, 0.05, 0.05}, 1);
}

TEST(SelectAntennas, FullSet) {
    const auto s = default_scenario();
    std::vector<std::size_t> all(64);
    std::iota(all.begin(), all.end(), std::size_t{0});
    EXPECT_EQ(all, select_antennas(s, 64));
}

TEST(SelectAntennas, TopByColumnSum) {
    EXPECT_EQ((std::vector<std::size_t>{0, 2}), select_antennas(hand_set_2x3(), 2));
}

TEST(SelectAntennas, TiesGoToLowerIndex) {
    ScenarioConfig cfg;
    const auto s = Scenario::with_gains(cfg, 1, 4, {0.5, 0.7, 0.7, 0.7}, 1);
    EXPECT_EQ((std::vector<std::size_t>{1, 2}), select_antennas(s, 2));
}

TEST(SelectAntennas, MatchesOracleSort) { EXPECT_EQ(kOracleTop20, select_antennas(default_scenario(), 20)); }

TEST(SelectAntennas, Nested) {
    const auto s = default_scenario();
    const AntennaRanking rank(s);
    for (std::size_t m = 20; m < 64; ++m) {
        const auto small = rank.top(m), big = rank.top(m + 1);
        ASSERT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end())) << m;
    }
}

TEST(SelectAntennas, RangeChecked) {
    const auto s = default_scenario();
    EXPECT_THROW(select_antennas(s, 19), std::out_of_range);
    EXPECT_THROW(select_antennas(s, 65), std::out_of_range);
}

TEST(SumRate, UnitSnrGivesBandwidth) {
    const double noise = 4e-18;
    const double powers[] = {noise * 5e6};
    EXPECT_DOUBLE_EQ(5e6, sum_rate_from_powers(powers, noise, 5, NumeratorMode::Corrected));
    EXPECT_DOUBLE_EQ(1.0, sum_rate_from_powers(powers, noise, 5, NumeratorMode::Literal));
}

TEST(SumRate, VanishingPowerGivesZero) {
    const double powers[] = {0.0, 0.0, 1e-300};
    EXPECT_NEAR(0.0, sum_rate_from_powers(powers, 1e-17, 50, NumeratorMode::Corrected), 1e-200);
}

TEST(SumRate, MatchesDumpOracle) {
    const auto s = default_scenario();
    const Allocation a{50, 64, select_antennas(s, 64)};
    EXPECT_NEAR(kOracleSumRateW50M64, sum_rate(s, a), 1e-12 * kOracleSumRateW50M64);
}

TEST(SumRate, MonotoneInAntennaCount) {
    const auto s = default_scenario();
    const AntennaRanking rank(s);
    for (auto mode : {NumeratorMode::Corrected, NumeratorMode::Literal}) {
        for (int w : {5, 25, 50}) {
            double prev = -1.0;
            for (std::size_t m = 20; m <= 64; ++m) {
                const double r = sum_rate(s, make_allocation(rank, w, m), mode);
                ASSERT_GE(r, prev);
                prev = r;
            }
        }
    }
}

TEST(SumRate, BandwidthTrendDependsOnMode) {
    const auto s = default_scenario();
    const AntennaRanking rank(s);
    for (std::size_t m : {20u, 40u, 64u}) {
        double prev_c = 0.0, prev_l = 1e300;
        for (int w = 5; w <= 50; w += 5) {
            const auto a = make_allocation(rank, w, m);
            const double c = sum_rate(s, a, NumeratorMode::Corrected);
            const double l = sum_rate(s, a, NumeratorMode::Literal);
            ASSERT_GT(c, prev_c);
            ASSERT_LT(l, prev_l);
            prev_c = c;
            prev_l = l;
        }
    }
}

TEST(SumRate, DoublingPowerAddsThreeDecibels) {
    ScenarioConfig cfg;
    const auto s1 = build_scenario(cfg);
    cfg.tx_power_dbm += 10.0 * std::log10(2.0);
    const auto s2 = build_scenario(cfg);
    EXPECT_NEAR(2.0, s2.tx_power_mw() / s1.tx_power_mw(), 1e-14);
    const auto set = select_antennas(s1, 30);
    for (std::size_t k = 0; k < s1.num_users(); ++k) {
        const double gain_db = 10.0 * std::log10(received_power(s2, k, set) / received_power(s1, k, set));
        EXPECT_NEAR(3.0103, gain_db, 5e-5);
    }
}

TEST(SumRate, RejectsBadAllocations) {
    const auto s = default_scenario();
    EXPECT_THROW(sum_rate(s, {7, 20, select_antennas(s, 20)}), std::invalid_argument);
    EXPECT_THROW(sum_rate(s, {0, 20, select_antennas(s, 20)}), std::invalid_argument);
    EXPECT_THROW(sum_rate(s, {5, 21, select_antennas(s, 20)}), std::invalid_argument);
}

TEST(NumeratorMode, Parse) {
    EXPECT_EQ(NumeratorMode::Literal, parse_numerator_mode("literal"));
    EXPECT_EQ(NumeratorMode::Corrected, parse_numerator_mode("corrected"));
    EXPECT_THROW(parse_numerator_mode("shannon"), std::invalid_argument);
}

}  // namespace
}  // namespace mdmimo
