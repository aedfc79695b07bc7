#include <cmath>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "mdmimo/scenario.hpp"
#include "mdmimo/scenario_io.hpp"

namespace mdmimo {
namespace {

// Frozen from tests/oracle/scenario_oracle.py over the seed-42 dump.
constexpr double kOracleReceivedPowerUser0All = 7.911014824591388e-08;

TEST(Scenario, DefaultCounts) {
    const auto s = build_scenario(ScenarioConfig{});
    EXPECT_EQ(20u, s.num_users());
    EXPECT_EQ(64u, s.num_antennas());
    EXPECT_EQ(570u, s.num_dwellings());
    // ceil((570 + 64) / 64)
    EXPECT_EQ(10u, s.num_pons());
}

TEST(Scenario, DensityScaleFour) {
    ScenarioConfig cfg;
    cfg.density_scale = 4.0;
    const auto s = build_scenario(cfg);
    EXPECT_EQ(80u, s.num_users());
    EXPECT_EQ(256u, s.num_antennas());
    EXPECT_EQ(2280u, s.num_dwellings());
    EXPECT_EQ(40u, s.num_pons());
    EXPECT_EQ(5400u, scaled_counts(cfg).habitants);
}

TEST(Scenario, SingleUserOnTopOfAntenna) {
    ScenarioConfig cfg;
    cfg.num_users = 1;
    cfg.num_antennas = 1;
    const Point site{0.5, 0.5};
    const Scenario s(cfg, {site}, {site}, 0, 1);
    const double pl35 = 140.7 + 36.7 * std::log10(0.035);
    EXPECT_DOUBLE_EQ(std::pow(10.0, -pl35 / 10.0), s.gain(0, 0));
}

TEST(Scenario, RejectsMoreUsersThanAntennas) {
    ScenarioConfig cfg;
    cfg.num_users = 65;
    EXPECT_THROW(build_scenario(cfg), std::invalid_argument);
}

TEST(Scenario, RejectsNonSquareAntennaCount) {
    ScenarioConfig cfg;
    cfg.num_antennas = 60;
    EXPECT_THROW(build_scenario(cfg), std::invalid_argument);
}

TEST(Scenario, RejectsBadPropagation) {
    ScenarioConfig cfg;
    cfg.propagation.path_loss_exponent = 2.0;
    EXPECT_THROW(build_scenario(cfg), std::invalid_argument);
    cfg = {};
    cfg.propagation.min_distance_m = 0.0;
    EXPECT_THROW(build_scenario(cfg), std::invalid_argument);
}

TEST(Scenario, AntennaGridIsCentered) {
    const auto s = build_scenario(ScenarioConfig{});
    const auto a = s.antennas();
    EXPECT_EQ((Point{0.0625, 0.0625}), a[0]);
    EXPECT_EQ((Point{0.1875, 0.0625}), a[1]);
    EXPECT_EQ((Point{0.9375, 0.9375}), a[63]);
}

TEST(Scenario, DeterministicForSeed) {
    ScenarioConfig cfg;
    cfg.rng_seed = 1234;
    EXPECT_EQ(build_scenario(cfg), build_scenario(cfg));
    auto other = cfg;
    other.rng_seed = 1235;
    EXPECT_NE(build_scenario(cfg).users()[0], build_scenario(other).users()[0]);
}

TEST(Scenario, PropertiesAcrossSeeds) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ScenarioConfig cfg;
        cfg.rng_seed = seed;
        cfg.density_scale = seed % 2 ? 1.0 : 4.0;
        const auto s = build_scenario(cfg);
        const double bound = cfg.propagation.max_gain();
        for (std::size_t k = 0; k < s.num_users(); ++k) {
            const auto u = s.users()[k];
            ASSERT_GE(u.x_km, 0.0);
            ASSERT_LE(u.x_km, 1.0);
            ASSERT_GE(u.y_km, 0.0);
            ASSERT_LE(u.y_km, 1.0);
            for (std::size_t j = 0; j < s.num_antennas(); ++j) {
                const double g = s.gain(k, j);
                ASSERT_TRUE(std::isfinite(g));
                ASSERT_GT(g, 0.0);
                ASSERT_LE(g, bound);
            }
        }
        const auto homed = s.homed_counts();
        const auto [lo, hi] = std::minmax_element(homed.begin(), homed.end());
        ASSERT_LE(*hi - *lo, 1u) << "seed " << seed;
    }
}

TEST(ReceivedPower, SingleAntenna) {
    const auto s = build_scenario(ScenarioConfig{});
    const std::size_t one[] = {5};
    EXPECT_DOUBLE_EQ(s.tx_power_mw() * s.gain(3, 5), received_power(s, 3, one));
}

TEST(ReceivedPower, AdditiveOverDisjointSets) {
    const auto s = build_scenario(ScenarioConfig{});
    const std::vector<std::size_t> a1{0, 3, 9}, a2{10, 40, 63}, both{0, 3, 9, 10, 40, 63};
    for (std::size_t k = 0; k < s.num_users(); ++k)
        EXPECT_NEAR(received_power(s, k, a1) + received_power(s, k, a2), received_power(s, k, both),
                    1e-14 * received_power(s, k, both));
}

TEST(ReceivedPower, GrowsWithEveryAddedAntenna) {
    const auto s = build_scenario(ScenarioConfig{});
    std::vector<std::size_t> set;
    for (std::size_t j = 0; j < s.num_antennas(); ++j) {
        set.push_back((j * 37) % 64);
        if (set.size() < 2) continue;
        std::vector<std::size_t> smaller(set.begin(), set.end() - 1);
        for (std::size_t k = 0; k < s.num_users(); ++k)
            ASSERT_GT(received_power(s, k, set), received_power(s, k, smaller));
    }
}

TEST(ReceivedPower, Errors) {
    const auto s = build_scenario(ScenarioConfig{});
    EXPECT_THROW(received_power(s, 0, {}), std::invalid_argument);
    const std::size_t bad[] = {64};
    EXPECT_THROW(received_power(s, 0, bad), std::out_of_range);
    const std::size_t ok[] = {0};
    EXPECT_THROW(received_power(s, 20, ok), std::out_of_range);
}

TEST(ReceivedPower, MatchesDumpOracle) {
    const auto s = build_scenario(ScenarioConfig{});
    std::vector<std::size_t> all(64);
    for (std::size_t j = 0; j < 64; ++j) all[j] = j;
    EXPECT_NEAR(kOracleReceivedPowerUser0All, received_power(s, 0, all), 1e-12 * kOracleReceivedPowerUser0All);
}

TEST(ScenarioDump, RoundTripsExactly) {
    for (std::uint64_t seed : {0ull, 42ull, 99ull, 0xdeadbeefull}) {
        ScenarioConfig cfg;
        cfg.rng_seed = seed;
        cfg.tx_power_dbm = 21.5;
        const auto s = build_scenario(cfg);
        EXPECT_EQ(s, load_scenario(dump_scenario(s))) << "seed " << seed;
    }
}

TEST(ScenarioDump, PositionsHaveSixDecimals) {
    const auto text = dump_scenario(build_scenario(ScenarioConfig{}));
    EXPECT_NE(std::string::npos, text.find("[0.062500, 0.062500]"));
    EXPECT_NE(std::string::npos, text.find("\"num_pons\":10"));
    EXPECT_NE(std::string::npos, text.find("\"seed\": 42"));
}

TEST(ScenarioDump, RejectsForeignFiles) {
    EXPECT_THROW(load_scenario("{}"), std::runtime_error);
    EXPECT_THROW(load_scenario("not json"), std::runtime_error);
    EXPECT_THROW(load_scenario(R"({"format": "other", "version": 1})"), std::runtime_error);
}

}  // namespace
}  // namespace mdmimo
