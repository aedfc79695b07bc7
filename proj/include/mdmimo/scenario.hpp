#pragma once

// Synthetic deployment: users dropped uniformly in a square area, antenna
// sites on a regular grid, PON homing, and the user-to-antenna path gains.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdmimo {

struct Point {
    double x_km = 0.0;
    double y_km = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Log-distance path loss, PL(d) = ref_loss_db + 10 * exponent * log10(d / 1 km),
/// with d clamped from below at min_distance_m.
struct PropagationConfig {
    double path_loss_exponent = 3.67;
    double ref_loss_db = 140.7;
    double min_distance_m = 35.0;

    void validate() const {
        if (!(path_loss_exponent > 2.0))
            throw std::invalid_argument("path_loss_exponent must be > 2");
        if (!(min_distance_m > 0.0))
            throw std::invalid_argument("min_distance_m must be > 0");
    }

    [[nodiscard]] double path_loss_db(double distance_km) const {
        const double d = std::max(distance_km, min_distance_m / 1000.0);
        return ref_loss_db + 10.0 * path_loss_exponent * std::log10(d);
    }

    [[nodiscard]] double gain(double distance_km) const {
        return std::pow(10.0, -path_loss_db(distance_km) / 10.0);
    }

    [[nodiscard]] double max_gain() const { return gain(0.0); }

    friend bool operator==(const PropagationConfig&, const PropagationConfig&) = default;
};

struct ScenarioConfig {
    double area_side_km = 1.0;
    std::size_t num_users = 20;
    std::size_t num_antennas = 64;
    double dwellings_per_km2 = 570.0;
    double habitants_per_km2 = 1350.0;
    std::size_t pon_split = 64;
    double density_scale = 1.0;
    std::uint64_t rng_seed = 42;
    PropagationConfig propagation{};
    double tx_power_dbm = 24.0;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

inline std::size_t scaled_count(double base, double scale) {
    return static_cast<std::size_t>(std::llround(base * scale));
}

inline std::size_t exact_isqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : 0;
}

// Positions are stored on a 1e-6 km lattice so the 6-decimal text dump is exact.
inline double quantize_km(double v) { return std::round(v * 1e6) / 1e6; }

// 53 high bits of one mt19937_64 draw -> [0, 1).
inline double unit_draw(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Population and infrastructure counts after density scaling.
struct ScaledCounts {
    std::size_t users = 0;
    std::size_t antennas = 0;
    std::size_t dwellings = 0;
    std::size_t habitants = 0;
};

inline ScaledCounts scaled_counts(const ScenarioConfig& cfg) {
    const double area = cfg.area_side_km * cfg.area_side_km;
    return {
        detail::scaled_count(static_cast<double>(cfg.num_users), cfg.density_scale),
        detail::scaled_count(static_cast<double>(cfg.num_antennas), cfg.density_scale),
        detail::scaled_count(cfg.dwellings_per_km2 * area, cfg.density_scale),
        detail::scaled_count(cfg.habitants_per_km2 * area, cfg.density_scale),
    };
}

inline void validate(const ScenarioConfig& cfg) {
    if (!(cfg.area_side_km > 0.0)) throw std::invalid_argument("area_side_km must be > 0");
    if (!(cfg.density_scale > 0.0)) throw std::invalid_argument("density_scale must be > 0");
    if (cfg.pon_split == 0) throw std::invalid_argument("pon_split must be >= 1");
    if (!(cfg.dwellings_per_km2 >= 0.0)) throw std::invalid_argument("dwellings_per_km2 must be >= 0");
    if (!(cfg.habitants_per_km2 >= 0.0)) throw std::invalid_argument("habitants_per_km2 must be >= 0");
    cfg.propagation.validate();
    const auto n = scaled_counts(cfg);
    if (n.users < 1) throw std::invalid_argument("num_users must be >= 1");
    if (n.users > n.antennas)
        throw std::invalid_argument("num_users (" + std::to_string(n.users) + ") exceeds num_antennas (" +
                                    std::to_string(n.antennas) + ")");
    if (detail::exact_isqrt(n.antennas) == 0)
        throw std::invalid_argument("num_antennas (" + std::to_string(n.antennas) +
                                    ") must be a perfect square for grid placement");
}

/// Immutable deployment. gain(k, j) is the linear power gain from antenna j to user k.
class Scenario {
public:
    Scenario(ScenarioConfig cfg, std::vector<Point> users, std::vector<Point> antennas, std::size_t dwellings,
             std::size_t num_pons)
        : cfg_(std::move(cfg)),
          users_(std::move(users)),
          antennas_(std::move(antennas)),
          dwellings_(dwellings),
          num_pons_(num_pons) {
        if (users_.empty() || users_.size() > antennas_.size())
            throw std::invalid_argument("scenario needs 1 <= users <= antennas");
        if (num_pons_ == 0) throw std::invalid_argument("scenario needs at least one PON");
        gains_.resize(users_.size() * antennas_.size());
        for (std::size_t k = 0; k < users_.size(); ++k)
            for (std::size_t j = 0; j < antennas_.size(); ++j)
                gains_[k * antennas_.size() + j] = cfg_.propagation.gain(distance_km(users_[k], antennas_[j]));
        homing_.resize(antennas_.size());
        for (std::size_t j = 0; j < antennas_.size(); ++j) homing_[j] = j % num_pons_;
        tx_power_mw_ = std::pow(10.0, cfg_.tx_power_dbm / 10.0);
        noise_mw_per_hz_ = std::pow(10.0, (cfg_.noise_density_dbm_hz + cfg_.noise_figure_db) / 10.0);
    }

    /// Scenario over an explicit K x M row-major gain matrix; positions are
    /// left at the origin. For hand-built fixtures.
    static Scenario with_gains(ScenarioConfig cfg, std::size_t users, std::size_t antennas, std::vector<double> gains,
                               std::size_t num_pons) {
        if (gains.size() != users * antennas) throw std::invalid_argument("gain matrix must be users x antennas");
        for (double g : gains)
            if (!std::isfinite(g) || !(g > 0.0)) throw std::invalid_argument("gains must be finite and > 0");
        Scenario s(std::move(cfg), std::vector<Point>(users), std::vector<Point>(antennas), 0, num_pons);
        s.gains_ = std::move(gains);
        return s;
    }

    static double distance_km(const Point& a, const Point& b) { return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km); }

    [[nodiscard]] const ScenarioConfig& config() const { return cfg_; }
    [[nodiscard]] std::size_t num_users() const { return users_.size(); }
    [[nodiscard]] std::size_t num_antennas() const { return antennas_.size(); }
    [[nodiscard]] std::size_t num_dwellings() const { return dwellings_; }
    [[nodiscard]] std::size_t num_pons() const { return num_pons_; }
    [[nodiscard]] std::span<const Point> users() const { return users_; }
    [[nodiscard]] std::span<const Point> antennas() const { return antennas_; }
    [[nodiscard]] std::span<const std::size_t> pon_homing() const { return homing_; }

    [[nodiscard]] double gain(std::size_t user, std::size_t antenna) const {
        return gains_[user * antennas_.size() + antenna];
    }
    [[nodiscard]] std::span<const double> gain_row(std::size_t user) const {
        return std::span<const double>(gains_).subspan(user * antennas_.size(), antennas_.size());
    }

    /// Per-symbol transmit power, mW.
    [[nodiscard]] double tx_power_mw() const { return tx_power_mw_; }
    /// Noise density including the receiver noise figure, mW/Hz.
    [[nodiscard]] double noise_mw_per_hz() const { return noise_mw_per_hz_; }

    /// Antennas homed on each PON.
    [[nodiscard]] std::vector<std::size_t> homed_counts() const {
        std::vector<std::size_t> counts(num_pons_, 0);
        for (auto p : homing_) ++counts[p];
        return counts;
    }

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.cfg_ == b.cfg_ && a.users_ == b.users_ && a.antennas_ == b.antennas_ &&
               a.dwellings_ == b.dwellings_ && a.num_pons_ == b.num_pons_ && a.gains_ == b.gains_;
    }

private:
    ScenarioConfig cfg_;
    std::vector<Point> users_;
    std::vector<Point> antennas_;
    std::size_t dwellings_;
    std::size_t num_pons_;
    std::vector<double> gains_;
    std::vector<std::size_t> homing_;
    double tx_power_mw_ = 0.0;
    double noise_mw_per_hz_ = 0.0;
};

/// Each dwelling and each antenna site occupies one splitter port.
inline std::size_t pon_count(std::size_t dwellings, std::size_t antennas, std::size_t split) {
    return (dwellings + antennas + split - 1) / split;
}

inline std::vector<Point> grid_antennas(std::size_t count, double side_km) {
    const std::size_t per_row = detail::exact_isqrt(count);
    if (per_row == 0) throw std::invalid_argument("antenna count must be a perfect square");
    const double spacing = side_km / static_cast<double>(per_row);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t row = 0; row < per_row; ++row)
        for (std::size_t col = 0; col < per_row; ++col)
            out.push_back({detail::quantize_km((static_cast<double>(col) + 0.5) * spacing),
                           detail::quantize_km((static_cast<double>(row) + 0.5) * spacing)});
    return out;
}

inline Scenario build_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    const auto n = scaled_counts(cfg);

    std::mt19937_64 gen(cfg.rng_seed);
    std::vector<Point> users;
    users.reserve(n.users);
    for (std::size_t k = 0; k < n.users; ++k) {
        const double x = detail::unit_draw(gen) * cfg.area_side_km;
        const double y = detail::unit_draw(gen) * cfg.area_side_km;
        users.push_back({detail::quantize_km(x), detail::quantize_km(y)});
    }

    return Scenario(cfg, std::move(users), grid_antennas(n.antennas, cfg.area_side_km), n.dwellings,
                    pon_count(n.dwellings, n.antennas, cfg.pon_split));
}

/// r_k(A) = P * sum_{j in A} G[k][j], in mW.
inline double received_power(const Scenario& s, std::size_t user, std::span<const std::size_t> antennas) {
    if (antennas.empty()) throw std::invalid_argument("received_power: empty antenna set");
    if (user >= s.num_users()) throw std::out_of_range("received_power: user index out of range");
    const auto row = s.gain_row(user);
    double total = 0.0;
    for (auto j : antennas) {
        if (j >= row.size()) throw std::out_of_range("received_power: antenna index out of range");
        total += row[j];
    }
    return s.tx_power_mw() * total;
}

}  // namespace mdmimo
