#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mdmimo/scenario.hpp"

namespace mdmimo {

/// Spectrum is leased in 5 MHz slots.
inline constexpr int kSlotMHz = 5;

enum class NumeratorMode {
    Corrected,  // w * sum_k log2(1 + SNR_k), bit/s
    Literal,    // sum_k log2(1 + SNR_k), dimensionless
};

inline std::string_view to_string(NumeratorMode m) {
    return m == NumeratorMode::Corrected ? "corrected" : "literal";
}

inline NumeratorMode parse_numerator_mode(std::string_view s) {
    if (s == "corrected") return NumeratorMode::Corrected;
    if (s == "literal") return NumeratorMode::Literal;
    throw std::invalid_argument("unknown numerator mode '" + std::string(s) + "' (expected corrected|literal)");
}

struct Allocation {
    int bandwidth_mhz = kSlotMHz;
    std::size_t num_antennas = 0;
    std::vector<std::size_t> antenna_set;  // ascending, size == num_antennas

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Antennas ordered by descending aggregate gain sum_k G[k][j], ties to the
/// lower index. Prefixes of this order are the nested top-m selections.
class AntennaRanking {
public:
    explicit AntennaRanking(const Scenario& s) : order_(s.num_antennas()), column_sums_(s.num_antennas(), 0.0) {
        for (std::size_t k = 0; k < s.num_users(); ++k) {
            const auto row = s.gain_row(k);
            for (std::size_t j = 0; j < row.size(); ++j) column_sums_[j] += row[j];
        }
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [this](std::size_t a, std::size_t b) { return column_sums_[a] > column_sums_[b]; });
        min_ = s.num_users();
    }

    [[nodiscard]] std::span<const std::size_t> order() const { return order_; }
    [[nodiscard]] std::span<const double> column_sums() const { return column_sums_; }

    [[nodiscard]] std::vector<std::size_t> top(std::size_t m) const {
        if (m < min_ || m > order_.size())
            throw std::out_of_range("select_antennas: m=" + std::to_string(m) + " outside [" +
                                    std::to_string(min_) + ", " + std::to_string(order_.size()) + "]");
        std::vector<std::size_t> out(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(m));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::size_t> order_;
    std::vector<double> column_sums_;
    std::size_t min_ = 0;
};

inline std::vector<std::size_t> select_antennas(const Scenario& s, std::size_t m) {
    return AntennaRanking(s).top(m);
}

inline void check_allocation(const Scenario& s, const Allocation& a, int max_bandwidth_mhz = 0) {
    if (a.bandwidth_mhz < kSlotMHz || a.bandwidth_mhz % kSlotMHz != 0)
        throw std::invalid_argument("bandwidth must be a positive multiple of 5 MHz");
    if (max_bandwidth_mhz > 0 && a.bandwidth_mhz > max_bandwidth_mhz)
        throw std::invalid_argument("bandwidth exceeds the available spectrum");
    if (a.num_antennas < s.num_users() || a.num_antennas > s.num_antennas())
        throw std::out_of_range("antenna count outside [K, M]");
    if (a.antenna_set.size() != a.num_antennas)
        throw std::invalid_argument("antenna set size does not match antenna count");
}

/// Per-user received powers for one antenna set.
inline std::vector<double> received_powers(const Scenario& s, std::span<const std::size_t> antennas) {
    std::vector<double> r(s.num_users());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = received_power(s, k, antennas);
    return r;
}

/// Sum rate from precomputed received powers (mW) at bandwidth w.
inline double sum_rate_from_powers(std::span<const double> powers, double noise_mw_per_hz, int bandwidth_mhz,
                                   NumeratorMode mode) {
    const double w_hz = static_cast<double>(bandwidth_mhz) * 1e6;
    const double noise_mw = noise_mw_per_hz * w_hz;
    double bits = 0.0;
    for (double r : powers) bits += std::log2(1.0 + r / noise_mw);
    return mode == NumeratorMode::Corrected ? w_hz * bits : bits;
}

inline double sum_rate(const Scenario& s, const Allocation& a, NumeratorMode mode = NumeratorMode::Corrected) {
    check_allocation(s, a);
    return sum_rate_from_powers(received_powers(s, a.antenna_set), s.noise_mw_per_hz(), a.bandwidth_mhz, mode);
}

/// Allocation using the nested top-m antenna selection.
inline Allocation make_allocation(const AntennaRanking& ranking, int bandwidth_mhz, std::size_t m) {
    return {bandwidth_mhz, m, ranking.top(m)};
}

}  // namespace mdmimo
