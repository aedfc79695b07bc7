#pragma once

// PON wavelength accounting for the overlay model (each antenna site owns its
// wavelengths) and the shared model (antennas on one PON are time-multiplexed
// inside common wavelengths).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mdmimo/radio_model.hpp"
#include "mdmimo/scenario.hpp"

namespace mdmimo {

enum class TransportVariant { FronthaulOverlay, FronthaulShared, SplitPhyShared };

inline constexpr std::array kAllVariants = {TransportVariant::FronthaulOverlay, TransportVariant::FronthaulShared,
                                            TransportVariant::SplitPhyShared};

inline std::string_view to_string(TransportVariant v) {
    switch (v) {
        case TransportVariant::FronthaulOverlay: return "fronthaul-overlay";
        case TransportVariant::FronthaulShared: return "fronthaul-shared";
        case TransportVariant::SplitPhyShared: return "splitphy-shared";
    }
    return "?";
}

inline TransportVariant parse_variant(std::string_view s) {
    for (auto v : kAllVariants)
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown transport model '" + std::string(s) +
                                "' (expected fronthaul-overlay|fronthaul-shared|splitphy-shared)");
}

inline bool is_shared(TransportVariant v) { return v != TransportVariant::FronthaulOverlay; }

/// Line-rate inputs from which the per-wavelength slot capacity B_p is derived.
struct TransportRates {
    double wavelength_capacity_gbps = 10.0;
    double fronthaul_gbps_per_20mhz = 1.25;
    double splitphy_reduction = 10.0;  // midhaul rate = fronthaul rate / reduction
    std::size_t max_wavelengths_per_pon = 8;

    [[nodiscard]] double fronthaul_gbps_per_slot() const { return fronthaul_gbps_per_20mhz / 4.0; }
    [[nodiscard]] double splitphy_gbps_per_slot() const { return fronthaul_gbps_per_slot() / splitphy_reduction; }

    void validate() const {
        if (!(wavelength_capacity_gbps > 0.0) || !(fronthaul_gbps_per_20mhz > 0.0) || !(splitphy_reduction > 0.0))
            throw std::invalid_argument("transport rates must be > 0");
        if (max_wavelengths_per_pon == 0) throw std::invalid_argument("max_wavelengths_per_pon must be >= 1");
    }

    friend bool operator==(const TransportRates&, const TransportRates&) = default;
};

/// 5 MHz signals that fit in one wavelength, floor(capacity / rate per slot).
inline std::size_t slots_per_wavelength(double wavelength_capacity_gbps, double gbps_per_slot) {
    // The tolerance absorbs representation error in exact ratios like 10 / 0.3125.
    const double ratio = wavelength_capacity_gbps / gbps_per_slot;
    const auto bp = static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12)));
    if (bp == 0) throw std::invalid_argument("a single 5 MHz signal does not fit in one wavelength");
    return bp;
}

struct TransportModel {
    TransportVariant variant = TransportVariant::FronthaulOverlay;
    std::size_t slots_per_wavelength = 32;  // B_p
    double wavelength_capacity_gbps = 10.0;
    double gbps_per_slot = 0.3125;
    std::size_t max_wavelengths_per_pon = 8;

    static TransportModel make(TransportVariant v, const TransportRates& rates = {}) {
        rates.validate();
        const double per_slot =
            v == TransportVariant::SplitPhyShared ? rates.splitphy_gbps_per_slot() : rates.fronthaul_gbps_per_slot();
        return {v, mdmimo::slots_per_wavelength(rates.wavelength_capacity_gbps, per_slot),
                rates.wavelength_capacity_gbps, per_slot, rates.max_wavelengths_per_pon};
    }
};

struct PonAssignment {
    std::vector<std::size_t> geometric;  // selected antennas per PON by homing
    std::vector<std::size_t> balanced;   // m_i used for wavelength counting

    [[nodiscard]] std::size_t total() const {
        std::size_t t = 0;
        for (auto v : balanced) t += v;
        return t;
    }
};

/// Splits the selected antennas over the PONs as evenly as possible while
/// never putting more antennas on a PON than are homed there. Starts from the
/// homing counts and moves one antenna at a time from the (lowest-index)
/// fullest PON to the (lowest-index) emptiest one.
inline PonAssignment assign_antennas_to_pons(const Scenario& s, std::span<const std::size_t> antenna_set) {
    PonAssignment pa;
    pa.geometric.assign(s.num_pons(), 0);
    for (auto j : antenna_set) {
        if (j >= s.num_antennas()) throw std::out_of_range("assign_antennas_to_pons: antenna index out of range");
        ++pa.geometric[s.pon_homing()[j]];
    }
    const auto capacity = s.homed_counts();
    pa.balanced = pa.geometric;
    auto& m = pa.balanced;
    for (;;) {
        const auto hi = std::max_element(m.begin(), m.end());
        const auto lo = std::min_element(m.begin(), m.end());
        if (*hi - *lo <= 1) break;
        // The emptiest PON always has spare homed capacity while the spread exceeds one.
        if (*lo >= capacity[static_cast<std::size_t>(lo - m.begin())])
            throw std::logic_error("assign_antennas_to_pons: homing capacity exhausted");
        --*hi;
        ++*lo;
    }
    return pa;
}

namespace detail {
inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

inline void check_transport_args(int bandwidth_mhz, std::size_t bp) {
    if (bandwidth_mhz < 0 || bandwidth_mhz % kSlotMHz != 0)
        throw std::invalid_argument("bandwidth must be a non-negative multiple of 5 MHz");
    if (bp == 0) throw std::invalid_argument("B_p must be >= 1");
}
}  // namespace detail

/// m * ceil((w/5) / B_p); a wavelength never serves more than one antenna site.
inline std::size_t wavelengths_overlay(int bandwidth_mhz, std::size_t m, std::size_t bp) {
    detail::check_transport_args(bandwidth_mhz, bp);
    const auto slots = static_cast<std::size_t>(bandwidth_mhz / kSlotMHz);
    return m * detail::ceil_div(slots, bp);
}

/// sum_i ceil(m_i * (w/5) / B_p).
inline std::size_t wavelengths_shared(int bandwidth_mhz, std::span<const std::size_t> per_pon, std::size_t bp) {
    detail::check_transport_args(bandwidth_mhz, bp);
    const auto slots = static_cast<std::size_t>(bandwidth_mhz / kSlotMHz);
    std::size_t total = 0;
    for (auto mi : per_pon) total += detail::ceil_div(mi * slots, bp);
    return total;
}

/// Wavelengths lit on each PON under the given variant.
inline std::vector<std::size_t> wavelengths_per_pon(TransportVariant v, int bandwidth_mhz,
                                                    std::span<const std::size_t> per_pon, std::size_t bp) {
    std::vector<std::size_t> out;
    out.reserve(per_pon.size());
    for (auto mi : per_pon) {
        const std::size_t one[] = {mi};
        out.push_back(is_shared(v) ? wavelengths_shared(bandwidth_mhz, one, bp)
                                   : wavelengths_overlay(bandwidth_mhz, mi, bp));
    }
    return out;
}

}  // namespace mdmimo
