#pragma once

// Exhaustive search of the (bandwidth, antenna count) grid for the allocation
// with the highest cost efficiency.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mdmimo/economics.hpp"
#include "mdmimo/radio_model.hpp"
#include "mdmimo/scenario.hpp"
#include "mdmimo/transport_model.hpp"

namespace mdmimo {

struct Evaluation {
    Allocation allocation;
    double sum_rate = 0.0;
    std::size_t n_wavelengths = 0;
    PonAssignment pons;
    std::vector<std::size_t> wavelengths_per_pon;
    CostBreakdown cost;
    double eta = 0.0;
    bool exceeds_pon_wavelength_limit = false;
};

struct Optimum {
    Evaluation best;
    std::size_t grid_size = 0;
};

namespace detail {

inline Evaluation evaluate_with_powers(const Scenario& s, const TransportModel& t, const CostPoint& cp,
                                       Allocation a, std::span<const double> powers, NumeratorMode mode) {
    Evaluation e;
    e.sum_rate = sum_rate_from_powers(powers, s.noise_mw_per_hz(), a.bandwidth_mhz, mode);
    e.pons = assign_antennas_to_pons(s, a.antenna_set);
    e.n_wavelengths = is_shared(t.variant) ? wavelengths_shared(a.bandwidth_mhz, e.pons.balanced, t.slots_per_wavelength)
                                           : wavelengths_overlay(a.bandwidth_mhz, a.num_antennas, t.slots_per_wavelength);
    e.wavelengths_per_pon = wavelengths_per_pon(t.variant, a.bandwidth_mhz, e.pons.balanced, t.slots_per_wavelength);
    for (auto n : e.wavelengths_per_pon)
        if (n > t.max_wavelengths_per_pon) e.exceeds_pon_wavelength_limit = true;
    e.cost = total_cost(cp, a.bandwidth_mhz, a.num_antennas, e.n_wavelengths);
    e.eta = cost_efficiency(e.sum_rate, e.cost.total);
    e.allocation = std::move(a);
    return e;
}

}  // namespace detail

inline Evaluation evaluate(const Scenario& s, const TransportModel& t, const CostPoint& cp, const Allocation& a,
                           NumeratorMode mode = NumeratorMode::Corrected) {
    check_allocation(s, a);
    cp.validate();
    const auto powers = received_powers(s, a.antenna_set);
    return detail::evaluate_with_powers(s, t, cp, a, powers, mode);
}

inline std::size_t grid_size(const Scenario& s, int max_bandwidth_mhz) {
    return static_cast<std::size_t>(max_bandwidth_mhz / kSlotMHz) * (s.num_antennas() - s.num_users() + 1);
}

/// Visits every grid point in (m ascending, w ascending) order. The callback
/// sees each Evaluation exactly as evaluate() would produce it.
inline void for_each_grid_point(const Scenario& s, const TransportModel& t, const CostPoint& cp,
                                int max_bandwidth_mhz, NumeratorMode mode,
                                const std::function<void(const Evaluation&)>& visit) {
    if (max_bandwidth_mhz < kSlotMHz || max_bandwidth_mhz % kSlotMHz != 0)
        throw std::invalid_argument("maximum bandwidth must be a multiple of 5 MHz and at least 5 MHz");
    if (s.num_users() > s.num_antennas()) throw std::invalid_argument("empty grid: K > M");
    cp.validate();
    const AntennaRanking ranking(s);
    for (std::size_t m = s.num_users(); m <= s.num_antennas(); ++m) {
        const auto antennas = ranking.top(m);
        const auto powers = received_powers(s, antennas);
        for (int w = kSlotMHz; w <= max_bandwidth_mhz; w += kSlotMHz)
            visit(detail::evaluate_with_powers(s, t, cp, Allocation{w, m, antennas}, powers, mode));
    }
}

/// Highest eta over w in {5, ..., W}, m in {K, ..., M}; ties go to the
/// smaller m, then the smaller w.
inline Optimum optimize(const Scenario& s, const TransportModel& t, const CostPoint& cp, int max_bandwidth_mhz,
                        NumeratorMode mode = NumeratorMode::Corrected) {
    Optimum out;
    bool have = false;
    for_each_grid_point(s, t, cp, max_bandwidth_mhz, mode, [&](const Evaluation& e) {
        ++out.grid_size;
        if (!have || e.eta > out.best.eta) {
            out.best = e;
            have = true;
        }
    });
    return out;
}

}  // namespace mdmimo
