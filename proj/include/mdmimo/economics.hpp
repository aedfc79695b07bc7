#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mdmimo {

/// Lease prices over a common period, in cost units (cu).
struct CostPoint {
    double per_mhz = 1.0;         // c_w
    double per_antenna = 1.0;     // c_m
    double per_wavelength = 1.0;  // c_b

    void validate() const {
        if (!(per_mhz > 0.0) || !(per_antenna > 0.0) || !(per_wavelength > 0.0))
            throw std::invalid_argument("cost point prices must all be > 0");
    }

    [[nodiscard]] CostPoint scaled(double factor) const {
        return {per_mhz * factor, per_antenna * factor, per_wavelength * factor};
    }
};

struct CostRatios {
    double spectrum_to_wavelength = 1.0;  // R_wb = c_w / c_b
    double wavelength_to_antenna = 1.0;   // R_bm = c_b / c_m

    void validate() const {
        if (!(spectrum_to_wavelength > 0.0) || !(wavelength_to_antenna > 0.0))
            throw std::invalid_argument("cost ratios must be > 0");
    }
};

/// Published lease figures the reference ratios are derived from.
struct ReferenceCostInputs {
    double spectrum_gbp_per_mhz_per_habitant = 0.1138;  // over the whole lease
    double habitants = 1350.0;
    double lease_years = 20.0;
    double site_usd_per_month = 1900.0;
    double wavelength_usd_per_year = 1510.0;
    double fx_gbp_usd = 1.278;  // reconstruction; see README

    void validate() const {
        if (!(spectrum_gbp_per_mhz_per_habitant > 0.0) || !(habitants > 0.0) || !(lease_years > 0.0) ||
            !(site_usd_per_month > 0.0) || !(wavelength_usd_per_year > 0.0) || !(fx_gbp_usd > 0.0))
            throw std::invalid_argument("reference cost inputs must all be > 0");
    }

    friend bool operator==(const ReferenceCostInputs&, const ReferenceCostInputs&) = default;
};

/// c_b is the anchor: c_b = normalization, c_w = R_wb c_b, c_m = c_b / R_bm.
inline CostPoint ratios_to_costpoint(const CostRatios& r, double normalization = 1.0) {
    r.validate();
    if (!(normalization > 0.0)) throw std::invalid_argument("normalization must be > 0");
    return {r.spectrum_to_wavelength * normalization, normalization / r.wavelength_to_antenna, normalization};
}

inline CostRatios costpoint_to_ratios(const CostPoint& cp) {
    cp.validate();
    return {cp.per_mhz / cp.per_wavelength, cp.per_wavelength / cp.per_antenna};
}

struct CostBreakdown {
    double antennas = 0.0;
    double spectrum = 0.0;
    double transport = 0.0;
    double total = 0.0;
};

inline CostBreakdown total_cost(const CostPoint& cp, int bandwidth_mhz, std::size_t m, std::size_t n_wavelengths) {
    CostBreakdown c;
    c.antennas = cp.per_antenna * static_cast<double>(m);
    c.spectrum = cp.per_mhz * static_cast<double>(bandwidth_mhz);
    c.transport = cp.per_wavelength * static_cast<double>(n_wavelengths);
    c.total = c.antennas + c.spectrum + c.transport;
    return c;
}

/// Bits (or, in literal mode, bit/s/Hz) per cost unit.
inline double cost_efficiency(double rate, double cost) {
    if (!(cost > 0.0)) throw std::invalid_argument("cost_efficiency: cost must be > 0");
    return rate / cost;
}

struct ReferenceCosts {
    double spectrum_usd_per_mhz_year = 0.0;  // c_w
    double site_usd_per_year = 0.0;          // c_m
    double wavelength_usd_per_year = 0.0;    // c_b
    CostRatios ratios;
};

/// Brings the published figures to USD per year and forms R_wb and R_bm.
inline ReferenceCosts reference_costs(const ReferenceCostInputs& in) {
    in.validate();
    ReferenceCosts out;
    out.site_usd_per_year = in.site_usd_per_month * 12.0;
    out.wavelength_usd_per_year = in.wavelength_usd_per_year;
    out.spectrum_usd_per_mhz_year = in.spectrum_gbp_per_mhz_per_habitant * in.habitants / in.lease_years * in.fx_gbp_usd;
    out.ratios = {out.spectrum_usd_per_mhz_year / out.wavelength_usd_per_year,
                  out.wavelength_usd_per_year / out.site_usd_per_year};
    return out;
}

inline CostRatios reference_ratios(const ReferenceCostInputs& in) { return reference_costs(in).ratios; }

/// i (1+i)^T / ((1+i)^T - 1); 1/T in the zero-rate limit.
inline double capital_recovery_factor(double rate, int years) {
    if (years < 1) throw std::invalid_argument("capital_recovery_factor: horizon must be >= 1 year");
    if (rate < 0.0) throw std::invalid_argument("capital_recovery_factor: rate must be >= 0");
    if (rate == 0.0) return 1.0 / years;
    const double growth = std::pow(1.0 + rate, years);
    return rate * growth / (growth - 1.0);
}

/// Equal annual lease charge recovering capex at the given WACC, marked up by
/// the ROI margin, plus a flat yearly OPEX share of capex.
inline double annualize_lease(double capex, double opex_fraction, double wacc, double roi, int horizon_years) {
    return capex * capital_recovery_factor(wacc, horizon_years) * (1.0 + roi) + opex_fraction * capex;
}

}  // namespace mdmimo
