#pragma once

// Sensitivity sweep over (transport model, R_wb, R_bm) and its CSV output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mdmimo/economics.hpp"
#include "mdmimo/optimizer.hpp"
#include "mdmimo/transport_model.hpp"

namespace mdmimo {

inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("log_spaced: need 0 < lo < hi, count >= 2");
    const double a = std::log10(lo);
    const double step = (std::log10(hi) - a) / static_cast<double>(count - 1);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::pow(10.0, a + step * static_cast<double>(i));
    return out;
}

inline std::vector<double> default_r_wb_values() { return {6.5e-5, 6.5e-4, 6.5e-3, 6.5e-2, 6.5e-1}; }
inline std::vector<double> default_r_bm_values() { return log_spaced(1e-4, 1e2, 25); }

struct SweepSpec {
    std::vector<double> r_wb_values = default_r_wb_values();
    std::vector<double> r_bm_values = default_r_bm_values();
    std::vector<TransportVariant> models{kAllVariants.begin(), kAllVariants.end()};
    std::pair<double, double> shaded_region{0.006, 0.6};
    double normalization = 1.0;

    void validate() const {
        auto increasing = [](const std::vector<double>& v) {
            return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) == v.end();
        };
        auto positive = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
        };
        if (models.empty()) throw std::invalid_argument("sweep: model list is empty");
        if (r_wb_values.empty() || r_bm_values.empty()) throw std::invalid_argument("sweep: ratio lists must be non-empty");
        if (!increasing(r_wb_values) || !increasing(r_bm_values))
            throw std::invalid_argument("sweep: ratio lists must be strictly increasing");
        if (!positive(r_wb_values) || !positive(r_bm_values)) throw std::invalid_argument("sweep: ratios must be > 0");
        if (!(shaded_region.first > 0.0) || !(shaded_region.second > shaded_region.first))
            throw std::invalid_argument("sweep: shaded region must satisfy 0 < lo < hi");
        if (!(normalization > 0.0)) throw std::invalid_argument("sweep: normalization must be > 0");
    }

    [[nodiscard]] std::size_t size() const { return models.size() * r_wb_values.size() * r_bm_values.size(); }
};

struct SweepRecord {
    TransportVariant model{};
    double r_wb = 0.0;
    double r_bm = 0.0;
    CostPoint costs;
    std::size_t opt_m = 0;
    int opt_w = 0;
    double eta = 0.0;
    double sum_rate = 0.0;
    std::size_t n_wavelengths = 0;
    double cost_total = 0.0;
    bool feasibility_flag = false;
};

inline SweepRecord make_record(TransportVariant model, const CostRatios& r, const CostPoint& cp, const Optimum& o) {
    const auto& b = o.best;
    return {model,
            r.spectrum_to_wavelength,
            r.wavelength_to_antenna,
            cp,
            b.allocation.num_antennas,
            b.allocation.bandwidth_mhz,
            b.eta,
            b.sum_rate,
            b.n_wavelengths,
            b.cost.total,
            b.exceeds_pon_wavelength_limit};
}

struct SweepOptions {
    int max_bandwidth_mhz = 50;
    NumeratorMode mode = NumeratorMode::Corrected;
    TransportRates rates{};
    unsigned threads = 1;  // 0: hardware concurrency
};

class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One optimum per (model, R_wb, R_bm), returned in that lexicographic order
/// whatever the thread count.
inline std::vector<SweepRecord> run_sweep(const Scenario& s, const SweepSpec& spec, const SweepOptions& opt = {}) {
    spec.validate();
    const std::size_t n_bm = spec.r_bm_values.size();
    const std::size_t n_wb = spec.r_wb_values.size();
    const std::size_t total = spec.size();

    std::vector<TransportModel> transports;
    for (auto v : spec.models) transports.push_back(TransportModel::make(v, opt.rates));

    std::vector<std::optional<SweepRecord>> slots(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const std::size_t mi = i / (n_wb * n_bm);
            const CostRatios r{spec.r_wb_values[(i / n_bm) % n_wb], spec.r_bm_values[i % n_bm]};
            try {
                const auto cp = ratios_to_costpoint(r, spec.normalization);
                slots[i] = make_record(spec.models[mi], r, cp,
                                       optimize(s, transports[mi], cp, opt.max_bandwidth_mhz, opt.mode));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned n_threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }

    std::vector<SweepRecord> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        if (errors[i]) {
            std::string what = "unknown error";
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                what = e.what();
            } catch (...) {
            }
            const std::size_t mi = i / (n_wb * n_bm);
            throw SweepError("sweep failed at (model=" + std::string(to_string(spec.models[mi])) +
                             ", R_wb=" + std::to_string(spec.r_wb_values[(i / n_bm) % n_wb]) +
                             ", R_bm=" + std::to_string(spec.r_bm_values[i % n_bm]) + "): " + what);
        }
        out.push_back(*slots[i]);
    }
    return out;
}

inline constexpr const char* kSweepCsvHeader =
    "model,R_wb,R_bm,c_w,c_m,c_b,opt_m,opt_w,eta,sum_rate,n_wavelengths,cost_total,feasibility_flag";

inline std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string csv_row(const SweepRecord& r) {
    std::string row(to_string(r.model));
    for (double v : {r.r_wb, r.r_bm, r.costs.per_mhz, r.costs.per_antenna, r.costs.per_wavelength})
        row += "," + format_g9(v);
    row += "," + std::to_string(r.opt_m) + "," + std::to_string(r.opt_w);
    row += "," + format_g9(r.eta) + "," + format_g9(r.sum_rate);
    row += "," + std::to_string(r.n_wavelengths) + "," + format_g9(r.cost_total);
    row += r.feasibility_flag ? ",true" : ",false";
    return row;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kSweepCsvHeader << '\n';
    for (const auto& r : records) os << csv_row(r) << '\n';
}

}  // namespace mdmimo
