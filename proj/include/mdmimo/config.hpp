#pragma once

// Run configuration: one YAML file, every key optional, unknown keys rejected.
// default_config_yaml() is the documented reference config.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "mdmimo/economics.hpp"
#include "mdmimo/radio_model.hpp"
#include "mdmimo/scenario.hpp"
#include "mdmimo/scenario_io.hpp"
#include "mdmimo/sweep.hpp"
#include "mdmimo/transport_model.hpp"

namespace mdmimo {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + msg : "config: " + msg),
          line_(line) {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

struct RunConfig {
    ScenarioConfig scenario{};
    TransportRates transport{};
    ReferenceCostInputs economics{};
    SweepSpec sweep{};
    int max_bandwidth_mhz = 50;
    NumeratorMode numerator = NumeratorMode::Corrected;
    std::string output_path = "sweep.csv";
    unsigned threads = 0;

    void validate() const {
        mdmimo::validate(scenario);
        transport.validate();
        economics.validate();
        sweep.validate();
        if (max_bandwidth_mhz < kSlotMHz || max_bandwidth_mhz % kSlotMHz != 0)
            throw std::invalid_argument("max_bandwidth_mhz must be a positive multiple of 5");
    }

    [[nodiscard]] SweepOptions sweep_options() const { return {max_bandwidth_mhz, numerator, transport, threads}; }
};

namespace detail {

inline int line_of(const YAML::Node& n) { return !n || n.Mark().is_null() ? 0 : n.Mark().line + 1; }

// A YAML mapping whose keys must all be consumed.
class Section {
public:
    Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ConfigError(line_of(node_), "'" + path_ + "' must be a mapping");
    }

    [[nodiscard]] YAML::Node get(const std::string& key) {
        seen_.insert(key);
        if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& n = node_;
        return n[key];
    }

    template <typename T>
    void read(const std::string& key, T& out) {
        const auto n = get(key);
        if (!n) return;
        try {
            out = n.as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(line_of(n), "bad value for '" + qualified(key) + "'");
        }
    }

    void reject_unknown() const {
        if (!node_ || node_.IsNull()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!seen_.count(key)) throw ConfigError(line_of(kv.first), "unknown key '" + qualified(key) + "'");
        }
    }

    [[nodiscard]] std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> seen_;
};

inline std::vector<double> read_ratio_list(const YAML::Node& n, const std::string& key) {
    if (n.IsSequence()) {
        try {
            return n.as<std::vector<double>>();
        } catch (const YAML::Exception&) {
            throw ConfigError(line_of(n), "'" + key + "' must be a list of numbers");
        }
    }
    if (n.IsMap()) {
        Section s(n, key);
        double lo = 0, hi = 0;
        std::size_t count = 0;
        s.read("log_min", lo);
        s.read("log_max", hi);
        s.read("count", count);
        s.reject_unknown();
        try {
            return log_spaced(lo, hi, count);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(line_of(n), key + ": " + e.what());
        }
    }
    throw ConfigError(line_of(n), "'" + key + "' must be a list or a {log_min, log_max, count} mapping");
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(e.mark.line + 1, e.msg);
    }
    RunConfig cfg;
    detail::Section top(root, "");

    // Cross-field checks are attributed to the line of the field most likely at fault.
    int scenario_line = 0, sweep_line = 0;

    {
        auto node = top.get("scenario");
        scenario_line = detail::line_of(node);
        detail::Section s(node, "scenario");
        auto& c = cfg.scenario;
        s.read("area_side_km", c.area_side_km);
        s.read("num_users", c.num_users);
        if (auto n = s.get("num_users"); n) scenario_line = detail::line_of(n);
        s.read("num_antennas", c.num_antennas);
        s.read("dwellings_per_km2", c.dwellings_per_km2);
        s.read("habitants_per_km2", c.habitants_per_km2);
        s.read("pon_split", c.pon_split);
        s.read("density_scale", c.density_scale);
        s.read("seed", c.rng_seed);
        s.read("tx_power_dbm", c.tx_power_dbm);
        s.read("noise_density_dbm_hz", c.noise_density_dbm_hz);
        s.read("noise_figure_db", c.noise_figure_db);
        detail::Section p(s.get("propagation"), "scenario.propagation");
        p.read("path_loss_exponent", c.propagation.path_loss_exponent);
        p.read("ref_loss_db", c.propagation.ref_loss_db);
        p.read("min_distance_m", c.propagation.min_distance_m);
        p.reject_unknown();
        s.reject_unknown();
        try {
            validate(c);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(scenario_line, e.what());
        }
    }
    {
        auto node = top.get("transport");
        detail::Section t(node, "transport");
        t.read("wavelength_capacity_gbps", cfg.transport.wavelength_capacity_gbps);
        t.read("fronthaul_gbps_per_20mhz", cfg.transport.fronthaul_gbps_per_20mhz);
        t.read("splitphy_reduction", cfg.transport.splitphy_reduction);
        t.read("max_wavelengths_per_pon", cfg.transport.max_wavelengths_per_pon);
        t.reject_unknown();
        try {
            cfg.transport.validate();
            for (auto v : kAllVariants) (void)TransportModel::make(v, cfg.transport);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(detail::line_of(node), e.what());
        }
    }
    {
        auto node = top.get("economics");
        detail::Section e(node, "economics");
        auto& r = cfg.economics;
        e.read("spectrum_gbp_per_mhz_per_habitant", r.spectrum_gbp_per_mhz_per_habitant);
        e.read("habitants", r.habitants);
        e.read("lease_years", r.lease_years);
        e.read("site_usd_per_month", r.site_usd_per_month);
        e.read("wavelength_usd_per_year", r.wavelength_usd_per_year);
        e.read("fx_gbp_usd", r.fx_gbp_usd);
        e.reject_unknown();
        try {
            r.validate();
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(detail::line_of(node), ex.what());
        }
    }
    {
        auto node = top.get("sweep");
        sweep_line = detail::line_of(node);
        detail::Section s(node, "sweep");
        if (auto n = s.get("r_wb_values"); n) cfg.sweep.r_wb_values = detail::read_ratio_list(n, "sweep.r_wb_values");
        if (auto n = s.get("r_bm_values"); n) cfg.sweep.r_bm_values = detail::read_ratio_list(n, "sweep.r_bm_values");
        if (auto n = s.get("models"); n) {
            sweep_line = detail::line_of(n);
            if (!n.IsSequence()) throw ConfigError(detail::line_of(n), "'sweep.models' must be a list");
            cfg.sweep.models.clear();
            for (const auto& m : n) {
                try {
                    cfg.sweep.models.push_back(parse_variant(m.as<std::string>()));
                } catch (const std::exception& ex) {
                    throw ConfigError(detail::line_of(m), ex.what());
                }
            }
        }
        if (auto n = s.get("shaded_region"); n) {
            std::vector<double> v;
            try {
                v = n.as<std::vector<double>>();
            } catch (const YAML::Exception&) {
            }
            if (v.size() != 2) throw ConfigError(detail::line_of(n), "'sweep.shaded_region' must be [lo, hi]");
            cfg.sweep.shaded_region = {v[0], v[1]};
        }
        s.read("normalization", cfg.sweep.normalization);
        s.reject_unknown();
        try {
            cfg.sweep.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(sweep_line, e.what());
        }
    }

    top.read("max_bandwidth_mhz", cfg.max_bandwidth_mhz);
    if (auto n = top.get("numerator_mode"); n) {
        try {
            cfg.numerator = parse_numerator_mode(n.as<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(detail::line_of(n), e.what());
        }
    }
    top.read("output_path", cfg.output_path);
    top.read("threads", cfg.threads);
    top.reject_unknown();

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        const YAML::Node& r = root;
        throw ConfigError(r.IsMap() ? detail::line_of(r["max_bandwidth_mhz"]) : 0, e.what());
    }
    return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Every field that can change a result, in a fixed key order. Output path
/// and thread count are left out.
inline nlohmann::ordered_json canonical_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_config_json(c.scenario);
    j["transport"] = {
        {"wavelength_capacity_gbps", c.transport.wavelength_capacity_gbps},
        {"fronthaul_gbps_per_20mhz", c.transport.fronthaul_gbps_per_20mhz},
        {"splitphy_reduction", c.transport.splitphy_reduction},
        {"max_wavelengths_per_pon", c.transport.max_wavelengths_per_pon},
    };
    j["economics"] = {
        {"spectrum_gbp_per_mhz_per_habitant", c.economics.spectrum_gbp_per_mhz_per_habitant},
        {"habitants", c.economics.habitants},
        {"lease_years", c.economics.lease_years},
        {"site_usd_per_month", c.economics.site_usd_per_month},
        {"wavelength_usd_per_year", c.economics.wavelength_usd_per_year},
        {"fx_gbp_usd", c.economics.fx_gbp_usd},
    };
    nlohmann::ordered_json models = nlohmann::ordered_json::array();
    for (auto m : c.sweep.models) models.push_back(std::string(to_string(m)));
    j["sweep"] = {
        {"r_wb_values", c.sweep.r_wb_values},
        {"r_bm_values", c.sweep.r_bm_values},
        {"models", models},
        {"shaded_region", {c.sweep.shaded_region.first, c.sweep.shaded_region.second}},
        {"normalization", c.sweep.normalization},
    };
    j["max_bandwidth_mhz"] = c.max_bandwidth_mhz;
    j["numerator_mode"] = std::string(to_string(c.numerator));
    return j;
}

/// FNV-1a 64, hex.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string config_hash(const RunConfig& c) { return fnv1a_hex(canonical_json(c).dump()); }

inline std::string default_config_yaml() {
    return R"(# mdmimo-pon reference configuration. Every key is optional; the values
# below are the built-in defaults. Unknown keys are rejected.

scenario:
  area_side_km: 1.0            # square deployment area side
  num_users: 20                # K, active users
  num_antennas: 64             # M, antenna sites on a sqrt(M) x sqrt(M) grid
  dwellings_per_km2: 570
  habitants_per_km2: 1350
  pon_split: 64                # ONU ports per PON; dwellings and sites each take one
  density_scale: 1.0           # scales K, M, dwellings and habitants together
  seed: 42                     # mt19937_64 seed for the user drop
  tx_power_dbm: 24.0           # P, per symbol
  noise_density_dbm_hz: -174.0 # N0
  noise_figure_db: 9.0
  propagation:                 # PL(d) = ref_loss_db + 10 * exponent * log10(d / 1 km)
    path_loss_exponent: 3.67
    ref_loss_db: 140.7
    min_distance_m: 35.0

transport:
  wavelength_capacity_gbps: 10.0
  fronthaul_gbps_per_20mhz: 1.25  # B_p = floor(10 / (1.25 / 4)) = 32
  splitphy_reduction: 10.0        # split-PHY B_p = 320
  max_wavelengths_per_pon: 8      # feasibility flag only

economics:                     # reference ratios for ref-costs
  spectrum_gbp_per_mhz_per_habitant: 0.1138  # whole lease
  habitants: 1350
  lease_years: 20
  site_usd_per_month: 1900
  wavelength_usd_per_year: 1510
  fx_gbp_usd: 1.278            # reconstructed conversion rate

sweep:
  r_wb_values: [6.5e-5, 6.5e-4, 6.5e-3, 6.5e-2, 6.5e-1]
  r_bm_values: {log_min: 1.0e-4, log_max: 100.0, count: 25}
  models: [fronthaul-overlay, fronthaul-shared, splitphy-shared]
  shaded_region: [0.006, 0.6]
  normalization: 1.0           # c_b in cost units

max_bandwidth_mhz: 50          # W
numerator_mode: corrected      # corrected | literal
output_path: sweep.csv
threads: 0                     # sweep workers, 0 = hardware concurrency
)";
}

}  // namespace mdmimo
