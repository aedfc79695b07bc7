#pragma once

// Scenario dump format (JSON, "format": "mdmimo-scenario", "version": 1):
//
//   seed          rng seed the users were drawn with
//   config        every ScenarioConfig field (propagation nested)
//   derived       num_users, num_antennas, num_dwellings, num_pons,
//                 tx_power_mw, noise_mw_per_hz
//   gain_model    the path-gain formula, for external recomputation
//   users         [[x_km, y_km], ...], fixed 6 decimals
//   antennas      [[x_km, y_km], ...], fixed 6 decimals, grid-scan order
//   pon_homing    PON index of each antenna
//
// Positions sit on a 1e-6 km lattice, so load(dump(s)) == s.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "mdmimo/scenario.hpp"

namespace mdmimo {

inline constexpr const char* kScenarioFormat = "mdmimo-scenario";
inline constexpr int kScenarioFormatVersion = 1;
inline constexpr const char* kGainModel =
    "G[k][j] = 10^(-(ref_loss_db + 10*path_loss_exponent*log10(max(d_kj_km, min_distance_m/1000)))/10)";

namespace detail {

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string point_array(std::span<const Point> pts) {
    std::string out = "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out += i == 0 ? "\n    [" : ",\n    [";
        out += fixed6(pts[i].x_km) + ", " + fixed6(pts[i].y_km) + "]";
    }
    out += pts.empty() ? "]" : "\n  ]";
    return out;
}

}  // namespace detail

inline nlohmann::ordered_json scenario_config_json(const ScenarioConfig& c) {
    nlohmann::ordered_json j;
    j["area_side_km"] = c.area_side_km;
    j["num_users"] = c.num_users;
    j["num_antennas"] = c.num_antennas;
    j["dwellings_per_km2"] = c.dwellings_per_km2;
    j["habitants_per_km2"] = c.habitants_per_km2;
    j["pon_split"] = c.pon_split;
    j["density_scale"] = c.density_scale;
    j["seed"] = c.rng_seed;
    j["tx_power_dbm"] = c.tx_power_dbm;
    j["noise_density_dbm_hz"] = c.noise_density_dbm_hz;
    j["noise_figure_db"] = c.noise_figure_db;
    j["propagation"] = {
        {"path_loss_exponent", c.propagation.path_loss_exponent},
        {"ref_loss_db", c.propagation.ref_loss_db},
        {"min_distance_m", c.propagation.min_distance_m},
    };
    return j;
}

inline std::string dump_scenario(const Scenario& s) {
    const auto& c = s.config();
    nlohmann::ordered_json derived;
    derived["num_users"] = s.num_users();
    derived["num_antennas"] = s.num_antennas();
    derived["num_dwellings"] = s.num_dwellings();
    derived["num_pons"] = s.num_pons();
    derived["tx_power_mw"] = s.tx_power_mw();
    derived["noise_mw_per_hz"] = s.noise_mw_per_hz();

    std::string homing = "[";
    for (std::size_t j = 0; j < s.num_antennas(); ++j)
        homing += (j ? ", " : "") + std::to_string(s.pon_homing()[j]);
    homing += "]";

    std::ostringstream os;
    os << "{\n"
       << "  \"format\": \"" << kScenarioFormat << "\",\n"
       << "  \"version\": " << kScenarioFormatVersion << ",\n"
       << "  \"seed\": " << c.rng_seed << ",\n"
       << "  \"config\": " << scenario_config_json(c).dump() << ",\n"
       << "  \"derived\": " << derived.dump() << ",\n"
       << "  \"gain_model\": " << nlohmann::json(kGainModel).dump() << ",\n"
       << "  \"users\": " << detail::point_array(s.users()) << ",\n"
       << "  \"antennas\": " << detail::point_array(s.antennas()) << ",\n"
       << "  \"pon_homing\": " << homing << "\n"
       << "}\n";
    return os.str();
}

inline Scenario load_scenario(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("scenario dump: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kScenarioFormat)
            throw std::runtime_error("scenario dump: unexpected format tag");
        if (j.at("version").get<int>() != kScenarioFormatVersion)
            throw std::runtime_error("scenario dump: unsupported version");

        const auto& jc = j.at("config");
        ScenarioConfig c;
        c.area_side_km = jc.at("area_side_km").get<double>();
        c.num_users = jc.at("num_users").get<std::size_t>();
        c.num_antennas = jc.at("num_antennas").get<std::size_t>();
        c.dwellings_per_km2 = jc.at("dwellings_per_km2").get<double>();
        c.habitants_per_km2 = jc.at("habitants_per_km2").get<double>();
        c.pon_split = jc.at("pon_split").get<std::size_t>();
        c.density_scale = jc.at("density_scale").get<double>();
        c.rng_seed = jc.at("seed").get<std::uint64_t>();
        c.tx_power_dbm = jc.at("tx_power_dbm").get<double>();
        c.noise_density_dbm_hz = jc.at("noise_density_dbm_hz").get<double>();
        c.noise_figure_db = jc.at("noise_figure_db").get<double>();
        const auto& jp = jc.at("propagation");
        c.propagation.path_loss_exponent = jp.at("path_loss_exponent").get<double>();
        c.propagation.ref_loss_db = jp.at("ref_loss_db").get<double>();
        c.propagation.min_distance_m = jp.at("min_distance_m").get<double>();
        c.propagation.validate();

        auto points = [](const nlohmann::json& arr) {
            std::vector<Point> out;
            for (const auto& p : arr) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            return out;
        };
        const auto& d = j.at("derived");
        Scenario s(c, points(j.at("users")), points(j.at("antennas")), d.at("num_dwellings").get<std::size_t>(),
                   d.at("num_pons").get<std::size_t>());
        if (s.num_users() != d.at("num_users").get<std::size_t>() ||
            s.num_antennas() != d.at("num_antennas").get<std::size_t>())
            throw std::runtime_error("scenario dump: position counts disagree with derived counts");
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("scenario dump: ") + e.what());
    }
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario dump: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

}  // namespace mdmimo
