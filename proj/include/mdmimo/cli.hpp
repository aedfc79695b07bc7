#pragma once

// mdmimo-pon command line: generate-scenario, optimize, sweep, ref-costs,
// default-config. Exit codes: 0 ok, 1 usage/config error, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mdmimo/config.hpp"
#include "mdmimo/economics.hpp"
#include "mdmimo/optimizer.hpp"
#include "mdmimo/scenario.hpp"
#include "mdmimo/scenario_io.hpp"
#include "mdmimo/sweep.hpp"
#include "mdmimo/version.hpp"

namespace mdmimo::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> model;
    std::optional<std::string> out;
    std::optional<std::string> numerator;
};

inline RunConfig resolve_config(const CommonOptions& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config_file(o.config_path);
    if (o.seed) cfg.scenario.rng_seed = *o.seed;
    if (o.numerator) {
        try {
            cfg.numerator = parse_numerator_mode(*o.numerator);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(0, e.what());
        }
    }
    if (o.out) cfg.output_path = *o.out;
    return cfg;
}

// Writes to a sibling temp file and renames, so a failure leaves no partial output.
inline void write_file_atomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << content;
        f.flush();
        if (!f) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + path);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot write " + path + ": " + ec.message());
    }
}

inline std::string sidecar_path(const std::string& csv_path) { return csv_path + ".meta.json"; }

inline nlohmann::ordered_json evaluation_json(const Evaluation& e) {
    nlohmann::ordered_json j;
    j["opt_w_mhz"] = e.allocation.bandwidth_mhz;
    j["opt_m"] = e.allocation.num_antennas;
    j["antenna_set"] = e.allocation.antenna_set;
    j["eta"] = e.eta;
    j["sum_rate"] = e.sum_rate;
    j["n_wavelengths"] = e.n_wavelengths;
    j["m_i_balanced"] = e.pons.balanced;
    j["m_i_geometric"] = e.pons.geometric;
    j["wavelengths_per_pon"] = e.wavelengths_per_pon;
    j["cost"] = {{"antennas", e.cost.antennas},
                 {"spectrum", e.cost.spectrum},
                 {"transport", e.cost.transport},
                 {"total", e.cost.total}};
    j["feasibility_flag"] = e.exceeds_pon_wavelength_limit;
    return j;
}

inline int cmd_generate_scenario(const RunConfig& cfg, const std::optional<std::string>& out, std::ostream& os) {
    const auto s = build_scenario(cfg.scenario);
    const auto text = dump_scenario(s);
    if (out)
        write_file_atomically(*out, text);
    else
        os << text;
    return kOk;
}

struct OptimizeArgs {
    std::string model = "splitphy-shared";
    std::optional<double> r_wb;
    std::optional<double> r_bm;
    std::optional<std::string> record_out;
    std::optional<std::string> grid_out;
};

inline int cmd_optimize(const RunConfig& cfg, const OptimizeArgs& a, std::ostream& os) {
    TransportVariant variant;
    try {
        variant = parse_variant(a.model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    const auto reference = reference_ratios(cfg.economics);
    const CostRatios ratios{a.r_wb.value_or(reference.spectrum_to_wavelength),
                            a.r_bm.value_or(reference.wavelength_to_antenna)};
    CostPoint cp;
    try {
        cp = ratios_to_costpoint(ratios, cfg.sweep.normalization);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    const auto s = build_scenario(cfg.scenario);
    const auto t = TransportModel::make(variant, cfg.transport);
    const auto o = optimize(s, t, cp, cfg.max_bandwidth_mhz, cfg.numerator);
    const auto& b = o.best;

    if (a.grid_out) {
        std::ostringstream grid;
        grid << "w_mhz,m,eta,sum_rate,n_wavelengths,cost_total,feasibility_flag\n";
        for_each_grid_point(s, t, cp, cfg.max_bandwidth_mhz, cfg.numerator, [&](const Evaluation& e) {
            grid << e.allocation.bandwidth_mhz << ',' << e.allocation.num_antennas << ',' << format_g9(e.eta) << ','
                 << format_g9(e.sum_rate) << ',' << e.n_wavelengths << ',' << format_g9(e.cost.total) << ','
                 << (e.exceeds_pon_wavelength_limit ? "true" : "false") << '\n';
        });
        write_file_atomically(*a.grid_out, grid.str());
    }

    const char* rate_unit = cfg.numerator == NumeratorMode::Corrected ? "bit/s" : "bit/s/Hz";
    os << "model         " << to_string(variant) << " (B_p = " << t.slots_per_wavelength << ")\n"
       << "ratios        R_wb = " << format_g9(ratios.spectrum_to_wavelength)
       << "  R_bm = " << format_g9(ratios.wavelength_to_antenna) << '\n'
       << "prices        c_w = " << format_g9(cp.per_mhz) << "  c_m = " << format_g9(cp.per_antenna)
       << "  c_b = " << format_g9(cp.per_wavelength) << " cu\n"
       << "optimum       w* = " << b.allocation.bandwidth_mhz << " MHz  m* = " << b.allocation.num_antennas << '\n'
       << "eta           " << format_g9(b.eta) << " per cu\n"
       << "sum rate      " << format_g9(b.sum_rate) << ' ' << rate_unit << " (" << to_string(cfg.numerator)
       << " numerator)\n"
       << "wavelengths   " << b.n_wavelengths << " over " << s.num_pons() << " PONs"
       << (b.exceeds_pon_wavelength_limit ? "  [exceeds per-PON wavelength limit]" : "") << '\n'
       << "cost          " << format_g9(b.cost.total) << " = antennas " << format_g9(b.cost.antennas)
       << " + spectrum " << format_g9(b.cost.spectrum) << " + transport " << format_g9(b.cost.transport) << '\n'
       << "grid          " << o.grid_size << " candidates\n";

    nlohmann::ordered_json rec;
    rec["model"] = std::string(to_string(variant));
    rec["R_wb"] = ratios.spectrum_to_wavelength;
    rec["R_bm"] = ratios.wavelength_to_antenna;
    rec["c_w"] = cp.per_mhz;
    rec["c_m"] = cp.per_antenna;
    rec["c_b"] = cp.per_wavelength;
    rec["numerator_mode"] = std::string(to_string(cfg.numerator));
    rec["seed"] = cfg.scenario.rng_seed;
    rec["grid_size"] = o.grid_size;
    rec["optimum"] = evaluation_json(b);
    os << "RECORD " << rec.dump() << '\n';
    if (a.record_out) write_file_atomically(*a.record_out, rec.dump(2) + "\n");
    return kOk;
}

inline nlohmann::ordered_json sweep_metadata(const RunConfig& cfg, std::size_t rows) {
    const auto ref = reference_costs(cfg.economics);
    nlohmann::ordered_json meta;
    meta["tool"] = "mdmimo-pon";
    meta["tool_version"] = kVersion;
    meta["seed"] = cfg.scenario.rng_seed;
    meta["config_hash"] = config_hash(cfg);
    meta["numerator_mode"] = std::string(to_string(cfg.numerator));
    meta["rows"] = rows;
    meta["max_bandwidth_mhz"] = cfg.max_bandwidth_mhz;
    meta["normalization"] = cfg.sweep.normalization;
    meta["shaded_region"] = {cfg.sweep.shaded_region.first, cfg.sweep.shaded_region.second};
    nlohmann::ordered_json bp;
    for (auto v : cfg.sweep.models)
        bp[std::string(to_string(v))] = TransportModel::make(v, cfg.transport).slots_per_wavelength;
    meta["slots_per_wavelength"] = bp;
    meta["reference_ratios"] = {{"R_wb", ref.ratios.spectrum_to_wavelength},
                                {"R_bm", ref.ratios.wavelength_to_antenna}};
    meta["columns"] = kSweepCsvHeader;
    return meta;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& os) {
    const auto s = build_scenario(cfg.scenario);
    const auto records = run_sweep(s, cfg.sweep, cfg.sweep_options());
    std::ostringstream csv;
    write_sweep_csv(csv, records);
    const auto& path = cfg.output_path;
    write_file_atomically(path, csv.str());
    try {
        write_file_atomically(sidecar_path(path), sweep_metadata(cfg, records.size()).dump(2) + "\n");
    } catch (...) {
        std::filesystem::remove(path);
        throw;
    }
    os << "wrote " << records.size() << " records to " << path << " (config " << config_hash(cfg) << ")\n";
    return kOk;
}

inline int cmd_ref_costs(const RunConfig& cfg, std::ostream& os) {
    const auto& in = cfg.economics;
    const auto r = reference_costs(in);
    os << "spectrum   c_w = " << format_g9(in.spectrum_gbp_per_mhz_per_habitant) << " GBP/MHz/habitant x "
       << format_g9(in.habitants) << " habitants / " << format_g9(in.lease_years) << " yr x "
       << format_g9(in.fx_gbp_usd) << " USD/GBP = " << format_g9(r.spectrum_usd_per_mhz_year) << " USD/MHz/yr\n"
       << "site       c_m = " << format_g9(in.site_usd_per_month) << " USD/month x 12 = "
       << format_g9(r.site_usd_per_year) << " USD/yr\n"
       << "wavelength c_b = " << format_g9(r.wavelength_usd_per_year) << " USD/yr\n"
       << "R_wb = c_w / c_b = " << format_g9(r.ratios.spectrum_to_wavelength) << '\n'
       << "R_bm = c_b / c_m = " << format_g9(r.ratios.wavelength_to_antenna) << '\n';
    return kOk;
}

/// Parses argv and dispatches. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Cost-optimal antenna and spectrum allocation for distributed MIMO over shared PONs", "mdmimo-pon"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "YAML run configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", common.seed, "override scenario.seed");
        sub->add_option("--numerator", common.numerator, "corrected | literal");
    };

    auto* gen = app.add_subcommand("generate-scenario", "write the scenario dump (JSON)");
    add_common(gen);
    gen->add_option("--out", common.out, "dump path (default: stdout)");

    OptimizeArgs opt_args;
    auto* opt = app.add_subcommand("optimize", "exhaustive search for one model and cost point");
    add_common(opt);
    opt->add_option("--model", opt_args.model, "fronthaul-overlay | fronthaul-shared | splitphy-shared")
        ->capture_default_str();
    opt->add_option("--r-wb", opt_args.r_wb, "spectrum-to-wavelength price ratio (default: reference)");
    opt->add_option("--r-bm", opt_args.r_bm, "wavelength-to-antenna price ratio (default: reference)");
    opt->add_option("--out", opt_args.record_out, "also write the JSON record here");
    opt->add_option("--dump-grid", opt_args.grid_out, "write every evaluated grid point as CSV");

    std::optional<unsigned> threads;
    auto* sweep = app.add_subcommand("sweep", "run the cost-ratio sensitivity sweep, write CSV + metadata");
    add_common(sweep);
    sweep->add_option("--model", common.model, "restrict the sweep to one model");
    sweep->add_option("--out", common.out, "CSV path (default: output_path from config)");
    sweep->add_option("--threads", threads, "worker threads, 0 = hardware concurrency");

    std::optional<double> fx;
    auto* ref = app.add_subcommand("ref-costs", "derive the reference price ratios");
    add_common(ref);
    ref->add_option("--fx", fx, "override economics.fx_gbp_usd");

    auto* defaults = app.add_subcommand("default-config", "print the reference configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    RunConfig cfg;
    try {
        cfg = resolve_config(common);
        if (sweep->parsed()) {
            if (common.model) cfg.sweep.models = {parse_variant(*common.model)};
            if (threads) cfg.threads = *threads;
        }
        if (ref->parsed() && fx) {
            cfg.economics.fx_gbp_usd = *fx;
            cfg.economics.validate();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate_scenario(cfg, common.out, out);
        if (opt->parsed()) return cmd_optimize(cfg, opt_args, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        if (ref->parsed()) return cmd_ref_costs(cfg, out);
        if (defaults->parsed()) {
            out << default_config_yaml();
            return kOk;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}

}  // namespace mdmimo::cli
