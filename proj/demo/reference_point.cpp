// Optimal allocation at the reference price ratios for each transport model.

#include <cstdio>

#include "mdmimo/mdmimo.hpp"

int main() {
    using namespace mdmimo;

    const auto scenario = build_scenario(ScenarioConfig{});
    const auto ratios = reference_ratios(ReferenceCostInputs{});
    const auto prices = ratios_to_costpoint(ratios);

    std::printf("R_wb = %.4g, R_bm = %.4g, %zu PONs\n", ratios.spectrum_to_wavelength, ratios.wavelength_to_antenna,
                scenario.num_pons());
    for (auto variant : kAllVariants) {
        const auto transport = TransportModel::make(variant);
        const auto best = optimize(scenario, transport, prices, 50).best;
        std::printf("%-18s w* = %2d MHz  m* = %2zu  eta = %.6g bit/cu  rate = %.4g Gb/s  wavelengths = %zu\n",
                    std::string(to_string(variant)).c_str(), best.allocation.bandwidth_mhz,
                    best.allocation.num_antennas, best.eta, best.sum_rate / 1e9, best.n_wavelengths);
    }
}
