#!/usr/bin/env python3
"""Independent recomputation of scenario-derived quantities from a dump file.

Reads only the JSON dump (positions, config) and re-derives path gains,
received power, antenna ranking, sum rate and cost efficiency with numpy.

  scenario_oracle.py compute DUMP            print values as JSON
  scenario_oracle.py check DUMP FROZEN       compare against frozen values
"""
import json
import math
import sys

import numpy as np

REL_TOL = 1e-12


def gains(dump):
    cfg = dump["config"]
    prop = cfg["propagation"]
    users = np.array(dump["users"], dtype=float)
    ants = np.array(dump["antennas"], dtype=float)
    dx = users[:, None, 0] - ants[None, :, 0]
    dy = users[:, None, 1] - ants[None, :, 1]
    d = np.maximum(np.sqrt(dx * dx + dy * dy), prop["min_distance_m"] / 1000.0)
    pl = prop["ref_loss_db"] + 10.0 * prop["path_loss_exponent"] * np.log10(d)
    return 10.0 ** (-pl / 10.0)


def balanced_split(m, homed):
    # Even split over PONs; the +1 shares go to PONs with the most homed sites.
    n = len(homed)
    base, extra = divmod(m, n)
    order = sorted(range(n), key=lambda i: (-homed[i], i))
    out = [base] * n
    for i in order[:extra]:
        out[i] += 1
    return out


def compute(dump):
    cfg = dump["config"]
    g = gains(dump)
    k_users, m_ants = g.shape
    p_mw = 10.0 ** (cfg["tx_power_dbm"] / 10.0)
    n_mw_hz = 10.0 ** ((cfg["noise_density_dbm_hz"] + cfg["noise_figure_db"]) / 10.0)

    colsum = g.sum(axis=0)
    ranking = sorted(range(m_ants), key=lambda j: (-colsum[j], j))
    top20 = sorted(ranking[:20])

    all_ants = list(range(m_ants))
    r_all = p_mw * g[:, all_ants].sum(axis=1)
    w_hz = 50e6
    rate_50_64 = w_hz * float(np.sum(np.log2(1.0 + r_all / (n_mw_hz * w_hz))))

    # Split-PHY shared, w=50, m=64 at the reference ratios with c_b = 1.
    r_wb = 0.1138 * 1350 / 20 * 1.278 / 1510
    r_bm = 1510 / (1900 * 12)
    c_b, c_w, c_m = 1.0, r_wb, 1.0 / r_bm
    n_pons = dump["derived"]["num_pons"]
    homed = [0] * n_pons
    for p in dump["pon_homing"]:
        homed[p] += 1
    slots = 50 // 5
    m_i = balanced_split(64, homed)
    n_wl = sum(math.ceil(mi * slots / 320) for mi in m_i)
    cost = c_m * 64 + c_w * 50 + c_b * n_wl
    return {
        "received_power_user0_all": float(r_all[0]),
        "top20_antennas": top20,
        "sum_rate_w50_m64": rate_50_64,
        "eta_splitphy_w50_m64_reference": rate_50_64 / cost,
        "n_wavelengths_splitphy_w50_m64": n_wl,
    }


def check(values, frozen):
    bad = []
    for key, want in frozen.items():
        got = values[key]
        if isinstance(want, list) or isinstance(want, int):
            ok = got == want
        else:
            ok = abs(got - want) <= REL_TOL * abs(want)
        if not ok:
            bad.append(f"{key}: oracle {got!r} vs frozen {want!r}")
    return bad


def main(argv):
    if len(argv) < 3:
        print(__doc__)
        return 2
    with open(argv[2]) as f:
        dump = json.load(f)
    values = compute(dump)
    if argv[1] == "compute":
        print(json.dumps(values, indent=2))
        return 0
    with open(argv[3]) as f:
        frozen = json.load(f)
    bad = check(values, frozen)
    for line in bad:
        print("MISMATCH", line)
    print("oracle check:", "ok" if not bad else f"{len(bad)} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
