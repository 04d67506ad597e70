"""Built-in parameter sets for the reproduction figures.

Each preset is a plain config dict in the same schema the CLI accepts from a
JSON file, so presets and user configs go through one parsing path.  The
system parameters follow the published operating points:

* fig3a / fig4a / fig5 / fig7a: directly coupled pair at 5.5 GHz with
  anharmonicities 0.15 and 0.10 GHz (iSWAP operating point).
* fig3b / fig4b: directly coupled pair at 7.16 GHz with anharmonicities
  0.087 and 0.114 GHz, qubit B parked on the CZ resonance.
* fig6a / fig6b / fig7b: qubits at 8.2 and 8.45 GHz around a 6.9 GHz cavity
  (CZ through the cavity-mediated coupling).

Axis ranges for the 2D maps are not pinned by any quoted number; they are
chosen to span weak through strong coupling so the 95% and 99% iso-fidelity
contours fall inside the map.
"""

from __future__ import annotations

import copy

_DIRECT_ISWAP_SYSTEM = {
    "kind": "direct",
    "qubit_a": {"freq": 5.5, "anharm": 0.15, "n_levels": 3},
    "qubit_b": {"freq": 5.5, "anharm": 0.10, "n_levels": 3},
    "g": 0.011,
}

_DIRECT_CZ_SYSTEM = {
    "kind": "direct",
    "qubit_a": {"freq": 7.16, "anharm": 0.087, "n_levels": 3},
    "qubit_b": {"freq": 7.274, "anharm": 0.114, "n_levels": 3},
    "g": 0.0091,
}

_INDIRECT_CZ_SYSTEM = {
    "kind": "indirect",
    "qubit_a": {"freq": 8.2, "anharm": 0.20, "n_levels": 3},
    "qubit_b": {"freq": 8.45, "anharm": 0.25, "n_levels": 3},
    "cavity_freq": 6.9,
    "g_qc": 0.199,
    "n_photons": 5,
}

_PRESETS: dict[str, dict] = {
    "fig3a": {
        "mode": "sweep1d",
        "system": _DIRECT_ISWAP_SYSTEM,
        "gate": "iswap",
        "axes": [{"name": "g_over_delta_b", "start": 0.01, "stop": 0.5, "n_points": 50}],
    },
    "fig3b": {
        "mode": "ramp",
        "system": _DIRECT_CZ_SYSTEM,
        "gate": "cz",
        "axes": [{"name": "g_over_delta_b", "start": 0.10, "stop": 0.45, "n_points": 36}],
        "tau_d_list": [0.0, 5.0, 10.0, 20.0, 40.0],
    },
    "fig4a": {
        "mode": "sweep2d",
        "system": {**copy.deepcopy(_DIRECT_ISWAP_SYSTEM), "g": 0.2},
        "gate": "iswap",
        "axes": [
            {"name": "delta_a_over_g", "start": 0.5, "stop": 8.0, "n_points": 16},
            {"name": "delta_b_over_g", "start": 0.5, "stop": 8.0, "n_points": 16},
        ],
    },
    "fig4b": {
        "mode": "sweep2d",
        "system": {**copy.deepcopy(_DIRECT_CZ_SYSTEM), "g": 0.2},
        "gate": "cz",
        "axes": [
            {"name": "delta_a_over_g", "start": 0.5, "stop": 8.0, "n_points": 16},
            {"name": "delta_b_over_g", "start": 0.5, "stop": 8.0, "n_points": 16},
        ],
    },
    "fig5": {
        "mode": "sweep2d",
        "system": _DIRECT_ISWAP_SYSTEM,
        "gate": "iswap",
        "tie_anharm": True,
        "axes": [
            {"name": "g_abs", "start": 0.005, "stop": 0.06, "n_points": 12},
            {"name": "delta_b_abs", "start": 0.05, "stop": 0.25, "n_points": 11},
        ],
    },
    "fig6a": {
        "mode": "sweep2d",
        "system": {**copy.deepcopy(_INDIRECT_CZ_SYSTEM), "g_qc": 0.2},
        "gate": "cz",
        "axes": [
            {"name": "delta_a_over_g", "start": 0.5, "stop": 8.0, "n_points": 16},
            {"name": "delta_b_over_g", "start": 0.5, "stop": 8.0, "n_points": 16},
        ],
    },
    "fig6b": {
        "mode": "sweep2d",
        "system": _INDIRECT_CZ_SYSTEM,
        "gate": "cz",
        "tie_anharm": True,
        "axes": [
            {"name": "geff_abs", "start": 0.005, "stop": 0.05, "n_points": 10},
            {"name": "delta_b_abs", "start": 0.05, "stop": 0.3, "n_points": 11},
        ],
    },
    "fig7a": {
        "mode": "truncation",
        "system": _DIRECT_ISWAP_SYSTEM,
        "gate": "iswap",
        "axes": [{"name": "g_over_delta_b", "start": 0.05, "stop": 0.5, "n_points": 19}],
        "n_levels_list": [3, 4, 5],
    },
    "fig7b": {
        "mode": "truncation",
        "system": _INDIRECT_CZ_SYSTEM,
        "gate": "cz",
        "axes": [{"name": "geff_over_delta_b", "start": 0.05, "stop": 0.5, "n_points": 19}],
        "n_levels_list": [3, 4, 5],
    },
    # Base system for quick dispersive-coupling queries from the command line.
    "effective": {
        "mode": "effective",
        "system": _INDIRECT_CZ_SYSTEM,
    },
}

FIGURE_IDS = tuple(sorted(k for k in _PRESETS if k.startswith("fig")))


def figure_config(figure_id: str) -> dict:
    """Deep copy of the named preset config dict."""
    try:
        preset = _PRESETS[figure_id]
    except KeyError:
        raise ValueError(
            f"unknown figure id {figure_id!r}; expected one of {sorted(_PRESETS)}"
        ) from None
    return copy.deepcopy(preset)
