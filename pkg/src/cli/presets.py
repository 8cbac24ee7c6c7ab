"""
Desk-scale experiment presets.

Sample counts are reduced from the reference runs; each preset records
the reduction in scale_note, which is echoed into the run manifest.
"""

from typing import Any

from ..exceptions import ConfigurationError

PRESETS: dict[str, dict[str, Any]] = {
    "fig1": {
        "experiment": "rate-scaling",
        "kinds": ["goe", "gue", "gse"],
        "n_grid": [4, 8, 12, 16, 20, 24, 28, 32],
        "n_states": 5,
        "n_realizations": 2000,
        "p0_policy": "pure",
        "seed": 1,
        "scale_note": "2000 realizations per state (reference scale 10000); even N only",
    },
    "fig-gin": {
        "experiment": "gin-rate-scaling",
        "kinds": ["ginoe", "ginue", "ginse"],
        "n_grid": [4, 8, 12, 16, 20, 24, 28, 32],
        "n_states": 5,
        "n_realizations": 2000,
        "p0_policy": "pure",
        "seed": 2,
        "scale_note": "2000 realizations per state (reference scale 10000); even N only",
    },
    "fig2": {
        "experiment": "purity-decay",
        "kinds": ["goe", "gue", "gse", "ginoe", "ginue", "ginse"],
        "n_grid": [8],
        "p0_values": [1.0, 0.5, 0.125],
        "n_realizations": 200,
        "n_jumps": 32,
        "t_max": 0.25,
        "n_points": 41,
        "spacing": "linear",
        "ansatz_rate": "leading",
        "seed": 3,
        "scale_note": "200 realizations per curve (reference scale 500), 32 jump operators each",
    },
    "fig3": {
        "experiment": "rate-distribution",
        "kinds": ["goe"],
        "n_grid": [30],
        "n_states": 5000,
        "n_realizations": 1000,
        "hist_bins": 50,
        "seed": 4,
        "scale_note": "5000 states (reference scale 50000) x 1000 realizations",
    },
    "fig4": {
        "experiment": "cumulant-table",
        "kinds": ["gue", "ginue"],
        "n_grid": [4, 10, 30, 100, 300],
        "seed": 5,
        "scale_note": "closed-form cumulants; no sampling",
    },
    "diagnostics": {
        "experiment": "ensemble-diagnostics",
        "kinds": ["goe", "gue", "gse", "ginoe", "ginue", "ginse"],
        "n_grid": [200],
        "n_realizations": 50,
        "seed": 6,
        "scale_note": "50 samples per ensemble",
    },
}


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str) -> dict[str, Any]:
    """
    Copy of a preset's raw config values.

    Raises:
        ConfigurationError: If no preset has that name
    """
    try:
        preset = PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"Unknown preset {name!r}; available: {', '.join(PRESETS)}",
            {"preset": name},
        ) from None
    return {key: list(value) if isinstance(value, list) else value for key, value in preset.items()}
