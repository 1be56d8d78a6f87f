"""Run configuration: JSON parsing, defaults, validation, canonical form.

Geometry keys are wavelength-denominated (``*_lambda``); everything is
converted to meters once, at load time. Unknown keys are rejected so a
typo cannot silently fall back to a default.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .field import WaveSpec
from .testzone import FomLimits, TIER1, TIER2, TIER3

# Table of the five compact (ies, D) picks, in wavelengths.
DEFAULT_GEOMETRIES_LAMBDA: Tuple[Tuple[float, float], ...] = (
    (1.35, 286.0), (1.2, 441.0), (1.0, 469.0), (0.7, 564.0), (0.7, 591.0))

_DEFAULTS: Dict[str, object] = {
    "frequency_hz": 28e9,
    "n_elements": 100,
    "taper_edge": 25,
    "taper_depth_db": -6.0,
    "taper_endpoint": "exclusive",
    "tz_radius_lambda": 99.0 / 8.0,
    "mesh_pitch_lambda": 1.0 / 8.0,
    "ies_lambda": [round(x, 10) for x in np.arange(0.5, 1.5 + 1e-9, 0.05)],
    "d_lambda": None,  # derived from d_range_lambda/d_step_lambda when absent
    "d_range_lambda": [40.0, 2450.0],
    "d_step_lambda": 1.0,
    "geometries_lambda": [list(g) for g in DEFAULT_GEOMETRIES_LAMBDA],
    "limits": {"sigma_mag_db": 0.25, "r_mag_db": 1.0, "r_phs_deg": 10.0},
    "sigma_step_db": 0.01,
    "n_mc_tolerance": 100,
    "tolerance_fail_rule": "any",
    "max_sigma_db": 2.0,
    "snr_db": [-10.0, 0.0, 10.0, 20.0],
    "sigma_dut_db": [round(x, 10) for x in np.arange(0.0, 2.0 + 1e-9, 0.1)],
    "alpha_offsets_deg": [0.0, 15.0],
    "n_mc_precode": 1000,
    "dut_elements": 49,
    "dut_ies_lambda": 0.5,
    "seed": 0,
}


class ConfigError(ValueError):
    """Raised when a config file violates a module precondition."""


@dataclass(frozen=True)
class RunConfig:
    raw: Dict[str, object]

    def __getitem__(self, key: str):
        return self.raw[key]

    @property
    def wave(self) -> WaveSpec:
        return WaveSpec(frequency=float(self.raw["frequency_hz"]))

    @property
    def wavelength(self) -> float:
        return self.wave.wavelength

    @property
    def tz_radius(self) -> float:
        return float(self.raw["tz_radius_lambda"]) * self.wavelength

    @property
    def ies_values(self) -> List[float]:
        return [v * self.wavelength for v in self.raw["ies_lambda"]]

    @property
    def d_values(self) -> List[float]:
        lam = self.wavelength
        if self.raw["d_lambda"] is not None:
            return [v * lam for v in self.raw["d_lambda"]]
        lo, hi = self.raw["d_range_lambda"]
        step = float(self.raw["d_step_lambda"])
        return [v * lam for v in np.arange(lo, hi + 1e-9, step)]

    @property
    def geometries(self) -> List[Tuple[float, float]]:
        lam = self.wavelength
        return [(i * lam, d * lam) for i, d in self.raw["geometries_lambda"]]

    @property
    def limits(self) -> FomLimits:
        lim = self.raw["limits"]
        return FomLimits(sigma_mag_max=float(lim["sigma_mag_db"]),
                         r_mag_max=float(lim["r_mag_db"]),
                         r_phs_max=float(lim["r_phs_deg"]))

    def canonical_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:12]


def _validate(cfg: Dict[str, object]) -> None:
    def fail(msg: str):
        raise ConfigError(msg)

    if cfg["frequency_hz"] <= 0:
        fail("frequency_hz must be positive")
    n = cfg["n_elements"]
    if n < 1:
        fail("n_elements must be >= 1")
    if 2 * cfg["taper_edge"] > n:
        fail(f"taper_edge={cfg['taper_edge']}: 2*taper_edge exceeds n_elements={n}")
    if cfg["taper_depth_db"] > 0:
        fail("taper_depth_db must be <= 0")
    if cfg["taper_endpoint"] not in ("inclusive", "exclusive"):
        fail("taper_endpoint must be 'inclusive' or 'exclusive'")
    if cfg["tz_radius_lambda"] <= 0 or cfg["mesh_pitch_lambda"] <= 0:
        fail("tz_radius_lambda and mesh_pitch_lambda must be positive")
    ies = list(cfg["ies_lambda"])
    if not ies or any(b <= a for a, b in zip(ies, ies[1:])):
        fail("ies_lambda must be non-empty and strictly increasing")
    if min(ies) <= 0:
        fail("ies_lambda values must be positive")
    if cfg["d_lambda"] is not None:
        d = list(cfg["d_lambda"])
        if not d or any(b <= a for a, b in zip(d, d[1:])):
            fail("d_lambda must be non-empty and strictly increasing")
    if cfg["d_step_lambda"] <= 0 or cfg["sigma_step_db"] <= 0:
        fail("step sizes must be positive")
    if cfg["n_mc_tolerance"] < 1 or cfg["n_mc_precode"] < 1:
        fail("Monte-Carlo counts must be >= 1")
    if cfg["tolerance_fail_rule"] not in ("any", "majority"):
        fail("tolerance_fail_rule must be 'any' or 'majority'")
    lim = cfg["limits"]
    extra = set(lim) - {"sigma_mag_db", "r_mag_db", "r_phs_deg"}
    if extra:
        fail(f"unknown limit keys: {sorted(extra)}")
    for g in cfg["geometries_lambda"]:
        if len(g) != 2 or g[0] <= 0 or g[1] <= 0:
            fail(f"bad geometry entry {g}; expected [ies_lambda, d_lambda] > 0")
    if cfg["dut_elements"] < 2:
        fail("dut_elements must be >= 2")
    if cfg["dut_ies_lambda"] <= 0:
        fail("dut_ies_lambda must be positive")


def load_config(data: Optional[Dict[str, object]] = None,
                path: Optional[str] = None) -> RunConfig:
    """Build a fully validated config from a dict or a JSON file.

    Omitted keys take the built-in defaults; unknown keys are an error.
    """
    if path is not None:
        with open(path) as fh:
            data = json.load(fh)
    data = dict(data or {})
    unknown = set(data) - set(_DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    merged: Dict[str, object] = {}
    for key, default in _DEFAULTS.items():
        if key in data:
            merged[key] = data[key]
        elif isinstance(default, dict):
            merged[key] = dict(default)
        elif isinstance(default, list):
            merged[key] = [list(v) if isinstance(v, list) else v for v in default]
        else:
            merged[key] = default
    _validate(merged)
    return RunConfig(raw=merged)
