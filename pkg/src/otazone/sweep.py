"""Compliance sweep over (inter-element spacing, zone distance) combinations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .field import ArrayLayout, WaveSpec, chamber_array
from .testzone import (FomLimits, FomReport, TestZoneSpec, TIER1, TIER2, TIER3,
                       build_mesh, field_over_mesh, fom_values, default_zone)


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian (ies, D) grid, in meters, with the limit tiers to score.

    The distance axis must stay below half the Fraunhofer distance of the
    shortest array, (99 * min_ies)^2 / lambda, so the sweep never claims
    compliance where the setup is trivially far-field.
    """

    ies_values: Tuple[float, ...]
    d_values: Tuple[float, ...]
    tiers: Tuple[FomLimits, ...] = (TIER1, TIER2, TIER3)

    def __post_init__(self):
        ies = np.asarray(self.ies_values, dtype=float)
        d = np.asarray(self.d_values, dtype=float)
        if ies.size == 0 or d.size == 0:
            raise ValueError("grid axes must be non-empty")
        if np.any(np.diff(ies) <= 0) or np.any(np.diff(d) <= 0):
            raise ValueError("grid axes must be strictly increasing")
        object.__setattr__(self, "ies_values", tuple(ies))
        object.__setattr__(self, "d_values", tuple(d))

    def validate_cap(self, wave: WaveSpec) -> None:
        lam = wave.wavelength
        cap = (99.0 * min(self.ies_values)) ** 2 / lam
        if max(self.d_values) > cap * (1.0 + 1e-12):
            raise ValueError(
                f"max distance {max(self.d_values):.4g} m exceeds half-Fraunhofer cap {cap:.4g} m")


def default_grid(wave: WaveSpec, d_step_lambda: float = 1.0) -> SweepGrid:
    """Full study grid: ies 0.5..1.5 lambda step 0.05, D 40..2450 lambda."""
    lam = wave.wavelength
    ies = np.arange(0.5, 1.5 + 1e-9, 0.05) * lam
    d = np.arange(40.0, 2450.0 + 1e-9, d_step_lambda) * lam
    grid = SweepGrid(tuple(ies), tuple(d))
    grid.validate_cap(wave)
    return grid


@dataclass(frozen=True)
class SweepCell:
    ies: float
    d: float
    length: float
    r_mag: float
    sigma_mag: float
    r_phs: float
    reports: Tuple[FomReport, ...]  # one per tier, same FoM values


@dataclass(frozen=True)
class ComplianceMap:
    grid: SweepGrid
    cells: Tuple[SweepCell, ...]

    def cell(self, ies: float, d: float) -> SweepCell:
        for c in self.cells:
            if np.isclose(c.ies, ies) and np.isclose(c.d, d):
                return c
        raise KeyError(f"no cell at (ies={ies}, d={d})")


def run_sweep(grid: SweepGrid, wave: WaveSpec, tz_radius: float,
              n_elements: int = 100, n_edge: int = 25, depth_db: float = -6.0,
              taper_endpoint: str = "exclusive") -> ComplianceMap:
    """Evaluate the FoM once per (ies, D) cell and score every tier.

    The field is computed with zero excitation errors, so the map is
    deterministic. A failure inside any cell aborts the sweep with the
    offending coordinates attached.
    """
    cells: List[SweepCell] = []
    for ies in grid.ies_values:
        layout = chamber_array(ies, n_elements, n_edge, depth_db, taper_endpoint)
        for d in grid.d_values:
            try:
                spec = TestZoneSpec(distance=d, radius=tz_radius,
                                    pitch=wave.wavelength / 8.0)
                mesh = build_mesh(spec)
                values = field_over_mesh(layout, wave, mesh)
                rm, sm, rp = fom_values(mesh, values)
            except Exception as exc:
                raise RuntimeError(f"sweep cell (ies={ies}, d={d}) failed: {exc}") from exc
            reports = tuple(FomReport.from_values(rm, sm, rp, tier) for tier in grid.tiers)
            cells.append(SweepCell(ies, d, (n_elements - 1) * ies, rm, sm, rp, reports))
    return ComplianceMap(grid=grid, cells=tuple(cells))


def compact_frontier(cmap: ComplianceMap, tier_index: int) -> List[Tuple[float, float]]:
    """Pareto-minimal compliant (L, D) pairs under componentwise order.

    A compliant cell survives if no other compliant cell is at least as
    small in both array length and distance and strictly smaller in one.
    """
    compliant = [(c.length, c.d) for c in cmap.cells if c.reports[tier_index].passed]
    frontier = []
    for l1, d1 in compliant:
        dominated = any(
            (l2 <= l1 and d2 <= d1 and (l2 < l1 or d2 < d1))
            for l2, d2 in compliant)
        if not dominated:
            frontier.append((l1, d1))
    return sorted(set(frontier))
