"""Test-zone sample mesh and plane-wave figures of merit.

The test zone is a circle of radius R centered at (0, D), sampled on a
square grid with equal pitch in x and y so the sample density is uniform.
The three figures of merit are the magnitude dynamic range (dB), the
sample standard deviation of the dB magnitudes, and the worst per-row
circular phase range (degrees).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .field import ArrayLayout, WaveSpec, field_at_points


@dataclass(frozen=True)
class TestZoneSpec:
    """Circular test zone at (0, distance) with the given radius and mesh pitch."""

    distance: float
    radius: float
    pitch: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.pitch <= 0:
            raise ValueError("pitch must be positive")
        if self.distance <= self.radius:
            raise ValueError("test zone must not intersect the array line (D > R)")


def default_zone(wave: WaveSpec, distance: float) -> TestZoneSpec:
    """Standard zone: radius 99*lambda/8 sampled at lambda/8 pitch."""
    lam = wave.wavelength
    return TestZoneSpec(distance=distance, radius=99.0 * lam / 8.0, pitch=lam / 8.0)


@dataclass(frozen=True)
class TestZoneMesh:
    """Flat point list plus row structure (constant-y stripes).

    ``row_slices[i]`` selects row i inside ``points``; within a row the
    points are ordered by increasing x.
    """

    points: np.ndarray
    row_slices: Tuple[slice, ...]

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_rows(self) -> int:
        return len(self.row_slices)


def build_mesh(spec: TestZoneSpec) -> TestZoneMesh:
    """Grid points inside the disc, anchored so (0, D) is a grid node.

    Boundary points (distance exactly R) are included; the comparison
    carries a tiny relative slack so exact-radius lattices are stable.
    """
    n_max = int(np.floor(spec.radius / spec.pitch * (1.0 + 1e-12)))
    r2 = (spec.radius / spec.pitch) ** 2 * (1.0 + 1e-12)
    rows = []
    slices = []
    start = 0
    for b in range(-n_max, n_max + 1):
        half = np.floor(np.sqrt(max(r2 - b * b, 0.0)))
        a = np.arange(-half, half + 1)
        if a.size == 0:
            continue
        xs = a * spec.pitch
        ys = np.full(a.size, spec.distance + b * spec.pitch)
        rows.append(np.column_stack([xs, ys]))
        slices.append(slice(start, start + a.size))
        start += a.size
    if start == 0:
        raise ValueError("mesh contains no points; radius too small for pitch")
    return TestZoneMesh(points=np.concatenate(rows), row_slices=tuple(slices))


def field_over_mesh(layout: ArrayLayout, wave: WaveSpec,
                    mesh: TestZoneMesh) -> np.ndarray:
    """E_z at every mesh point, in mesh order."""
    if mesh.n_points == 0:
        raise ValueError("empty mesh")
    return field_at_points(layout, wave, mesh.points)


def r_mag(values: np.ndarray) -> float:
    """Dynamic range of the field magnitudes in dB."""
    mags = np.abs(np.asarray(values))
    if mags.size == 0:
        raise ValueError("need at least one sample")
    if np.any(mags == 0.0):
        raise ValueError("zero-magnitude sample; dB undefined")
    db = 20.0 * np.log10(mags)
    return float(db.max() - db.min())


def sigma_mag(values: np.ndarray) -> float:
    """Sample standard deviation (divisor N-1) of the dB magnitudes."""
    mags = np.abs(np.asarray(values))
    if mags.size < 2:
        raise ValueError("need at least two samples")
    if np.any(mags == 0.0):
        raise ValueError("zero-magnitude sample; dB undefined")
    return float(np.std(20.0 * np.log10(mags), ddof=1))


def circular_range_deg(phases_deg: np.ndarray) -> float:
    """Wrap-correct phase spread: 360 minus the largest circular gap, capped at 180.

    A row with phases {359, 2} spans 3 degrees, not 357; spreads beyond
    180 degrees are clamped since that is the largest deviation that can
    physically occur.
    """
    phases = np.sort(np.mod(np.asarray(phases_deg, dtype=float), 360.0))
    if phases.size == 0:
        raise ValueError("empty phase row")
    if phases.size == 1:
        return 0.0
    gaps = np.diff(phases)
    wrap_gap = 360.0 - (phases[-1] - phases[0])
    largest = max(gaps.max(), wrap_gap)
    return float(min(360.0 - largest, 180.0))


def r_phs(mesh: TestZoneMesh, values: np.ndarray) -> float:
    """Worst-row circular phase range in degrees."""
    values = np.asarray(values)
    worst = 0.0
    for sl in mesh.row_slices:
        row = values[sl]
        if row.size == 0:
            raise ValueError("empty mesh row")
        worst = max(worst, circular_range_deg(np.degrees(np.angle(row))))
    return worst


@dataclass(frozen=True)
class FomLimits:
    """Acceptance thresholds for the three figures of merit."""

    sigma_mag_max: float
    r_mag_max: float
    r_phs_max: float

    def __post_init__(self):
        if min(self.sigma_mag_max, self.r_mag_max, self.r_phs_max) <= 0:
            raise ValueError("all limits must be strictly positive")


TIER1 = FomLimits(sigma_mag_max=0.25, r_mag_max=1.0, r_phs_max=10.0)
TIER2 = FomLimits(sigma_mag_max=0.225, r_mag_max=0.9, r_phs_max=9.0)
TIER3 = FomLimits(sigma_mag_max=0.2, r_mag_max=0.8, r_phs_max=8.0)


@dataclass(frozen=True)
class FomReport:
    r_mag: float
    sigma_mag: float
    r_phs: float
    passed: bool
    failing_foms: Tuple[str, ...]

    @staticmethod
    def from_values(rm: float, sm: float, rp: float, limits: FomLimits) -> "FomReport":
        failing = []
        if rm > limits.r_mag_max:
            failing.append("R_mag")
        if sm > limits.sigma_mag_max:
            failing.append("sigma_mag")
        if rp > limits.r_phs_max:
            failing.append("R_phs")
        return FomReport(rm, sm, rp, passed=not failing, failing_foms=tuple(failing))


def fom_values(mesh: TestZoneMesh, values: np.ndarray) -> Tuple[float, float, float]:
    """(R_mag, sigma_mag, R_phs) of one field realization over the mesh."""
    return r_mag(values), sigma_mag(values), r_phs(mesh, values)


def evaluate_fom(layout: ArrayLayout, wave: WaveSpec, spec: TestZoneSpec,
                 limits: FomLimits) -> FomReport:
    """Synthesize the field over the zone mesh and score it against the limits."""
    mesh = build_mesh(spec)
    values = field_over_mesh(layout, wave, mesh)
    rm, sm, rp = fom_values(mesh, values)
    return FomReport.from_values(rm, sm, rp, limits)
