"""Two-array uplink study: MF/ZF combining under DUT weight errors.

The main array plays the desired user and an identical interferer array
sits at an angle alpha from boresight, both illuminating a linear DUT
array inside the test zone. The DUT acts as a base station receiving the
uplink; combining weights are matched filter or zero forcing, optionally
distorted by complex Gaussian errors, and scored by the sum rate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .field import ArrayLayout, WaveSpec, chamber_array
from .tolerance import ExcitationErrorModel, draw_errors


@dataclass(frozen=True)
class DutArraySpec:
    """Uniform linear receive array centered in the test zone, parallel to x."""

    n_elements: int = 49
    ies: float = 0.0  # meters; 0 means half-wavelength at build time

    def __post_init__(self):
        if self.n_elements < 2:
            raise ValueError("DUT needs at least 2 elements")

    def spacing(self, wave: WaveSpec) -> float:
        return self.ies if self.ies > 0 else wave.wavelength / 2.0

    def points(self, wave: WaveSpec, center_distance: float) -> np.ndarray:
        d = self.spacing(wave)
        x = (np.arange(self.n_elements) - (self.n_elements - 1) / 2.0) * d
        return np.column_stack([x, np.full(self.n_elements, center_distance)])


def alpha_min_deg(length: float, distance: float) -> float:
    """Minimum interferer angle when the two arrays abut on the same line."""
    if length <= 0 or distance <= 0:
        raise ValueError("length and distance must be positive")
    return float(np.degrees(np.arctan2(length, distance)))


def interferer_elements(layout: ArrayLayout, distance: float,
                        alpha_deg: float) -> np.ndarray:
    """Element coordinates of the interferer array.

    The array center sits at distance D from the test-zone center, at
    angle alpha from boresight (boresight points from the zone center to
    the main-array center), oriented broadside to the zone center. At
    alpha = 0 it coincides with the main array.
    """
    a = np.radians(alpha_deg)
    center = np.array([distance * np.sin(a), distance * (1.0 - np.cos(a))])
    u = np.array([np.cos(a), np.sin(a)])  # along the rotated array line
    return center[None, :] + layout.positions[:, None] * u[None, :]


def _superposed_field(element_xy: np.ndarray, weights: np.ndarray,
                      wave: WaveSpec, points: np.ndarray) -> np.ndarray:
    r = np.hypot(points[:, 0, None] - element_xy[None, :, 0],
                 points[:, 1, None] - element_xy[None, :, 1])
    if np.any(r == 0.0):
        raise ValueError("field point coincides with an element")
    return (weights[None, :] * np.exp(-1j * wave.wavenumber * r) / (4.0 * np.pi * r)).sum(axis=1)


def build_channel(ma_layout: ArrayLayout, distance: float, alpha_deg: float,
                  dut: DutArraySpec, wave: WaveSpec) -> np.ndarray:
    """2 x N_DUT channel: row 0 main array, row 1 interferer array.

    Entries are the superposed error-free fields at each DUT element,
    normalized to unit mean-square entry so the SNR axis is per receive
    element.
    """
    pts = dut.points(wave, distance)
    ma_xy = np.column_stack([ma_layout.positions, np.zeros(ma_layout.n_elements)])
    ia_xy = interferer_elements(ma_layout, distance, alpha_deg)
    h_ma = _superposed_field(ma_xy, ma_layout.taper, wave, pts)
    h_ia = _superposed_field(ia_xy, ma_layout.taper, wave, pts)
    h = np.stack([h_ma, h_ia])
    scale = np.sqrt(np.mean(np.abs(h) ** 2))
    return h / scale


def mf_weights(h: np.ndarray) -> np.ndarray:
    """Matched-filter combiner: conjugate transpose of the channel."""
    return h.conj().T


def zf_weights(h: np.ndarray) -> np.ndarray:
    """Zero-forcing combiner: right pseudo-inverse, H @ W = I.

    The 2x2 Gram matrix is inverted in closed form; a near-singular Gram
    matrix means the two array channels are nearly collinear and zero
    forcing is meaningless.
    """
    gram = h @ h.conj().T
    det = gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]
    tr = gram[0, 0].real + gram[1, 1].real
    if abs(det) < 1e-12 * (tr / 2.0) ** 2:
        raise np.linalg.LinAlgError("channel rows nearly collinear; ZF ill-conditioned")
    inv = np.array([[gram[1, 1], -gram[0, 1]],
                    [-gram[1, 0], gram[0, 0]]]) / det
    return h.conj().T @ inv


def perturb_weights(w: np.ndarray, sigma_dut_db: float,
                    rng: np.random.Generator) -> np.ndarray:
    """Entrywise (1 + eps) distortion with the complex Gaussian error model."""
    if sigma_dut_db == 0.0:
        return w.copy()
    model = ExcitationErrorModel(sigma_dut_db)
    eps = draw_errors(model, w.size, rng).reshape(w.shape)
    return (1.0 + eps) * w


def sinr(h: np.ndarray, w: np.ndarray, snr_db: float,
         noise_norms: Optional[np.ndarray] = None) -> Tuple[float, float]:
    """Per-user uplink SINR with linear combining.

    Receive model: unit-variance noise per DUT element, per-user transmit
    power rho = 10^(snr_db/10) after channel normalization. With
    G = H @ W, user u sees rho*|G[u,u]|^2 of signal, rho*|G[v,u]|^2 of
    interference, and ||w_u||^2 of noise.

    ``noise_norms`` overrides the per-column noise powers; the weight
    error study passes the nominal (error-free) combiner norms so the
    noise floor stays anchored while the errors distort the gains.
    """
    g = h @ w
    rho = 10.0 ** (snr_db / 10.0)
    norms = np.sum(np.abs(w) ** 2, axis=0) if noise_norms is None else np.asarray(noise_norms)
    if np.any(norms == 0.0):
        raise ValueError("zero-norm combiner column")
    out = []
    for u in (0, 1):
        v = 1 - u
        out.append(rho * abs(g[u, u]) ** 2 / (rho * abs(g[v, u]) ** 2 + norms[u]))
    return out[0], out[1]


def sum_rate(sinr_pair: Sequence[float]) -> float:
    """Aggregate spectral efficiency, bits/s/Hz."""
    if min(sinr_pair) < 0:
        raise ValueError("SINR must be non-negative")
    return float(sum(np.log2(1.0 + s) for s in sinr_pair))


@dataclass(frozen=True)
class StudyConfig:
    snr_db: Tuple[float, ...] = (-10.0, 0.0, 10.0, 20.0)
    sigma_dut_db: Tuple[float, ...] = tuple(np.round(np.arange(0.0, 2.0 + 1e-9, 0.1), 10))
    alpha_offsets_deg: Tuple[float, ...] = (0.0, 15.0)
    precoders: Tuple[str, ...] = ("MF", "ZF")
    n_mc: int = 1000
    rng_seed: int = 0
    dut: DutArraySpec = field(default_factory=DutArraySpec)


@dataclass(frozen=True)
class SumRatePoint:
    length: float
    distance: float
    alpha_deg: float
    precoder: str
    snr_db: float
    sigma_dut_db: float
    avg_sum_rate: float


def _batched_sum_rates(h: np.ndarray, w_batch: np.ndarray, snr_db: float,
                       noise_norms: np.ndarray) -> np.ndarray:
    """Sum rate per realization; w_batch has shape (m, n_dut, 2)."""
    g = np.einsum('un,mnv->muv', h, w_batch)
    rho = 10.0 ** (snr_db / 10.0)
    sr = np.zeros(w_batch.shape[0])
    for u in (0, 1):
        v = 1 - u
        s = rho * np.abs(g[:, u, u]) ** 2 / (rho * np.abs(g[:, v, u]) ** 2 + noise_norms[u])
        sr += np.log2(1.0 + s)
    return sr


def run_study(geometries: Sequence[Tuple[float, float]], wave: WaveSpec,
              cfg: StudyConfig, taper_endpoint: str = "exclusive") -> List[SumRatePoint]:
    """Average sum rate over weight-error realizations for each study cell.

    ``geometries`` holds (ies, D) pairs in meters. The unperturbed W is
    computed once per (geometry, angle, precoder); realization streams
    are keyed by (seed, geometry, angle, sigma index, iteration), so the
    surface is thread-count independent and the same error draws are
    shared between precoders (paired comparison, lower variance on
    MF-vs-ZF differences). The noise floor uses the nominal combiner
    norms; errors distort only the signal and interference gains.
    """
    results: List[SumRatePoint] = []
    for gi, (ies, dist) in enumerate(geometries):
        layout = chamber_array(ies, endpoint=taper_endpoint)
        a_min = alpha_min_deg(layout.length, dist)
        for ai, off in enumerate(cfg.alpha_offsets_deg):
            alpha = a_min + off
            h = build_channel(layout, dist, alpha, cfg.dut, wave)
            weights = {prec: (mf_weights(h) if prec == "MF" else zf_weights(h))
                       for prec in cfg.precoders}
            for si, sigma in enumerate(cfg.sigma_dut_db):
                n_dut = cfg.dut.n_elements
                if sigma == 0.0:
                    eps_batch = np.zeros((1, n_dut, 2), dtype=complex)
                else:
                    model = ExcitationErrorModel(sigma)
                    eps_batch = np.empty((cfg.n_mc, n_dut, 2), dtype=complex)
                    for it in range(cfg.n_mc):
                        rng = np.random.default_rng([cfg.rng_seed, gi, ai, si, it])
                        eps_batch[it] = draw_errors(model, 2 * n_dut, rng).reshape(n_dut, 2)
                for prec in cfg.precoders:
                    w = weights[prec]
                    noise_norms = np.sum(np.abs(w) ** 2, axis=0)
                    w_batch = (1.0 + eps_batch) * w[None, :, :]
                    for snr in cfg.snr_db:
                        avg = float(_batched_sum_rates(h, w_batch, snr, noise_norms).mean())
                        results.append(SumRatePoint(layout.length, dist, alpha,
                                                    prec, snr, sigma, avg))
    return results
