"""Brute-force wavefield verification engine.

Synthesizes band-limited plane-wave fields on a spherical observation
surface, expands them in spherical harmonics (both analytically through the
Jacobi-Anger expansion and numerically through quadrature projection),
injects reproducible circularly-symmetric white Gaussian noise, and measures
per-mode SNR curves so the closed-form critical frequencies can be checked
against detection thresholds empirically.

Noise is generated per node with variance sigma0_sq / w_q (w_q the node's
quadrature weight); the projected mode-domain noise then has variance exactly
sigma0_sq and is exactly white across (n, m), because both follow from the
quadrature rule's harmonic-product exactness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, ResolutionError
from .specfun import QuadratureRule, harmonic_matrix, mode_indices, sph_bessel_j

__all__ = [
    "PlaneWaveSource",
    "SphericalGrid",
    "ModeSpectrum",
    "NoiseModel",
    "synthesize_field",
    "theoretical_modes",
    "analyze_modes",
    "add_noise",
    "mode_snr",
    "empirical_critical_frequency",
    "parseval_check",
]

_SPEED_OF_LIGHT = 299792458.0


@dataclass(frozen=True)
class PlaneWaveSource:
    """Far-field plane wave: arrival direction (theta, phi) and a complex
    amplitude spectrum.

    The amplitude is either a scalar (flat spectrum) or an array aligned
    with the frequency grid handed to the synthesis operations; it must
    vanish outside the scenario band (a construction constraint on callers).
    """

    theta: float
    phi: float
    amplitude: complex | np.ndarray = 1.0 + 0.0j

    def __post_init__(self) -> None:
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise DomainError("source direction must be finite angles")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)
        amp = np.asarray(self.amplitude, dtype=complex)
        if amp.ndim > 1:
            raise DomainError(
                f"amplitude must be a scalar or 1-D spectrum, got shape {amp.shape}"
            )
        amp.setflags(write=False)
        object.__setattr__(self, "amplitude", amp)

    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector of the arrival direction."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    def spectrum_on(self, freqs: np.ndarray) -> np.ndarray:
        """Amplitude spectrum aligned with freqs (broadcasting scalars)."""
        if self.amplitude.ndim == 0:
            return np.full(freqs.shape, complex(self.amplitude))
        if self.amplitude.size != freqs.size:
            raise DomainError(
                f"amplitude spectrum has {self.amplitude.size} samples but the "
                f"frequency grid has {freqs.size}"
            )
        return self.amplitude


@dataclass(frozen=True)
class SphericalGrid:
    """Observation surface: sphere radius plus a quadrature rule.

    For alias-free analysis up to degree N of a field with harmonic content
    up to degree N_field, the rule must satisfy max_degree >= N + N_field.
    """

    radius: float
    rule: QuadratureRule

    def __post_init__(self) -> None:
        radius = float(self.radius)
        if not (math.isfinite(radius) and radius > 0):
            raise DomainError(f"grid radius must be finite and > 0, got {radius!r}")
        object.__setattr__(self, "radius", radius)


@dataclass(frozen=True)
class ModeSpectrum:
    """Mode-domain field Psi_nm(r, omega): coeffs[(n*n + n + m), freq_index].

    The plane-wave excitation alpha_nm is recoverable by dividing out
    j_n(omega r / c) wherever it is nonzero.
    """

    radius: float
    freqs: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        freqs = np.asarray(self.freqs, dtype=float)
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if freqs.ndim != 1:
            raise DomainError("freqs must be a 1-D grid")
        if coeffs.ndim != 2 or coeffs.shape[1] != freqs.size:
            raise DomainError(
                f"coeffs must have shape ((N+1)^2, {freqs.size}), got {coeffs.shape}"
            )
        side = math.isqrt(coeffs.shape[0])
        if side * side != coeffs.shape[0]:
            raise DomainError(
                f"coeffs first dimension {coeffs.shape[0]} is not a perfect square"
            )
        freqs.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def max_degree(self) -> int:
        return math.isqrt(self.coeffs.shape[0]) - 1


@dataclass(frozen=True)
class NoiseModel:
    """White-noise description: per-mode noise power sigma0_sq, peak signal
    spectrum power alpha_max_sq, and the generator seed.

    sigma0_sq = 0 is the noiseless degenerate case: add_noise is the
    identity and SNR is undefined.
    """

    sigma0_sq: float
    alpha_max_sq: float
    seed: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma0_sq) and self.sigma0_sq >= 0):
            raise DomainError(f"sigma0_sq must be >= 0, got {self.sigma0_sq!r}")
        if not (math.isfinite(self.alpha_max_sq) and self.alpha_max_sq > 0):
            raise DomainError(f"alpha_max_sq must be > 0, got {self.alpha_max_sq!r}")
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise DomainError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def snr_alpha_max(self) -> float:
        """Peak SNR alpha_max_sq / sigma0_sq."""
        if self.sigma0_sq == 0:
            raise DomainError("snr_alpha_max is undefined for sigma0_sq = 0")
        return self.alpha_max_sq / self.sigma0_sq


def _check_freqs(freqs) -> np.ndarray:
    freqs = np.asarray(freqs, dtype=float)
    if freqs.ndim != 1 or freqs.size == 0:
        raise DomainError("frequency grid must be a nonempty 1-D array")
    if np.any(~np.isfinite(freqs)) or np.any(freqs < 0):
        raise DomainError("frequencies must be finite and >= 0")
    return freqs


def synthesize_field(
    sources: Sequence[PlaneWaveSource],
    grid: SphericalGrid,
    freqs,
    *,
    wave_speed_c: float = _SPEED_OF_LIGHT,
) -> np.ndarray:
    """Superpose plane waves on the grid: sum of A(omega) e^{i k R x.y}.

    Returns a complex array of shape (nodes, frequencies).
    """
    if len(sources) == 0:
        raise DomainError("synthesize_field requires at least one source")
    freqs = _check_freqs(freqs)
    if wave_speed_c <= 0:
        raise DomainError(f"wave speed must be > 0, got {wave_speed_c!r}")
    k = 2.0 * np.pi * freqs / wave_speed_c
    st = np.sin(grid.rule.theta)
    nodes = np.column_stack(
        (st * np.cos(grid.rule.phi), st * np.sin(grid.rule.phi), np.cos(grid.rule.theta))
    )
    field = np.zeros((len(grid.rule), freqs.size), dtype=complex)
    for src in sources:
        amp = src.spectrum_on(freqs)
        projection = nodes @ src.unit_vector()
        field += amp[None, :] * np.exp(
            1j * grid.radius * projection[:, None] * k[None, :]
        )
    return field


def theoretical_modes(
    sources: Sequence[PlaneWaveSource],
    radius: float,
    freqs,
    N: int,
    *,
    wave_speed_c: float = _SPEED_OF_LIGHT,
) -> ModeSpectrum:
    """Jacobi-Anger mode coefficients of a plane-wave superposition.

    alpha_nm(omega) = sum over sources of 4 pi i^n A(omega) conj(Y_nm(y));
    Psi_nm = alpha_nm j_n(omega R / c).
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise DomainError(f"analysis degree must be an integer >= 0, got {N!r}")
    if not (math.isfinite(radius) and radius > 0):
        raise DomainError(f"radius must be finite and > 0, got {radius!r}")
    freqs = _check_freqs(freqs)
    if wave_speed_c <= 0:
        raise DomainError(f"wave speed must be > 0, got {wave_speed_c!r}")
    z = 2.0 * np.pi * freqs * radius / wave_speed_c
    bessel = np.stack([sph_bessel_j(n, z) for n in range(N + 1)])

    alpha = np.zeros(((N + 1) ** 2, freqs.size), dtype=complex)
    for src in sources:
        amp = src.spectrum_on(freqs)
        y_conj = harmonic_matrix(
            N, np.array([src.theta]), np.array([src.phi])
        ).conj()[:, 0]
        alpha += 4.0 * np.pi * y_conj[:, None] * amp[None, :]
    coeffs = np.empty_like(alpha)
    for idx in mode_indices(N):
        coeffs[idx.flat] = (1j**idx.n) * alpha[idx.flat] * bessel[idx.n]
    return ModeSpectrum(radius=radius, freqs=freqs, coeffs=coeffs)


def analyze_modes(
    field: np.ndarray, grid: SphericalGrid, N: int, freqs
) -> ModeSpectrum:
    """Project a sampled field onto Y_nm by quadrature, up to degree N.

    Raises ResolutionError when N exceeds the rule's max_degree (the
    projection would alias); callers must additionally budget max_degree >=
    N + field content degree for exactness.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise DomainError(f"analysis degree must be an integer >= 0, got {N!r}")
    freqs = _check_freqs(freqs)
    field = np.asarray(field, dtype=complex)
    if field.shape != (len(grid.rule), freqs.size):
        raise DomainError(
            f"field shape {field.shape} does not match (nodes, freqs) = "
            f"({len(grid.rule)}, {freqs.size})"
        )
    if N > grid.rule.max_degree:
        raise ResolutionError(
            f"analysis degree {N} exceeds the rule's max_degree "
            f"{grid.rule.max_degree}; the projection would alias"
        )
    y = harmonic_matrix(N, grid.rule.theta, grid.rule.phi)
    coeffs = (y.conj() * grid.rule.weights[None, :]) @ field
    return ModeSpectrum(radius=grid.radius, freqs=freqs, coeffs=coeffs)


def add_noise(field: np.ndarray, grid: SphericalGrid, noise: NoiseModel) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise per node and frequency.

    Node q gets variance sigma0_sq / w_q, which makes every projected mode
    coefficient's noise variance exactly sigma0_sq and exactly white across
    modes.  Counter-based generator: bitwise reproducible for a fixed seed.
    """
    field = np.asarray(field, dtype=complex)
    if field.shape[0] != len(grid.rule):
        raise DomainError(
            f"field has {field.shape[0]} rows but the grid has {len(grid.rule)} nodes"
        )
    if noise.sigma0_sq == 0:
        return field.copy()
    rng = np.random.Generator(np.random.Philox(noise.seed))
    std = np.sqrt(noise.sigma0_sq / (2.0 * grid.rule.weights))
    shape = field.shape
    eta = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return field + std.reshape((-1,) + (1,) * (field.ndim - 1)) * eta


def mode_snr(signal: ModeSpectrum, noise: NoiseModel) -> np.ndarray:
    """Per-mode SNR curves |Psi_nm(omega)|^2 / sigma0_sq.

    Since Psi_nm = alpha_nm j_n(omega R / c), this equals
    |alpha_nm|^2 |j_n|^2 / sigma0_sq, the deterministic-source form of the
    mode-domain SNR.
    """
    if noise.sigma0_sq == 0:
        raise DomainError("mode SNR is undefined for sigma0_sq = 0")
    return (np.abs(signal.coeffs) ** 2) / noise.sigma0_sq


def empirical_critical_frequency(
    snr: np.ndarray, freqs, threshold_gamma: float, n: int
) -> float:
    """Smallest grid frequency at which mode n is detectable.

    Scans max over m of SNR_nm(omega) against the threshold; returns +inf
    when the mode never reaches it on the grid.
    """
    freqs = _check_freqs(freqs)
    snr = np.asarray(snr, dtype=float)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"mode index must be an integer >= 0, got {n!r}")
    if threshold_gamma <= 0 or not math.isfinite(threshold_gamma):
        raise DomainError(f"threshold must be finite and > 0, got {threshold_gamma!r}")
    if snr.ndim != 2 or snr.shape[1] != freqs.size:
        raise DomainError(
            f"snr must have shape ((N+1)^2, {freqs.size}), got {snr.shape}"
        )
    lo, hi = n * n, (n + 1) ** 2
    if hi > snr.shape[0]:
        raise DomainError(
            f"mode {n} is outside the spectrum (max degree "
            f"{math.isqrt(snr.shape[0]) - 1})"
        )
    detectable = np.max(snr[lo:hi, :], axis=0) >= threshold_gamma
    hits = np.nonzero(detectable)[0]
    if hits.size == 0:
        return math.inf
    return float(freqs[hits[0]])


def parseval_check(
    field: np.ndarray, grid: SphericalGrid, spectrum: ModeSpectrum
) -> float:
    """Worst per-frequency relative gap between node-domain power and
    mode-domain power.

    Computes | integral |field|^2 dOmega - sum_nm |Psi_nm|^2 | / (node power)
    at each frequency and returns the maximum; frequencies where the field
    is identically zero contribute zero (both powers vanish).
    """
    field = np.asarray(field, dtype=complex)
    if field.shape[0] != len(grid.rule):
        raise DomainError(
            f"field has {field.shape[0]} rows but the grid has {len(grid.rule)} nodes"
        )
    if field.shape[1] != spectrum.freqs.size:
        raise DomainError("field and spectrum frequency grids differ in length")
    node_power = grid.rule.weights @ (np.abs(field) ** 2)
    mode_power = np.sum(np.abs(spectrum.coeffs) ** 2, axis=0)
    gap = np.abs(node_power - mode_power)
    out = np.zeros_like(gap)
    nz = node_power > 0
    out[nz] = gap[nz] / node_power[nz]
    return float(np.max(out)) if out.size else 0.0
