"""Special functions and spherical quadrature underpinning the other modules.

Provides spherical Bessel functions of the first kind (own recurrence
implementation: upward for z > n, Miller-style downward for z <= n), their
log-space envelope bound, Legendre polynomials, orthonormal complex spherical
harmonics, and Gauss-Legendre x uniform-azimuth product quadrature on the
unit sphere.

All functions are pure; QuadratureRule instances are immutable after
construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, sph_harm_y

from .errors import DomainError, ResolutionError

__all__ = [
    "ModeIndex",
    "QuadratureRule",
    "sph_bessel_j",
    "sph_bessel_j_bound",
    "legendre_p",
    "sph_harmonic",
    "harmonic_matrix",
    "mode_indices",
    "make_quadrature",
    "sphere_integrate",
]

_MAX_BESSEL_ORDER = 200
_MAX_QUAD_DEGREE = 512
# Extra orders above the target for the downward recurrence.  For z <= n each
# step down shrinks the unwanted (irregular) component by at least a factor
# z/(2k+1) < 1/2, so 60 guard orders leave it below 2^-60 ~ 1e-18 relative.
_MILLER_GUARD = 60
_RESCALE_LIMIT = 1e250
# Below this argument the two-term ascending series is already exact to
# double precision and the downward recurrence could overflow per-step.
_SERIES_CUTOFF = 1e-3


@dataclass(frozen=True)
class ModeIndex:
    """Spherical-harmonic index: spatial mode n >= 0 and order |m| <= n."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"mode n must be >= 0, got {self.n}")
        if abs(self.m) > self.n:
            raise DomainError(f"order |m| must be <= n, got m={self.m}, n={self.n}")

    @property
    def flat(self) -> int:
        """Position of (n, m) in the standard flattened ordering n*n + n + m."""
        return self.n * self.n + self.n + self.m


def mode_indices(max_degree: int) -> list[ModeIndex]:
    """All (n, m) indices with n <= max_degree in flat order."""
    return [
        ModeIndex(n, m) for n in range(max_degree + 1) for m in range(-n, n + 1)
    ]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and steradian weights of a product rule on the unit sphere.

    Gauss-Legendre in cos(theta) with max_degree+1 polar nodes times
    2*max_degree+2 uniform azimuths; integrates every spherical-harmonic
    product Y_nm * conj(Y_n'm') exactly for n, n' <= max_degree.
    """

    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    max_degree: int

    def __post_init__(self) -> None:
        for arr in (self.theta, self.phi, self.weights):
            arr.setflags(write=False)
        total = float(np.sum(self.weights))
        if abs(total - 4.0 * math.pi) > 1e-12 * 4.0 * math.pi:
            raise DomainError(
                f"quadrature weights sum to {total!r}, expected 4*pi"
            )

    @property
    def nodes(self) -> np.ndarray:
        """Node angles as an (N, 2) array of (theta, phi) pairs."""
        return np.column_stack((self.theta, self.phi))

    def __len__(self) -> int:
        return self.weights.size


def _bessel_j0(z: np.ndarray) -> np.ndarray:
    """j_0(z) = sin(z)/z with the removable singularity at 0."""
    return np.sinc(z / np.pi)


def _bessel_j1(z: np.ndarray) -> np.ndarray:
    """j_1(z), using the Taylor series where the closed form cancels."""
    out = np.empty_like(z)
    small = z < 0.5
    zs = z[small]
    z2 = zs * zs
    # j_1(z) = z/3 (1 - z^2/10 (1 - z^2/28 (1 - z^2/54))) -- exact to ~1e-19
    # for z < 0.5.
    out[small] = (zs / 3.0) * (
        1.0 - (z2 / 10.0) * (1.0 - (z2 / 28.0) * (1.0 - z2 / 54.0))
    )
    zb = z[~small]
    out[~small] = (np.sin(zb) - zb * np.cos(zb)) / (zb * zb)
    return out


def _bessel_upward(n: int, z: np.ndarray) -> np.ndarray:
    """Upward recurrence j_{k+1} = (2k+1) j_k / z - j_{k-1}; stable for z > n."""
    jkm1 = _bessel_j0(z)
    if n == 0:
        return jkm1
    jk = _bessel_j1(z)
    for k in range(1, n):
        jkm1, jk = jk, (2 * k + 1) * jk / z - jkm1
    return jk


def _bessel_series_small(n: int, z: np.ndarray) -> np.ndarray:
    """Two-term ascending series in log space, for 0 < z < _SERIES_CUTOFF.

    j_n(z) = (z/2)^n sqrt(pi)/(2 Gamma(n+3/2)) (1 - z^2/(2(2n+3)) + O(z^4));
    the omitted term is below 1e-14 relative at the cutoff, and the log-space
    leading factor underflows cleanly to zero exactly when the true value
    does.  The downward recurrence cannot serve here: its per-step growth
    (2k+1)/z outruns any finite rescaling headroom as z approaches the
    subnormal range.
    """
    log_lead = 0.5 * math.log(math.pi) - math.log(2.0) - gammaln(n + 1.5)
    # z/2 may round to zero in the subnormal range; log -> -inf -> exp -> 0,
    # which is the correct underflowed value.
    with np.errstate(divide="ignore"):
        lead = np.exp(log_lead + n * np.log(z / 2.0))
    return lead * (1.0 - z * z / (2.0 * (2 * n + 3)))


def _bessel_downward(n: int, z: np.ndarray) -> np.ndarray:
    """Miller's algorithm: recur down from a high order, normalize via j_0/j_1.

    Stable for z <= n where the upward recurrence would be dominated by the
    irregular solution.  Values are rescaled whenever they approach overflow;
    orders whose true value underflows double precision come out as 0.
    """
    start = n + _MILLER_GUARD
    ykp1 = np.zeros_like(z)
    yk = np.full_like(z, 1e-30)
    target = np.zeros_like(z)
    for k in range(start, 0, -1):
        ykm1 = (2 * k + 1) * yk / z - ykp1
        ykp1, yk = yk, ykm1
        if k - 1 == n:
            target = yk.copy()
        big = np.abs(yk) > _RESCALE_LIMIT
        if np.any(big):
            yk[big] *= 1e-250
            ykp1[big] *= 1e-250
            target[big] *= 1e-250
    # Normalize against whichever of j_0, j_1 is larger in magnitude to stay
    # accurate near zeros of j_0.
    j0 = _bessel_j0(z)
    j1 = _bessel_j1(z)
    use1 = np.abs(j1) > np.abs(j0)
    ref_true = np.where(use1, j1, j0)
    ref_raw = np.where(use1, ykp1, yk)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = target * (ref_true / ref_raw)
    return np.where(ref_raw == 0.0, 0.0, out)


def sph_bessel_j(n: int, z):
    """Spherical Bessel function of the first kind j_n(z).

    Parameters
    ----------
    n : int
        Order, 0 <= n <= 200.
    z : float or array_like
        Nonnegative finite argument(s).

    Returns
    -------
    float or np.ndarray
        j_n(z) with relative error <= 1e-12 wherever |j_n(z)| > 1e-300.
    """
    if not isinstance(n, (int, np.integer)):
        raise DomainError(f"order must be an integer, got {n!r}")
    if n < 0 or n > _MAX_BESSEL_ORDER:
        raise DomainError(f"order must be in [0, {_MAX_BESSEL_ORDER}], got {n}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z_arr)) or np.any(z_arr < 0):
        raise DomainError("argument must be finite and >= 0")
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)

    out = np.zeros_like(z_arr)
    zero = z_arr == 0.0
    if n == 0:
        out[zero] = 1.0
    up = (~zero) & (z_arr > n)
    tiny = (~zero) & ~up & (z_arr < _SERIES_CUTOFF)
    down = (~zero) & ~up & ~tiny
    if np.any(up):
        out[up] = _bessel_upward(n, z_arr[up])
    if np.any(tiny):
        out[tiny] = _bessel_series_small(n, z_arr[tiny])
    if np.any(down):
        out[down] = _bessel_downward(n, z_arr[down])
    return float(out[0]) if scalar else out


def sph_bessel_j_bound(n: int, z):
    """Envelope bound (sqrt(pi)/2) (z/2)^n / Gamma(n + 3/2) for |j_n(z)|.

    Evaluated in log space so large n and z do not overflow.  Strictly
    increasing in z for fixed n >= 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"order must be an integer >= 0, got {n!r}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z_arr)) or np.any(z_arr < 0):
        raise DomainError("argument must be finite and >= 0")
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)

    log_pref = 0.5 * math.log(math.pi) - math.log(2.0) - gammaln(n + 1.5)
    out = np.empty_like(z_arr)
    zero = z_arr == 0.0
    out[zero] = math.exp(log_pref) if n == 0 else 0.0
    nz = ~zero
    # z/2 may round to zero in the subnormal range; log -> -inf -> exp -> 0.
    with np.errstate(over="ignore", divide="ignore"):
        out[nz] = np.exp(log_pref + n * np.log(z_arr[nz] / 2.0))
    return float(out[0]) if scalar else out


def legendre_p(n: int, x):
    """Legendre polynomial P_n(x) on [-1, 1] by the three-term recurrence.

    P_n(1) = 1 exactly; |x| > 1 raises DomainError (the convolution kernel
    this supports is only defined on its physical support).
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"degree must be an integer >= 0, got {n!r}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x_arr)) or np.any(np.abs(x_arr) > 1.0):
        raise DomainError("argument must lie in [-1, 1]")
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)

    pkm1 = np.ones_like(x_arr)
    if n == 0:
        return float(pkm1[0]) if scalar else pkm1
    pk = x_arr.copy()
    for k in range(1, n):
        pkm1, pk = pk, ((2 * k + 1) * x_arr * pk - k * pkm1) / (k + 1)
    return float(pk[0]) if scalar else pk


def sph_harmonic(idx: ModeIndex, theta, phi):
    """Orthonormal complex spherical harmonic Y_nm(theta, phi).

    Convention: unit-sphere integral of |Y_nm|^2 is 1 and the Condon-Shortley
    phase is included (Y_1^1(pi/2, 0) = -sqrt(3/(8 pi))), so the orthonormality
    relation holds with coefficient exactly 1.
    """
    return sph_harm_y(idx.n, idx.m, theta, phi)


def harmonic_matrix(max_degree: int, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Matrix of Y_nm over points: shape ((max_degree+1)^2, len(theta)).

    Rows follow the flat ordering n*n + n + m.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = np.empty(((max_degree + 1) ** 2, theta.size), dtype=complex)
    for idx in mode_indices(max_degree):
        out[idx.flat] = sph_harm_y(idx.n, idx.m, theta, phi)
    return out


def make_quadrature(max_degree: int) -> QuadratureRule:
    """Product quadrature exact for harmonic products up to max_degree.

    Gauss-Legendre in cos(theta) (max_degree+1 nodes, exact for polynomials
    of degree <= 2*max_degree+1) times 2*max_degree+2 uniform azimuths (exact
    for e^{i m phi}, |m| <= 2*max_degree+1).
    """
    if not isinstance(max_degree, (int, np.integer)) or max_degree < 0:
        raise DomainError(f"degree must be an integer >= 0, got {max_degree!r}")
    if max_degree > _MAX_QUAD_DEGREE:
        raise ResolutionError(
            f"quadrature degree {max_degree} exceeds the supported maximum "
            f"{_MAX_QUAD_DEGREE}"
        )
    x, w_polar = np.polynomial.legendre.leggauss(max_degree + 1)
    n_az = 2 * max_degree + 2
    phi_az = 2.0 * np.pi * np.arange(n_az) / n_az
    w_az = 2.0 * np.pi / n_az

    theta = np.repeat(np.arccos(x), n_az)
    phi = np.tile(phi_az, max_degree + 1)
    weights = np.repeat(w_polar * w_az, n_az)
    return QuadratureRule(theta=theta, phi=phi, weights=weights, max_degree=int(max_degree))


def sphere_integrate(f, rule: QuadratureRule):
    """Weighted sum approximating the unit-sphere integral of f.

    Parameters
    ----------
    f : array_like
        Field values sampled exactly on rule's nodes; the first axis must
        match the node count (extra trailing axes integrate independently).
    rule : QuadratureRule
    """
    f_arr = np.asarray(f)
    if f_arr.shape[0] != len(rule):
        raise DomainError(
            f"field has {f_arr.shape[0]} samples but the rule has {len(rule)} nodes"
        )
    return np.tensordot(rule.weights, f_arr, axes=(0, 0))
