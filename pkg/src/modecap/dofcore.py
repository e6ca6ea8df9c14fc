"""Scenario model and closed-form degrees-of-freedom results.

Everything here is exact arithmetic on scenario parameters: effective
observation time, per-mode critical frequencies and effective bandwidths,
truncation indices, and the three degrees-of-freedom (DoF) computations --
the exact mode sum, the closed-form upper bound with its d1/d2/d3 breakdown,
and the noise-threshold-free asymptotic form.

Conventions fixed across the module:
  * natural logarithm throughout;
  * standard ceiling (exact integers map to themselves);
  * DoF values are reals, never rounded to integers;
  * mode 0 always spans the full band regardless of the threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "EPI",
    "Scenario",
    "NormalizedParams",
    "ModeEntry",
    "ModeBandwidthProfile",
    "DofBreakdown",
    "effective_time",
    "critical_frequency",
    "truncation_indices",
    "bandwidth_profile",
    "dof_mode_sum",
    "dof_closed_form",
    "dof_normalized",
    "dof_normalized_breakdown",
    "dof_asymptotic",
    "dof_special_cases",
]

# e * pi, the constant relating mode index to critical frequency.
EPI = math.e * math.pi


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Scenario:
    """Physical observation scenario.

    Parameters
    ----------
    radius_R : float
        Radius of the spherical observation region, meters, >= 0.
    mid_freq_F0 : float
        Mid-band frequency, hertz, > 0.
    half_bandwidth_W : float
        Half bandwidth, hertz; the signal band is [F0 - W, F0 + W] and
        0 <= W <= F0 keeps it nonnegative.
    obs_time_T : float
        Observation time, seconds, >= 0.
    wave_speed_c : float
        Propagation speed, meters/second, > 0.
    threshold_gamma : float
        Detection threshold as a linear power ratio, > 0.
    snr_alpha_max : float
        Maximum SNR of the signal spectrum as a linear power ratio, > 0.
    """

    radius_R: float
    mid_freq_F0: float
    half_bandwidth_W: float
    obs_time_T: float
    wave_speed_c: float = 299792458.0
    threshold_gamma: float = 1.0
    snr_alpha_max: float = 1.0

    def __post_init__(self) -> None:
        for name in (
            "radius_R",
            "mid_freq_F0",
            "half_bandwidth_W",
            "obs_time_T",
            "wave_speed_c",
            "threshold_gamma",
            "snr_alpha_max",
        ):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.radius_R < 0:
            raise DomainError(f"radius_R must be >= 0, got {self.radius_R}")
        if self.mid_freq_F0 <= 0:
            raise DomainError(f"mid_freq_F0 must be > 0, got {self.mid_freq_F0}")
        if not 0 <= self.half_bandwidth_W <= self.mid_freq_F0:
            raise DomainError(
                "half_bandwidth_W must satisfy 0 <= W <= F0, got "
                f"W={self.half_bandwidth_W}, F0={self.mid_freq_F0}"
            )
        if self.obs_time_T < 0:
            raise DomainError(f"obs_time_T must be >= 0, got {self.obs_time_T}")
        if self.wave_speed_c <= 0:
            raise DomainError(f"wave_speed_c must be > 0, got {self.wave_speed_c}")
        if self.threshold_gamma <= 0:
            raise DomainError(
                f"threshold_gamma must be > 0, got {self.threshold_gamma}"
            )
        if self.snr_alpha_max <= 0:
            raise DomainError(
                f"snr_alpha_max must be > 0, got {self.snr_alpha_max}"
            )

    @property
    def snr_ratio(self) -> float:
        """rho = snr_alpha_max / threshold_gamma."""
        return self.snr_alpha_max / self.threshold_gamma

    @property
    def band(self) -> tuple[float, float]:
        """The signal band [F0 - W, F0 + W] in hertz."""
        return (
            self.mid_freq_F0 - self.half_bandwidth_W,
            self.mid_freq_F0 + self.half_bandwidth_W,
        )


@dataclass(frozen=True)
class NormalizedParams:
    """Dimensionless scenario: a = F0 R / c, b = W / F0, d = F0 T, rho."""

    a: float
    b: float
    d: float
    rho: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "d", "rho"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.a < 0:
            raise DomainError(f"a must be >= 0, got {self.a}")
        if not 0 <= self.b <= 1:
            raise DomainError(f"b must lie in [0, 1], got {self.b}")
        if self.d < 0:
            raise DomainError(f"d must be >= 0, got {self.d}")
        if self.rho <= 0:
            raise DomainError(f"rho must be > 0, got {self.rho}")

    @classmethod
    def from_scenario(cls, s: Scenario) -> "NormalizedParams":
        """Dimensionless combinations of a Scenario."""
        return cls(
            a=s.mid_freq_F0 * s.radius_R / s.wave_speed_c,
            b=s.half_bandwidth_W / s.mid_freq_F0,
            d=s.mid_freq_F0 * s.obs_time_T,
            rho=s.snr_ratio,
        )

    def to_scenario(
        self, mid_freq_F0: float = 1.0, wave_speed_c: float = 1.0
    ) -> Scenario:
        """A Scenario realizing these dimensionless parameters.

        The choice of mid_freq_F0 and wave_speed_c fixes the unit system;
        from_scenario(to_scenario(p)) == p for any valid choice.
        """
        return Scenario(
            radius_R=self.a * wave_speed_c / mid_freq_F0,
            mid_freq_F0=mid_freq_F0,
            half_bandwidth_W=self.b * mid_freq_F0,
            obs_time_T=self.d / mid_freq_F0,
            wave_speed_c=wave_speed_c,
            threshold_gamma=1.0,
            snr_alpha_max=self.rho,
        )


@dataclass(frozen=True)
class ModeEntry:
    """Per-mode row of a ModeBandwidthProfile."""

    n: int
    critical_freq_Fn: float
    band_lo: float
    band_hi: float
    eff_bandwidth_Wn: float
    mid_band_W0n: float


@dataclass(frozen=True)
class ModeBandwidthProfile:
    """Truncation indices plus the per-mode effective bands of a scenario."""

    n_min: int
    n_max: int
    per_mode: tuple[ModeEntry, ...]


@dataclass(frozen=True)
class DofBreakdown:
    """DoF total split into spatial (d1), full-band (d2) and partial-band
    (d3) contributions, with the effective time used."""

    d1: float
    d2: float
    d3: float
    total: float
    t_eff: float

    def __post_init__(self) -> None:
        if min(self.d1, self.d2, self.d3, self.total) < 0:
            raise DomainError("DoF components must be >= 0")
        if abs(self.total - (self.d1 + self.d2 + self.d3)) > 1e-9 * max(
            1.0, abs(self.total)
        ):
            raise DomainError("total must equal d1 + d2 + d3")


def effective_time(s: Scenario) -> float:
    """Effective observation time T + 2R/c (seconds).

    Extends the raw window by the wavefront transit time across the region;
    independent of frequency, bandwidth, and threshold.
    """
    return s.obs_time_T + 2.0 * s.radius_R / s.wave_speed_c


def critical_frequency(s: Scenario, n: int) -> float:
    """Critical frequency F_n below which mode n falls under the threshold.

    F_n = max(0, n c / (e pi R) + (c / (2 e pi R)) ln(gamma / snr_alpha_max)),
    natural log, except F_0 = 0 unconditionally (mode 0 is always full-band).

    Raises DomainError for R = 0: a pointlike region has no mode structure,
    and callers should take the R = 0 special case instead.
    """
    if not isinstance(n, (int,)) or isinstance(n, bool):
        raise DomainError(f"mode index must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"mode index must be >= 0, got {n}")
    if s.radius_R == 0:
        raise DomainError(
            "critical_frequency is undefined for radius_R = 0; use the "
            "pointlike special case"
        )
    if n == 0:
        return 0.0
    half_log = 0.5 * math.log(s.snr_ratio)
    return max(0.0, (n - half_log) * s.wave_speed_c / (EPI * s.radius_R))


def _indices(a: float, b: float, rho: float) -> tuple[int, int]:
    """Truncation indices on dimensionless parameters."""
    half_log = 0.5 * math.log(rho)
    n_min = max(0, math.ceil(EPI * a * (1.0 - b) + half_log))
    n_max = max(n_min, math.ceil(EPI * a * (1.0 + b) + half_log))
    return n_min, n_max


def truncation_indices(s: Scenario) -> tuple[int, int]:
    """(n_min, n_max): the last full-band mode index and the last mode with
    any usable bandwidth.  Requires R > 0."""
    if s.radius_R == 0:
        raise DomainError(
            "truncation indices are undefined for radius_R = 0; use the "
            "pointlike special case"
        )
    p = NormalizedParams.from_scenario(s)
    return _indices(p.a, p.b, p.rho)


def bandwidth_profile(s: Scenario, n_cap: int | None = None) -> ModeBandwidthProfile:
    """Per-mode effective bandwidths W_n and usable bands.

    Branches over the mode index n:
      * n <= n_min: full band, W_n = 2W over [F0-W, F0+W];
      * n_min < n <= n_max: W_n = max(0, F0+W-F_n) over [max(F0-W, F_n), F0+W]
        (degenerating to the empty band at F0+W when the clamp bites);
      * n > n_max: W_n = 0 (rows included only when n_cap asks for them).

    Parameters
    ----------
    s : Scenario with radius_R > 0.
    n_cap : int, optional
        Highest mode index to tabulate; defaults to n_max.
    """
    n_min, n_max = truncation_indices(s)
    if n_cap is None:
        n_cap = n_max
    elif not isinstance(n_cap, int) or isinstance(n_cap, bool) or n_cap < 0:
        raise DomainError(f"n_cap must be an integer >= 0, got {n_cap!r}")
    lo, hi = s.band
    entries = []
    for n in range(n_cap + 1):
        fn = critical_frequency(s, n)
        if n <= n_min:
            band_lo, band_hi = lo, hi
        elif n <= n_max:
            band_lo, band_hi = min(max(lo, fn), hi), hi
        else:
            band_lo, band_hi = hi, hi
        width = band_hi - band_lo
        entries.append(
            ModeEntry(
                n=n,
                critical_freq_Fn=fn,
                band_lo=band_lo,
                band_hi=band_hi,
                eff_bandwidth_Wn=width,
                mid_band_W0n=0.5 * (band_lo + band_hi),
            )
        )
    return ModeBandwidthProfile(n_min=n_min, n_max=n_max, per_mode=tuple(entries))


def dof_mode_sum(s: Scenario) -> float:
    """Exact mode-by-mode DoF count sum((2n+1) (W_n T_eff + 1), n=0..n_max).

    Requires R > 0.  Always at most dof_closed_form(s).total when the ratio
    snr_alpha_max/threshold_gamma is >= 1.
    """
    profile = bandwidth_profile(s)
    t_eff = effective_time(s)
    return float(
        sum(
            (2 * e.n + 1) * (e.eff_bandwidth_Wn * t_eff + 1.0)
            for e in profile.per_mode
        )
    )


def _breakdown(
    a: float, b: float, d: float, rho: float, t_eff: float, wt2: float
) -> DofBreakdown:
    """Closed-form bound from dimensionless parameters.

    wt2 = 2 W T_eff is passed in the caller's unit system so the stored
    breakdown keeps its scale; algebraically wt2 = 2 b (2 a + d).
    """
    n_min, n_max = _indices(a, b, rho)
    log_rho = math.log(rho)
    d1 = float((n_max + 1) ** 2)
    d2 = max(0.0, wt2 * (n_min + 1) ** 2)
    bracket = (
        2.0 * (EPI * a) ** 2 * (b - b * b / 3.0)
        + EPI * a * (2.0 - b)
        + log_rho * (EPI * a * b + 1.0)
    )
    d3 = max(0.0, wt2 * bracket)
    return DofBreakdown(d1=d1, d2=d2, d3=d3, total=d1 + d2 + d3, t_eff=t_eff)


def dof_closed_form(s: Scenario) -> DofBreakdown:
    """Closed-form upper bound on the DoF with its d1/d2/d3 breakdown.

    d1 = (n_max+1)^2 counts spatial modes; d2 = 2 W T_eff (n_min+1)^2 counts
    the full-band modes' time-bandwidth content; d3 bounds the partial-band
    tail.  Each component is clamped at 0.  Requires R > 0 (the pointlike
    case is served by dof_special_cases).
    """
    if s.radius_R == 0:
        raise DomainError(
            "dof_closed_form requires radius_R > 0; use dof_special_cases"
        )
    p = NormalizedParams.from_scenario(s)
    t_eff = effective_time(s)
    wt2 = 2.0 * s.half_bandwidth_W * t_eff
    return _breakdown(p.a, p.b, p.d, p.rho, t_eff, wt2)


def dof_normalized_breakdown(p: NormalizedParams) -> DofBreakdown:
    """Closed-form bound on dimensionless parameters, with breakdown.

    t_eff is reported in mid-band periods: d + 2a.
    """
    t_eff = p.d + 2.0 * p.a
    wt2 = 2.0 * p.b * (2.0 * p.a + p.d)
    return _breakdown(p.a, p.b, p.d, p.rho, t_eff, wt2)


def dof_normalized(p: NormalizedParams) -> float:
    """Closed-form DoF bound evaluated on dimensionless parameters.

    Agrees with dof_closed_form on any Scenario realizing p to 1e-9
    relative; at a = 0 it reduces to 2 b d + 1, i.e. 2WT + 1.
    """
    if p.a == 0:
        return 2.0 * p.b * p.d + 1.0
    return dof_normalized_breakdown(p).total


def dof_special_cases(s: Scenario) -> DofBreakdown | None:
    """Closed special cases not covered by the general formulas.

    Returns the breakdown when one applies, else None.  Currently: R = 0
    (pointlike observation) has a single spatial sample and exactly
    2 W T + 1 degrees of freedom.
    """
    if s.radius_R == 0:
        two_wt = 2.0 * s.half_bandwidth_W * s.obs_time_T
        return DofBreakdown(
            d1=1.0, d2=two_wt, d3=0.0, total=two_wt + 1.0, t_eff=s.obs_time_T
        )
    return None


def dof_asymptotic(s: Scenario) -> DofBreakdown:
    """High-SNR DoF bound: the threshold equals the peak SNR (rho = 1).

    Drops every noise-threshold term from the closed form.  Valid for all
    R >= 0: R = 0 returns exactly 2WT + 1, and T = 0 keeps the pure
    spatial-plus-transit content.
    """
    special = dof_special_cases(s)
    if special is not None:
        return special
    leveled = Scenario(
        radius_R=s.radius_R,
        mid_freq_F0=s.mid_freq_F0,
        half_bandwidth_W=s.half_bandwidth_W,
        obs_time_T=s.obs_time_T,
        wave_speed_c=s.wave_speed_c,
        threshold_gamma=s.snr_alpha_max,
        snr_alpha_max=s.snr_alpha_max,
    )
    return dof_closed_form(leveled)
