"""Unit tests for the degrees-of-freedom bound computations.

Pinned totals are frozen from an independent 60-digit evaluation of the
closed formula (in its unexpanded bracket arrangement) and of the
term-by-term mode sum; both are noted inline.
"""
from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modecap.dofcore import (
    EPI,
    DofBreakdown,
    NormalizedParams,
    Scenario,
    bandwidth_profile,
    critical_frequency,
    dof_asymptotic,
    dof_closed_form,
    dof_mode_sum,
    dof_normalized,
    dof_normalized_breakdown,
    dof_special_cases,
    effective_time,
    truncation_indices,
)
from modecap.errors import DomainError

_PINNED = NormalizedParams(a=1.0, b=0.5, d=1.0, rho=1.0)
# 60-digit references for the pinned point.
_PINNED_CLOSED = 524.74645548678633
_PINNED_SUMMED = 462.32236660016855
# Second frozen point exercising rho != 1: a=0.8, b=0.25, d=2, rho=4.
_SECOND = NormalizedParams(a=0.8, b=0.25, d=2.0, rho=4.0)
_SECOND_CLOSED = 275.98283882814129
_SECOND_SUMMED = 240.22512035311837


def test_epi_constant() -> None:
    assert EPI == math.e * math.pi
    assert EPI == pytest.approx(8.539734222673566, abs=1e-15)


def test_pinned_point_breakdown() -> None:
    out = dof_normalized_breakdown(_PINNED)
    assert out.d1 == 196.0  # (n_max + 1)^2 with n_max = 13, exact
    assert out.d2 == pytest.approx(108.0, rel=1e-12)
    assert out.d3 == pytest.approx(_PINNED_CLOSED - 196.0 - 108.0, rel=1e-12)
    assert out.total == pytest.approx(_PINNED_CLOSED, rel=1e-12)
    assert out.t_eff == pytest.approx(3.0, rel=1e-12)  # d + 2a in unit-F0 time


def test_pinned_point_mode_sum_and_indices() -> None:
    s = _PINNED.to_scenario()
    assert truncation_indices(s) == (5, 13)
    assert dof_mode_sum(s) == pytest.approx(_PINNED_SUMMED, rel=1e-12)


def test_second_point_both_routes() -> None:
    assert dof_normalized(_SECOND) == pytest.approx(_SECOND_CLOSED, rel=1e-12)
    s = _SECOND.to_scenario()
    assert truncation_indices(s) == (6, 10)
    assert dof_mode_sum(s) == pytest.approx(_SECOND_SUMMED, rel=1e-12)


def test_zero_duration_window_still_counts_transit_time() -> None:
    # d = 0 leaves t_eff = 2a, so the bound stays above the spatial term.
    p = NormalizedParams(a=1.0, b=0.5, d=0.0, rho=1.0)
    assert dof_normalized(p) == pytest.approx(415.16430365785756, rel=1e-12)


def test_narrowband_collapse_is_exact() -> None:
    for a, expected in ((0.5, 36.0), (1.0, 100.0), (2.0, 361.0)):
        p = NormalizedParams(a=a, b=0.0, d=1.0, rho=1.0)
        assert dof_normalized(p) == expected
        s = p.to_scenario()
        assert dof_closed_form(s).total == expected
        assert dof_mode_sum(s) == expected


def test_pointlike_region_reduces_to_time_bandwidth_product() -> None:
    s = Scenario(radius_R=0.0, mid_freq_F0=10.0, half_bandwidth_W=2.0,
                 obs_time_T=3.0)
    special = dof_special_cases(s)
    assert special is not None
    assert special.d1 == 1.0
    assert special.d2 == 12.0  # 2 W T
    assert special.d3 == 0.0
    assert special.total == 13.0
    assert special.t_eff == 3.0
    assert dof_asymptotic(s).total == 13.0
    with pytest.raises(DomainError):
        dof_closed_form(s)
    with pytest.raises(DomainError):
        critical_frequency(s, 1)
    assert dof_special_cases(_PINNED.to_scenario()) is None


def test_asymptotic_levels_the_detection_threshold() -> None:
    s = Scenario(radius_R=2.0, mid_freq_F0=5.0, half_bandwidth_W=1.0,
                 obs_time_T=4.0, wave_speed_c=10.0, threshold_gamma=2.0,
                 snr_alpha_max=8.0)
    leveled = Scenario(radius_R=2.0, mid_freq_F0=5.0, half_bandwidth_W=1.0,
                       obs_time_T=4.0, wave_speed_c=10.0, threshold_gamma=8.0,
                       snr_alpha_max=8.0)
    out = dof_asymptotic(s)
    ref = dof_closed_form(leveled)
    assert out.total == pytest.approx(ref.total, rel=1e-14)
    assert dof_closed_form(s).total > out.total  # rho = 4 grants extra modes


def test_mode_zero_cutoff_is_zero_even_off_unit_snr() -> None:
    s = Scenario(radius_R=1.0, mid_freq_F0=1.0, half_bandwidth_W=0.5,
                 obs_time_T=1.0, wave_speed_c=1.0, snr_alpha_max=100.0)
    assert critical_frequency(s, 0) == 0.0
    # Low orders clamp to zero while the SNR margin exceeds them ...
    assert critical_frequency(s, 1) == 0.0  # 1 < ln(100)/2
    # ... and the first order past the margin comes out positive.
    assert critical_frequency(s, 3) == pytest.approx(
        (3.0 - 0.5 * math.log(100.0)) / EPI, rel=1e-12)


def test_critical_frequency_frozen_value() -> None:
    s = _PINNED.to_scenario(mid_freq_F0=1.0, wave_speed_c=1.0)
    assert critical_frequency(s, 10) == pytest.approx(
        1.1709966304863832, rel=1e-12)


def test_bandwidth_profile_structure() -> None:
    s = _PINNED.to_scenario(mid_freq_F0=1.0, wave_speed_c=1.0)
    profile = bandwidth_profile(s)
    assert profile.n_min == 5 and profile.n_max == 13
    assert len(profile.per_mode) == 14
    full_w = 2.0 * s.half_bandwidth_W
    for entry in profile.per_mode:
        lo, hi = entry.band_lo, entry.band_hi
        assert lo <= hi <= s.mid_freq_F0 + s.half_bandwidth_W + 1e-12
        assert entry.eff_bandwidth_Wn == pytest.approx(hi - lo, abs=1e-12)
        assert entry.mid_band_W0n == pytest.approx(0.5 * (lo + hi), abs=1e-12)
        assert entry.eff_bandwidth_Wn <= full_w + 1e-12
        if entry.n <= profile.n_min:
            assert entry.eff_bandwidth_Wn == pytest.approx(full_w, rel=1e-12)
            assert entry.mid_band_W0n == pytest.approx(s.mid_freq_F0, rel=1e-12)
    # Frozen cutoff-narrowed entry.
    e10 = profile.per_mode[10]
    assert e10.eff_bandwidth_Wn == pytest.approx(0.32900336951361679, rel=1e-10)
    assert e10.mid_band_W0n == pytest.approx(1.3354983152431916, rel=1e-12)
    # Widths never grow with n past the full-band plateau.
    widths = [e.eff_bandwidth_Wn for e in profile.per_mode]
    for prev, cur in zip(widths[profile.n_min:], widths[profile.n_min + 1:]):
        assert cur <= prev + 1e-12


def test_bandwidth_profile_cap_extends_with_empty_bands() -> None:
    s = _PINNED.to_scenario()
    profile = bandwidth_profile(s, n_cap=16)
    assert len(profile.per_mode) == 17
    for entry in profile.per_mode[14:]:
        assert entry.eff_bandwidth_Wn == 0.0
        assert entry.band_lo == entry.band_hi


def test_zero_bandwidth_profile_is_all_point_bands() -> None:
    s = NormalizedParams(a=1.0, b=0.0, d=1.0, rho=1.0).to_scenario()
    profile = bandwidth_profile(s)
    assert profile.n_min == profile.n_max == 9
    assert all(e.eff_bandwidth_Wn == 0.0 for e in profile.per_mode)


def test_normalization_roundtrip() -> None:
    s = Scenario(radius_R=0.7, mid_freq_F0=3.4e8, half_bandwidth_W=1.1e8,
                 obs_time_T=2.5e-6, threshold_gamma=1.5, snr_alpha_max=6.0)
    p = NormalizedParams.from_scenario(s)
    back = NormalizedParams.from_scenario(p.to_scenario(
        mid_freq_F0=s.mid_freq_F0, wave_speed_c=s.wave_speed_c))
    assert back.a == pytest.approx(p.a, rel=1e-12)
    assert back.b == pytest.approx(p.b, rel=1e-12)
    assert back.d == pytest.approx(p.d, rel=1e-12)
    assert back.rho == pytest.approx(p.rho, rel=1e-12)


def test_effective_time() -> None:
    s = Scenario(radius_R=3.0, mid_freq_F0=100.0, half_bandwidth_W=10.0,
                 obs_time_T=0.25, wave_speed_c=12.0)
    assert effective_time(s) == pytest.approx(0.25 + 0.5, rel=1e-15)


@settings(deadline=None, max_examples=250, derandomize=True)
@given(
    a=st.floats(min_value=0.01, max_value=20.0),
    b=st.floats(min_value=0.0, max_value=1.0),
    d=st.floats(min_value=0.0, max_value=50.0),
    rho=st.floats(min_value=1.0, max_value=1e3),
)
def test_mode_sum_never_exceeds_closed_form_at_high_snr(
        a: float, b: float, d: float, rho: float) -> None:
    # The closed form upper-bounds the discrete sum it integrates, provided
    # the threshold is not above the SNR ceiling (rho >= 1).
    s = NormalizedParams(a=a, b=b, d=d, rho=rho).to_scenario()
    assert dof_mode_sum(s) <= dof_closed_form(s).total * (1 + 1e-12) + 1e-9


def test_mode_sum_can_exceed_closed_form_below_unit_snr_ratio() -> None:
    # Regression pin: with the threshold above the SNR ceiling (rho < 1) the
    # integral comparison underlying the closed form no longer dominates the
    # sum, which is why the property above restricts to rho >= 1.
    s = NormalizedParams(a=0.1, b=1.0, d=2.0, rho=0.5).to_scenario()
    summed, closed = dof_mode_sum(s), dof_closed_form(s).total
    assert summed == pytest.approx(16.192901296329325, rel=1e-12)
    assert closed == pytest.approx(15.781534230716785, rel=1e-12)
    assert summed > closed


@settings(deadline=None, max_examples=250, derandomize=True)
@given(
    a=st.floats(min_value=0.0, max_value=10.0),
    b=st.floats(min_value=0.0, max_value=1.0),
    d=st.floats(min_value=0.0, max_value=20.0),
    rho=st.floats(min_value=0.1, max_value=1e3),
    f0=st.floats(min_value=1e-3, max_value=1e9),
    c=st.floats(min_value=1e-2, max_value=3e8),
)
def test_normalized_and_dimensional_routes_agree(
        a: float, b: float, d: float, rho: float, f0: float, c: float) -> None:
    p = NormalizedParams(a=a, b=b, d=d, rho=rho)
    direct = dof_normalized(p)
    s = p.to_scenario(mid_freq_F0=f0, wave_speed_c=c)
    if s.radius_R == 0.0:
        via_scenario = dof_asymptotic(s).total if rho == 1.0 else None
        if via_scenario is None:
            return
    else:
        via_scenario = dof_closed_form(s).total
    assert via_scenario == pytest.approx(direct, rel=1e-9)


@settings(deadline=None, max_examples=150, derandomize=True)
@given(
    a=st.floats(min_value=0.01, max_value=10.0),
    b=st.floats(min_value=0.0, max_value=1.0),
    d=st.floats(min_value=0.0, max_value=20.0),
    rho=st.floats(min_value=0.1, max_value=1e3),
)
def test_breakdown_components_are_consistent(
        a: float, b: float, d: float, rho: float) -> None:
    out = dof_normalized_breakdown(NormalizedParams(a=a, b=b, d=d, rho=rho))
    assert out.d1 >= 1.0
    assert out.d2 >= 0.0 and out.d3 >= 0.0
    assert out.total == pytest.approx(out.d1 + out.d2 + out.d3, rel=1e-12)
    assert out.t_eff == pytest.approx(d + 2 * a, rel=1e-12)


def test_growing_fractional_bandwidth_can_shrink_the_bound() -> None:
    # Regression pin for a ceiling artifact: stepping b across a truncation
    # boundary revokes a full-band mode granted at the lower b, so the total
    # drops.  The trend check in the acceptance suite reports this same
    # behavior as a failed monotonicity criterion.
    lo = dof_normalized(NormalizedParams(a=0.4, b=0.80, d=2.0, rho=2.0))
    hi = dof_normalized(NormalizedParams(a=0.4, b=0.85, d=2.0, rho=2.0))
    assert lo == pytest.approx(195.61000584110516, rel=1e-12)
    assert hi == pytest.approx(182.28552139381162, rel=1e-12)
    assert hi < lo


def test_scenario_validation() -> None:
    with pytest.raises(DomainError):
        Scenario(radius_R=-1.0, mid_freq_F0=1.0, half_bandwidth_W=0.1,
                 obs_time_T=1.0)
    with pytest.raises(DomainError):
        Scenario(radius_R=1.0, mid_freq_F0=1.0, half_bandwidth_W=1.5,
                 obs_time_T=1.0)  # band extends below zero frequency
    with pytest.raises(DomainError):
        Scenario(radius_R=1.0, mid_freq_F0=1.0, half_bandwidth_W=0.1,
                 obs_time_T=-2.0)
    with pytest.raises(DomainError):
        Scenario(radius_R=1.0, mid_freq_F0=1.0, half_bandwidth_W=0.1,
                 obs_time_T=1.0, wave_speed_c=0.0)
    with pytest.raises(DomainError):
        Scenario(radius_R=1.0, mid_freq_F0=1.0, half_bandwidth_W=0.1,
                 obs_time_T=1.0, threshold_gamma=0.0)
    with pytest.raises(DomainError):
        Scenario(radius_R=1.0, mid_freq_F0=math.nan, half_bandwidth_W=0.1,
                 obs_time_T=1.0)


def test_normalized_validation() -> None:
    with pytest.raises(DomainError):
        NormalizedParams(a=-0.1, b=0.5, d=1.0, rho=1.0)
    with pytest.raises(DomainError):
        NormalizedParams(a=1.0, b=1.2, d=1.0, rho=1.0)
    with pytest.raises(DomainError):
        NormalizedParams(a=1.0, b=0.5, d=1.0, rho=0.0)
    with pytest.raises(DomainError):
        NormalizedParams(a=1.0, b=0.5, d=math.inf, rho=1.0)


def test_breakdown_rejects_inconsistent_totals() -> None:
    with pytest.raises(DomainError):
        DofBreakdown(d1=1.0, d2=1.0, d3=1.0, total=4.0, t_eff=1.0)
    with pytest.raises(DomainError):
        DofBreakdown(d1=-1.0, d2=1.0, d3=1.0, total=1.0, t_eff=1.0)


def test_scenario_derived_properties() -> None:
    s = Scenario(radius_R=1.0, mid_freq_F0=10.0, half_bandwidth_W=2.0,
                 obs_time_T=1.0, threshold_gamma=2.0, snr_alpha_max=10.0)
    assert s.snr_ratio == pytest.approx(5.0, rel=1e-15)
    assert s.band == (8.0, 12.0)
