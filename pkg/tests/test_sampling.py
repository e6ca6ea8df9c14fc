"""Unit tests for the bandpass sampling and reconstruction machinery.

Closed-form references: a flat band spectrum transforms to a modulated sinc,
and a cos^2-shaped spectrum to half the raised-cosine kernel; both are
compared point-by-point.
"""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modecap.errors import DomainError
from modecap.sampling import (
    ModeBand,
    SampleTrain,
    fourier_coefficients,
    legendre_support_check,
    mode_time_signal,
    phi_basis,
    phi_inner,
    reconstruct,
)


def _flat(omega: np.ndarray) -> np.ndarray:
    return np.ones_like(omega)


def test_flat_spectrum_gives_modulated_sinc() -> None:
    band = ModeBand.from_edges(9.5, 10.5)
    t = np.linspace(-4.0, 4.0, 401)
    got = mode_time_signal(_flat, band, t)
    ref = np.sinc(t) * np.exp(2j * np.pi * 10.0 * t)
    assert np.max(np.abs(got - ref)) < 1e-12


def test_wider_band_scales_amplitude_and_rate() -> None:
    band = ModeBand.from_edges(100.0, 103.0)  # w_n = 3
    t = np.linspace(-1.0, 1.0, 201)
    got = mode_time_signal(_flat, band, t)
    ref = 3.0 * np.sinc(3.0 * t) * np.exp(2j * np.pi * 101.5 * t)
    assert np.max(np.abs(got - ref)) < 1e-10 * 3.0


def test_cos_squared_spectrum_gives_raised_cosine_kernel() -> None:
    band = ModeBand.from_edges(10.0, 11.0)
    spectrum = lambda omega: np.cos(
        np.pi * (omega / (2.0 * np.pi) - band.w_0n)) ** 2
    t = np.linspace(-3.0, 3.0, 121)
    got = mode_time_signal(spectrum, band, t)
    kernel = np.sinc(t) + 0.5 * np.sinc(t + 1.0) + 0.5 * np.sinc(t - 1.0)
    ref = 0.5 * kernel * np.exp(2j * np.pi * band.w_0n * t)
    assert np.max(np.abs(got - ref)) < 1e-12


def test_zero_width_band_signal_is_zero() -> None:
    band = ModeBand(w_n=0.0, w_0n=10.0, band=(10.0, 10.0))
    t = np.linspace(-1.0, 1.0, 11)
    assert np.all(mode_time_signal(_flat, band, t) == 0.0)


def test_mode_band_validation() -> None:
    with pytest.raises(DomainError):
        ModeBand(w_n=1.0, w_0n=10.0, band=(10.0, 10.5))  # width mismatch
    with pytest.raises(DomainError):
        ModeBand(w_n=0.5, w_0n=9.0, band=(10.0, 10.5))  # midpoint mismatch
    with pytest.raises(DomainError):
        ModeBand(w_n=-0.5, w_0n=10.0, band=(10.25, 9.75))
    with pytest.raises(DomainError):
        ModeBand(w_n=math.nan, w_0n=10.0, band=(10.0, 10.0))
    band = ModeBand.from_edges(3.0, 5.5)
    assert band.w_n == 2.5 and band.w_0n == 4.25


def test_coefficients_are_scaled_signal_samples() -> None:
    band = ModeBand.from_edges(9.5, 10.5)
    train = fourier_coefficients(_flat, band, (-3, 6))
    # Flat spectrum: psi(l / w) = w sinc(l) carrier = w at l = 0, else 0.
    ref = np.zeros(10, dtype=complex)
    ref[3] = band.w_n
    assert np.max(np.abs(train.values - ref)) < 1e-12
    assert np.allclose(train.coefficients, train.values / band.w_n, rtol=0,
                       atol=0)
    assert np.array_equal(train.ells, np.arange(-3, 7))
    assert np.allclose(train.times, np.arange(-3, 7) / band.w_n)


def test_coefficient_range_and_band_validation() -> None:
    band = ModeBand.from_edges(9.5, 10.5)
    with pytest.raises(DomainError):
        fourier_coefficients(_flat, band, (4, 2))
    point = ModeBand(w_n=0.0, w_0n=10.0, band=(10.0, 10.0))
    with pytest.raises(DomainError):
        fourier_coefficients(_flat, point, (0, 5))


def test_phi_basis_interpolates_kronecker() -> None:
    band = ModeBand.from_edges(4.0, 6.0)
    w = band.w_n
    for ell in (-2, 0, 5):
        at_own = phi_basis(ell, ell / w, band)
        assert at_own == pytest.approx(1.0, rel=1e-15)
        for other in (-1, 1, 4):
            if other != ell:
                assert abs(phi_basis(ell, other / w, band)) < 1e-15
    t = np.linspace(-1.0, 1.0, 101)
    vals = phi_basis(2, t, band)
    ref = np.exp(2j * np.pi * band.w_0n * (t - 2 / w)) * np.sinc(w * t - 2)
    assert np.max(np.abs(vals - ref)) < 1e-14
    with pytest.raises(DomainError):
        phi_basis(0, 0.0, ModeBand(w_n=0.0, w_0n=5.0, band=(5.0, 5.0)))


def test_phi_inner_diagonal_and_off_diagonal() -> None:
    band = ModeBand.from_edges(4.0, 6.0)
    window = 40.0  # 80 rate units
    diag = phi_inner(3, 3, band, window)
    assert diag == pytest.approx(1.0 / band.w_n, rel=1e-7)
    for ellp in (4, 5, 8):
        off = phi_inner(3, ellp, band, window)
        assert abs(off) * band.w_n < 1e-6


def test_phi_inner_is_translation_invariant() -> None:
    band = ModeBand.from_edges(10.0, 11.5)
    window = 50.0
    for delta in (0, 1, 4):
        first = phi_inner(0, delta, band, window)
        shifted = phi_inner(7, 7 + delta, band, window)
        assert abs(first - shifted) < 1e-15


def test_phi_inner_rejects_short_windows() -> None:
    band = ModeBand.from_edges(4.0, 6.0)  # w_n = 2 -> minimum window 25 s
    with pytest.raises(DomainError):
        phi_inner(0, 1, band, 20.0)
    with pytest.raises(DomainError):
        phi_inner(0, 1, band, math.inf)


def test_reconstruct_interpolates_through_samples() -> None:
    band = ModeBand.from_edges(9.5, 10.5)
    rng = np.random.Generator(np.random.Philox(5))
    values = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    train = SampleTrain(values=values, ell_lo=0, ell_hi=8, spacing=1.0)
    got = reconstruct(train, band, train.times)
    assert np.max(np.abs(got - values)) < 1e-12


def test_reconstruct_matches_signal_between_samples() -> None:
    band = ModeBand.from_edges(10.0, 11.0)
    spectrum = lambda omega: np.cos(
        np.pi * (omega / (2.0 * np.pi) - band.w_0n)) ** 2
    train = fourier_coefficients(spectrum, band, (-30, 30))
    t = np.linspace(-2.0, 2.0, 101)
    ref = mode_time_signal(spectrum, band, t)
    got = reconstruct(train, band, t)
    # Kernel tails decay like 1/t^3, so +-30 samples leave ~1e-4 truncation.
    assert np.max(np.abs(got - ref)) < 1e-3
    assert np.max(np.abs(got - ref)) / np.max(np.abs(ref)) < 5e-4


def test_sample_train_validation() -> None:
    with pytest.raises(DomainError):
        SampleTrain(values=np.zeros(3, dtype=complex), ell_lo=0, ell_hi=4,
                    spacing=1.0)
    with pytest.raises(DomainError):
        SampleTrain(values=np.zeros(1, dtype=complex), ell_lo=2, ell_hi=1,
                    spacing=1.0)
    with pytest.raises(DomainError):
        SampleTrain(values=np.zeros(2, dtype=complex), ell_lo=0, ell_hi=1,
                    spacing=0.0)
    train = SampleTrain(values=np.arange(3, dtype=complex), ell_lo=0,
                        ell_hi=2, spacing=0.5)
    assert len(train) == 3
    with pytest.raises(ValueError):
        train.values[0] = 9.0


@settings(deadline=None, max_examples=60, derandomize=True)
@given(
    ell=st.integers(min_value=-20, max_value=20),
    u=st.floats(min_value=-30.0, max_value=30.0, allow_nan=False),
)
def test_phi_basis_is_bounded_by_one(ell: int, u: float) -> None:
    band = ModeBand.from_edges(7.0, 9.5)
    assert abs(phi_basis(ell, u, band)) <= 1.0 + 1e-12


def test_support_degenerate_cases_are_exact() -> None:
    assert legendre_support_check(lambda x: np.ones_like(x), 1.5, 0.0, 4) == 1.5
    r, c = 0.3, 3e8
    assert legendre_support_check(
        lambda x: np.ones_like(x), 0.0, r, 2, c) == 2 * r / c


def test_support_equals_window_plus_transit_for_every_mode() -> None:
    obs_t, r, c = 1e-3, 0.3, 3e8
    dt = (r / c) / 256.0
    expected = obs_t + 2 * r / c
    for n in (0, 1, 3):
        measured = legendre_support_check(
            lambda x: np.ones_like(x), obs_t, r, n, c)
        assert abs(measured - expected) <= dt * (1 + 1e-6), n


def test_support_check_validation() -> None:
    ones = lambda x: np.ones_like(x)
    with pytest.raises(DomainError):
        legendre_support_check(ones, 1.0, 0.1, -1)
    with pytest.raises(DomainError):
        legendre_support_check(ones, 1.0, 0.1, 1.5)  # type: ignore[arg-type]
    with pytest.raises(DomainError):
        legendre_support_check(ones, 1.0, -0.1, 1)
    with pytest.raises(DomainError):
        legendre_support_check(ones, -1.0, 0.1, 1)
    with pytest.raises(DomainError):
        legendre_support_check(ones, 1.0, 0.1, 1, 0.0)
