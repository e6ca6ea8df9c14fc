"""Command-line front end.

Subcommands:
  compute   evaluate one scenario (SI or dimensionless) and report the DoF
            bound with its breakdown and per-mode bandwidth table;
  sweep     evaluate a grid of dimensionless parameters to CSV (or JSON);
  simulate  run the brute-force wavefield pipeline (synthesize -> noise ->
            analyze -> SNR -> empirical cutoffs) plus Parseval and
            reconstruction checks, reporting pass/fail per property;
  verify    run the cross-module invariant suite and exit nonzero on any
            failing property.

Configs are JSON files holding exactly one of a "scenario" block (SI units)
or a "normalized" block (a, b, d, rho), plus optional "sweep" grids and a
"simulation" block.  Exit codes: 0 success, 2 config/parse, 3 domain,
4 input/output, 5 resolution.  All numeric report fields are printed with 12
significant digits, and outputs are byte-stable for a fixed config and seed.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Sequence

import numpy as np

from . import sampling, specfun, wavefield
from .dofcore import (
    DofBreakdown,
    NormalizedParams,
    Scenario,
    bandwidth_profile,
    critical_frequency,
    dof_asymptotic,
    dof_closed_form,
    dof_mode_sum,
    dof_normalized_breakdown,
    dof_special_cases,
    effective_time,
    truncation_indices,
)
from .errors import ConfigError, DomainError, ModecapError, ResolutionError

__all__ = ["main", "cmd_compute", "cmd_sweep", "cmd_simulate", "cmd_verify"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_RESOLUTION = 5

_CSV_HEADER = "a,b,d,rho,n_min,n_max,t_eff,d1,d2,d3,dof_total"

_SCENARIO_REQUIRED = {"radius_R", "mid_freq_F0", "half_bandwidth_W", "obs_time_T"}
_SCENARIO_OPTIONAL = {"wave_speed_c", "threshold_gamma", "snr_alpha_max"}
_NORMALIZED_KEYS = {"a", "b", "d", "rho"}
_SWEEP_KEYS = {"a", "b", "d", "rho"}
_SIMULATION_KEYS = {"sources", "freq_points", "quad_degree", "seed", "trials"}
_TOP_KEYS = {"scenario", "normalized", "sweep", "simulation"}

_JACOBI_GUARD = 20


def _fmt(x: float) -> str:
    """Canonical 12-significant-digit rendering."""
    return f"{float(x):.12g}"


def _round12(x: float) -> float:
    """Round to the 12 significant digits that get printed."""
    return float(_fmt(x))


# ---------------------------------------------------------------------------
# Config handling


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(cfg) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "scenario" in cfg and "normalized" in cfg:
        raise ConfigError(
            "config must contain exactly one of 'scenario' or 'normalized', not both"
        )
    return cfg


def _number(block: str, key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{block}.{key} must be a number, got {value!r}")
    return float(value)


def _build_scenario(cfg: dict) -> Scenario | None:
    block = cfg.get("scenario")
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError("'scenario' must be a JSON object")
    unknown = set(block) - _SCENARIO_REQUIRED - _SCENARIO_OPTIONAL
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    missing = _SCENARIO_REQUIRED - set(block)
    if missing:
        raise ConfigError(f"scenario is missing required keys: {sorted(missing)}")
    kwargs = {k: _number("scenario", k, v) for k, v in block.items()}
    return Scenario(**kwargs)


def _build_normalized(cfg: dict) -> NormalizedParams | None:
    block = cfg.get("normalized")
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError("'normalized' must be a JSON object")
    if set(block) != _NORMALIZED_KEYS:
        raise ConfigError(
            f"normalized block must have exactly the keys {sorted(_NORMALIZED_KEYS)}, "
            f"got {sorted(block)}"
        )
    kwargs = {k: _number("normalized", k, v) for k, v in block.items()}
    return NormalizedParams(**kwargs)


def _require_point(cfg: dict) -> tuple[Scenario | None, NormalizedParams | None]:
    scenario = _build_scenario(cfg)
    params = _build_normalized(cfg)
    if scenario is None and params is None:
        raise ConfigError(
            "config must contain exactly one of 'scenario' or 'normalized'"
        )
    return scenario, params


def _build_sweep(cfg: dict) -> dict[str, list[float]]:
    block = cfg.get("sweep")
    if block is None:
        raise ConfigError("sweep command requires a 'sweep' block with grids")
    if not isinstance(block, dict):
        raise ConfigError("'sweep' must be a JSON object")
    if set(block) != _SWEEP_KEYS:
        raise ConfigError(
            f"sweep block must have exactly the keys {sorted(_SWEEP_KEYS)}, "
            f"got {sorted(block)}"
        )
    grids: dict[str, list[float]] = {}
    for key, values in block.items():
        if not isinstance(values, list) or not values:
            raise ConfigError(f"sweep.{key} must be a nonempty list")
        grids[key] = [_number("sweep", key, v) for v in values]
    return grids


def _build_simulation(cfg: dict, seed_override: int | None) -> dict[str, int]:
    block = cfg.get("simulation")
    if block is None:
        raise ConfigError("simulate command requires a 'simulation' block")
    if not isinstance(block, dict):
        raise ConfigError("'simulation' must be a JSON object")
    unknown = set(block) - _SIMULATION_KEYS
    if unknown:
        raise ConfigError(f"unknown simulation keys: {sorted(unknown)}")
    out = {"sources": 3, "freq_points": 257, "quad_degree": 0, "seed": 1, "trials": 64}
    for key, value in block.items():
        if key == "quad_degree" and value == "auto":
            out[key] = 0
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"simulation.{key} must be an integer, got {value!r}")
        out[key] = value
    if seed_override is not None:
        out["seed"] = seed_override
    if out["sources"] < 1:
        raise ConfigError("simulation.sources must be >= 1")
    if out["freq_points"] < 2:
        raise ConfigError("simulation.freq_points must be >= 2")
    if out["trials"] < 2:
        raise ConfigError("simulation.trials must be >= 2")
    if not 0 <= out["seed"] < 2**63:
        raise ConfigError("simulation.seed must be a nonnegative 63-bit integer")
    return out


def _thread_count() -> int:
    raw = os.environ.get("MODECAP_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"MODECAP_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"MODECAP_THREADS must be >= 1, got {value}")
    return value


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# Point evaluation shared by compute and sweep


def _normalized_point(p: NormalizedParams) -> tuple[int, int, DofBreakdown]:
    """(n_min, n_max, breakdown) in dimensionless units, a = 0 included."""
    if p.a == 0:
        two_wt = 2.0 * p.b * p.d
        return 0, 0, DofBreakdown(
            d1=1.0, d2=two_wt, d3=0.0, total=two_wt + 1.0, t_eff=p.d
        )
    bd = dof_normalized_breakdown(p)
    n_min, n_max = truncation_indices(p.to_scenario())
    return n_min, n_max, bd


def _scenario_point(s: Scenario) -> tuple[int, int, DofBreakdown]:
    special = dof_special_cases(s)
    if special is not None:
        return 0, 0, special
    n_min, n_max = truncation_indices(s)
    return n_min, n_max, dof_closed_form(s)


def _mode_table(s: Scenario) -> list[dict[str, Any]]:
    """Per-mode rows (n, F_n, W_n), one per mode up to n_max."""
    if s.radius_R == 0:
        return [
            {
                "n": 0,
                "critical_freq_Fn": 0.0,
                "eff_bandwidth_Wn": _round12(2.0 * s.half_bandwidth_W),
            }
        ]
    profile = bandwidth_profile(s)
    return [
        {
            "n": entry.n,
            "critical_freq_Fn": _round12(entry.critical_freq_Fn),
            "eff_bandwidth_Wn": _round12(entry.eff_bandwidth_Wn),
        }
        for entry in profile.per_mode
    ]


def _breakdown_dict(bd: DofBreakdown) -> dict[str, float]:
    return {
        "d1": _round12(bd.d1),
        "d2": _round12(bd.d2),
        "d3": _round12(bd.d3),
        "total": _round12(bd.total),
        "t_eff": _round12(bd.t_eff),
    }


def _csv_row(
    p: NormalizedParams, n_min: int, n_max: int, bd: DofBreakdown
) -> str:
    fields = [
        _fmt(p.a),
        _fmt(p.b),
        _fmt(p.d),
        _fmt(p.rho),
        str(n_min),
        str(n_max),
        _fmt(bd.t_eff),
        _fmt(bd.d1),
        _fmt(bd.d2),
        _fmt(bd.d3),
        _fmt(bd.total),
    ]
    return ",".join(fields)


def _serialize_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# compute


def cmd_compute(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    scenario, params = _require_point(cfg)
    if scenario is not None:
        n_min, n_max, bd = _scenario_point(scenario)
        table_scenario = scenario
        echo: dict[str, Any] = {"scenario": dict(cfg["scenario"])}
        p_equiv = NormalizedParams.from_scenario(scenario)
    else:
        assert params is not None
        n_min, n_max, bd = _normalized_point(params)
        table_scenario = params.to_scenario()
        echo = {"normalized": dict(cfg["normalized"])}
        p_equiv = params

    if args.format == "csv":
        text = _CSV_HEADER + "\n" + _csv_row(p_equiv, n_min, n_max, bd) + "\n"
        _write_output(text, args.out)
        return EXIT_OK

    report = {
        "inputs": echo,
        "n_min": n_min,
        "n_max": n_max,
        "t_eff": _round12(bd.t_eff),
        "dof": _breakdown_dict(bd),
        "mode_table": _mode_table(table_scenario),
    }
    _write_output(_serialize_report(report), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    if "scenario" in cfg and "normalized" in cfg:  # pragma: no cover - guarded above
        raise ConfigError("both scenario and normalized present")
    grids = _build_sweep(cfg)
    points = [
        NormalizedParams(a=a, b=b, d=d, rho=rho)
        for a in grids["a"]
        for b in grids["b"]
        for d in grids["d"]
        for rho in grids["rho"]
    ]

    def evaluate(p: NormalizedParams) -> tuple[NormalizedParams, int, int, DofBreakdown]:
        n_min, n_max, bd = _normalized_point(p)
        return p, n_min, n_max, bd

    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        results = list(pool.map(evaluate, points))

    if args.format == "json":
        rows = [
            {
                "a": _round12(p.a),
                "b": _round12(p.b),
                "d": _round12(p.d),
                "rho": _round12(p.rho),
                "n_min": n_min,
                "n_max": n_max,
                "t_eff": _round12(bd.t_eff),
                "d1": _round12(bd.d1),
                "d2": _round12(bd.d2),
                "d3": _round12(bd.d3),
                "dof_total": _round12(bd.total),
            }
            for p, n_min, n_max, bd in results
        ]
        _write_output(_serialize_report({"rows": rows}), args.out)
        return EXIT_OK

    lines = [_CSV_HEADER]
    lines.extend(_csv_row(p, n_min, n_max, bd) for p, n_min, n_max, bd in results)
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def _raised_cosine_kernel(x: np.ndarray) -> np.ndarray:
    """Unit-band interpolation kernel with 1/t^3 tail decay.

    Spectrum cos^2(pi f) on |f| <= 1/2 (raised cosine), hence exactly
    band-limited; the fast tail decay is what keeps truncated sample sums
    accurate in the window interior.
    """
    return np.sinc(x) + 0.5 * np.sinc(x + 1.0) + 0.5 * np.sinc(x - 1.0)


def _reconstruction_error(band: sampling.ModeBand, t_eff: float, seed: int) -> float:
    """Interior relative L2 reconstruction error for a seeded in-band signal,
    using exactly floor(w_n t_eff) + 1 samples on [0, t_eff]."""
    w, w0 = band.w_n, band.w_0n
    wt = w * t_eff
    rng = np.random.Generator(np.random.Philox(seed))
    n_kernels = 8
    edges = np.linspace(0.18 * wt, 0.82 * wt, n_kernels + 1)
    centers = edges[:-1] + (edges[1:] - edges[:-1]) * rng.uniform(0.2, 0.8, n_kernels)
    coeffs = rng.standard_normal(n_kernels) + 1j * rng.standard_normal(n_kernels)

    def baseband(u: np.ndarray) -> np.ndarray:
        acc = np.zeros(u.shape, dtype=complex)
        for c, u0 in zip(coeffs, centers):
            acc += c * _raised_cosine_kernel(u - u0)
        return acc

    ells = np.arange(0, int(math.floor(wt)) + 1)
    values = baseband(ells.astype(float)) * np.exp(2j * np.pi * w0 * ells / w)
    train = sampling.SampleTrain(
        values=values, ell_lo=0, ell_hi=int(ells[-1]), spacing=1.0 / w
    )
    t = np.linspace(0.1 * t_eff, 0.9 * t_eff, 512)
    truth = baseband(w * t) * np.exp(2j * np.pi * w0 * t)
    recon = sampling.reconstruct(train, band, t)
    return float(
        np.sqrt(np.mean(np.abs(recon - truth) ** 2))
        / np.sqrt(np.mean(np.abs(truth) ** 2))
    )


def _make_sources(
    count: int, freqs: np.ndarray, seed: int
) -> list[wavefield.PlaneWaveSource]:
    rng = np.random.Generator(np.random.Philox(seed))
    sources = []
    for _ in range(count):
        theta = math.acos(rng.uniform(-1.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        sources.append(
            wavefield.PlaneWaveSource(
                theta=theta, phi=phi, amplitude=np.full(freqs.size, phase)
            )
        )
    return sources


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    scenario, params = _require_point(cfg)
    if scenario is None:
        assert params is not None
        scenario = params.to_scenario()
        echo: dict[str, Any] = {"normalized": dict(cfg["normalized"])}
    else:
        echo = {"scenario": dict(cfg["scenario"])}
    sim = _build_simulation(cfg, args.seed)
    if scenario.radius_R == 0:
        raise DomainError("simulation requires radius_R > 0")

    n_min, n_max = truncation_indices(scenario)
    profile = bandwidth_profile(scenario)
    t_eff = effective_time(scenario)
    c = scenario.wave_speed_c
    band_lo, band_hi = scenario.band
    k_max_r = 2.0 * math.pi * band_hi * scenario.radius_R / c
    n_field = math.ceil(k_max_r) + _JACOBI_GUARD
    required_degree = n_max + n_field
    quad_degree = sim["quad_degree"] if sim["quad_degree"] else required_degree
    if quad_degree < required_degree:
        raise ResolutionError(
            f"quadrature degree {quad_degree} is insufficient for kR = "
            f"{k_max_r:.3f} with analysis degree {n_max}; required degree is "
            f"{required_degree}"
        )

    rule = specfun.make_quadrature(quad_degree)
    grid = wavefield.SphericalGrid(radius=scenario.radius_R, rule=rule)
    freqs = np.linspace(band_lo, band_hi, sim["freq_points"])
    freq_step = float(freqs[1] - freqs[0])
    sources = _make_sources(sim["sources"], freqs, sim["seed"])

    field = wavefield.synthesize_field(sources, grid, freqs, wave_speed_c=c)
    theo = wavefield.theoretical_modes(
        sources, scenario.radius_R, freqs, n_max, wave_speed_c=c
    )
    analyzed = wavefield.analyze_modes(field, grid, n_max, freqs)
    theo_scale = float(np.max(np.abs(theo.coeffs)))
    jacobi_err = float(np.max(np.abs(analyzed.coeffs - theo.coeffs))) / theo_scale

    analyzed_full = wavefield.analyze_modes(field, grid, n_field, freqs)
    parseval_err = wavefield.parseval_check(field, grid, analyzed_full)

    # Excitation peak power: fixes sigma0 so the peak mode SNR equals the
    # scenario's snr_alpha_max.
    bessel_rows = np.stack(
        [
            specfun.sph_bessel_j(n, 2.0 * np.pi * freqs * scenario.radius_R / c)
            for n in range(n_max + 1)
        ]
    )
    degrees = np.repeat(np.arange(n_max + 1), 2 * np.arange(n_max + 1) + 1)
    with np.errstate(invalid="ignore", divide="ignore"):
        alpha_sq = np.where(
            np.abs(bessel_rows[degrees, :]) > 1e-14,
            np.abs(theo.coeffs / bessel_rows[degrees, :]) ** 2,
            0.0,
        )
    alpha_max_sq = float(np.max(alpha_sq))
    sigma0_sq = alpha_max_sq / scenario.snr_alpha_max
    noise = wavefield.NoiseModel(
        sigma0_sq=sigma0_sq, alpha_max_sq=alpha_max_sq, seed=sim["seed"]
    )

    # Noise-variance property: Monte Carlo on one frequency column; per-trial
    # seeds derive from the base seed so trials decorrelate deterministically.
    mid = freqs.size // 2
    column = field[:, [mid]]
    base = analyzed.coeffs[:, [mid]]
    acc = np.zeros(base.shape[0], dtype=float)
    for trial in range(sim["trials"]):
        trial_noise = wavefield.NoiseModel(
            sigma0_sq=sigma0_sq,
            alpha_max_sq=alpha_max_sq,
            seed=sim["seed"] + 1 + trial,
        )
        noisy = wavefield.add_noise(column, grid, trial_noise)
        nu = wavefield.analyze_modes(noisy, grid, n_max, freqs[[mid]]).coeffs - base
        acc += np.abs(nu[:, 0]) ** 2
    var_est = acc / sim["trials"]
    noise_var_err = float(np.max(np.abs(var_est - sigma0_sq) / sigma0_sq))
    noise_var_tol = 5.0 / math.sqrt(sim["trials"])

    # Detectability: SNR curves from the analyzed (noiseless) spectrum; the
    # noise model enters through sigma0_sq.
    snr = wavefield.mode_snr(analyzed, noise)
    cutoffs = []
    one_sided = True
    for n in range(1, n_max + 1):
        f_hat = wavefield.empirical_critical_frequency(
            snr, freqs, scenario.threshold_gamma, n
        )
        f_n = critical_frequency(scenario, n)
        ok = f_hat >= f_n - freq_step
        one_sided = one_sided and ok
        cutoffs.append(
            {
                "n": n,
                "analytic_Fn": _round12(f_n),
                "empirical_Fn": None if math.isinf(f_hat) else _round12(f_hat),
                "detected": not math.isinf(f_hat),
            }
        )

    recon_band = sampling.ModeBand.from_edges(band_lo, band_hi)
    recon_err = _reconstruction_error(recon_band, t_eff, sim["seed"] + 10_000)

    properties = [
        {
            "name": "jacobi_anger_consistency",
            "value": _round12(jacobi_err),
            "tolerance": 1e-8,
            "passed": bool(jacobi_err <= 1e-8),
        },
        {
            "name": "parseval",
            "value": _round12(parseval_err),
            "tolerance": 1e-8,
            "passed": bool(parseval_err <= 1e-8),
        },
        {
            "name": "mode_noise_variance",
            "value": _round12(noise_var_err),
            "tolerance": _round12(noise_var_tol),
            "passed": bool(noise_var_err <= noise_var_tol),
        },
        {
            "name": "detectability_one_sided",
            "value": one_sided,
            "tolerance": _round12(freq_step),
            "passed": bool(one_sided),
        },
        {
            "name": "reconstruction",
            "value": _round12(recon_err),
            "tolerance": 1e-2,
            "passed": bool(recon_err <= 1e-2),
        },
    ]

    bd = dof_closed_form(scenario)
    report = {
        "inputs": echo,
        "n_min": n_min,
        "n_max": n_max,
        "t_eff": _round12(t_eff),
        "dof": _breakdown_dict(bd),
        "mode_table": _mode_table(scenario),
        "simulation": {
            "sources": sim["sources"],
            "freq_points": sim["freq_points"],
            "freq_step": _round12(freq_step),
            "quad_degree": quad_degree,
            "required_degree": required_degree,
            "trials": sim["trials"],
            "seed": sim["seed"],
            "sigma0_sq": _round12(sigma0_sq),
            "empirical_cutoffs": cutoffs,
            "properties": properties,
        },
    }
    _write_output(_serialize_report(report), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _verify_bessel_bound() -> tuple[bool, str]:
    z = np.linspace(0.0, 40.0, 321)
    worst = 0.0
    for n in list(range(9)) + [20, 50]:
        j = np.abs(specfun.sph_bessel_j(n, z))
        bound = specfun.sph_bessel_j_bound(n, z)
        if np.any(j > bound * (1 + 1e-12) + 1e-300):
            return False, f"envelope violated at n={n}"
        if n >= 1 and np.any(np.diff(bound) < 0):
            return False, f"envelope not increasing at n={n}"
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(bound > 0, j / bound, 0.0)
        worst = max(worst, float(np.max(ratio)))
    return True, f"max |j_n|/bound = {worst:.6f} over n<=50, z<=40"


def _verify_harmonic_gram() -> tuple[bool, str]:
    rule = specfun.make_quadrature(10)
    y = specfun.harmonic_matrix(10, rule.theta, rule.phi)
    gram = (y * rule.weights) @ y.conj().T
    err = float(np.max(np.abs(gram - np.eye(y.shape[0]))))
    return err <= 1e-12, f"max |Gram - I| = {err:.3e}"


def _verify_phi_orthogonality() -> tuple[bool, str]:
    band = sampling.ModeBand.from_edges(10.0, 13.0)
    w = band.w_n
    worst = 0.0
    for ell, ellp in [(0, 0), (0, 1), (0, 3), (5, 5), (2, 7)]:
        value = sampling.phi_inner(ell, ellp, band, 50.0 / w)
        target = 1.0 / w if ell == ellp else 0.0
        worst = max(worst, abs(value - target) * w)
    return worst <= 1e-6, f"max scaled deviation = {worst:.3e}"


def _verify_legendre_support() -> tuple[bool, str]:
    obs_t, r, c = 1e-3, 0.3, 3e8
    dt = (r / c) / 256.0
    expected = obs_t + 2.0 * r / c
    worst = 0.0
    for n in (0, 1, 3):
        measured = sampling.legendre_support_check(
            lambda x: np.ones_like(x), obs_t, r, n, c
        )
        worst = max(worst, abs(measured - expected))
    return worst <= dt * (1 + 1e-6), f"max |support error| = {worst:.3e} s (step {dt:.3e})"


def _verify_dof_ordering() -> tuple[bool, str]:
    worst = 0.0
    for a in (0.25, 0.7, 1.0, 2.5):
        for b in (0.05, 0.3, 0.65, 1.0):
            for d in (0.0, 1.0, 10.0):
                for rho in (1.0, 10.0, 1e3):
                    s = NormalizedParams(a=a, b=b, d=d, rho=rho).to_scenario()
                    ratio = dof_mode_sum(s) / dof_closed_form(s).total
                    worst = max(worst, ratio)
    return worst <= 1.0 + 1e-12, f"max mode_sum/closed_form = {worst:.12f}"


def _verify_dof_consistency() -> tuple[bool, str]:
    worst = 0.0
    for a in (0.3, 1.0, 2.0):
        for b in (0.0, 0.4, 1.0):
            for d in (0.0, 2.0):
                for rho in (0.5, 1.0, 20.0):
                    p = NormalizedParams(a=a, b=b, d=d, rho=rho)
                    s = p.to_scenario(mid_freq_F0=3.7e8, wave_speed_c=2.2e8)
                    closed = dof_closed_form(s).total
                    normalized = dof_normalized_breakdown(p).total
                    worst = max(worst, abs(closed - normalized) / closed)
                    leveled = Scenario(
                        radius_R=s.radius_R,
                        mid_freq_F0=s.mid_freq_F0,
                        half_bandwidth_W=s.half_bandwidth_W,
                        obs_time_T=s.obs_time_T,
                        wave_speed_c=s.wave_speed_c,
                        threshold_gamma=s.snr_alpha_max,
                        snr_alpha_max=s.snr_alpha_max,
                    )
                    gap = abs(
                        dof_closed_form(leveled).total - dof_asymptotic(s).total
                    ) / dof_closed_form(leveled).total
                    worst = max(worst, gap)
    return worst <= 1e-9, f"max relative inconsistency = {worst:.3e}"


def _verify_detectability() -> tuple[bool, str]:
    scenario = Scenario(
        radius_R=0.5,
        mid_freq_F0=1.0,
        half_bandwidth_W=0.25,
        obs_time_T=2.0,
        wave_speed_c=1.0,
        threshold_gamma=1.0,
        snr_alpha_max=1e4,
    )
    n_min, n_max = truncation_indices(scenario)
    c = scenario.wave_speed_c
    k_max_r = 2.0 * math.pi * scenario.band[1] * scenario.radius_R / c
    degree = n_max + math.ceil(k_max_r) + _JACOBI_GUARD
    rule = specfun.make_quadrature(degree)
    grid = wavefield.SphericalGrid(radius=scenario.radius_R, rule=rule)
    freqs = np.linspace(scenario.band[0], scenario.band[1], 129)
    sources = [wavefield.PlaneWaveSource(theta=1.1, phi=0.4, amplitude=1.0)]
    theo = wavefield.theoretical_modes(
        sources, scenario.radius_R, freqs, n_max, wave_speed_c=c
    )
    alpha_max_sq = float(
        np.max(np.abs(4.0 * np.pi * specfun.harmonic_matrix(
            n_max, np.array([1.1]), np.array([0.4])
        )) ** 2)
    )
    noise = wavefield.NoiseModel(
        sigma0_sq=alpha_max_sq / scenario.snr_alpha_max,
        alpha_max_sq=alpha_max_sq,
        seed=1,
    )
    snr = wavefield.mode_snr(theo, noise)
    step = float(freqs[1] - freqs[0])
    for n in range(1, n_max + 1):
        f_hat = wavefield.empirical_critical_frequency(
            snr, freqs, scenario.threshold_gamma, n
        )
        f_n = critical_frequency(scenario, n)
        if f_hat < f_n - step:
            return False, f"mode {n} detected at {f_hat:.6g} < F_n - step = {f_n - step:.6g}"
    return True, f"empirical cutoffs one-sided for n = 1..{n_max}"


def cmd_verify(args: argparse.Namespace) -> int:
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("bessel_envelope_bound", _verify_bessel_bound),
        ("harmonic_gram_identity", _verify_harmonic_gram),
        ("phi_orthogonality", _verify_phi_orthogonality),
        ("legendre_support_additivity", _verify_legendre_support),
        ("dof_ordering", _verify_dof_ordering),
        ("dof_consistency", _verify_dof_consistency),
        ("detectability_one_sided", _verify_detectability),
    ]
    lines = []
    all_ok = True
    for name, check in checks:
        ok, detail = check()
        all_ok = all_ok and ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    lines.append("verify: " + ("all properties hold" if all_ok else "FAILURES present"))
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_ok else 1


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modecap",
        description=(
            "Degrees-of-freedom bounds for band-limited wavefields observed "
            "over finite spherical and temporal windows"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_config: bool) -> None:
        if needs_config:
            p.add_argument("--config", required=True, help="path to JSON config")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument(
            "--seed", type=int, default=None, help="override the simulation seed"
        )
        p.add_argument(
            "--format",
            choices=("csv", "json"),
            default=None,
            help="output format",
        )

    p_compute = sub.add_parser("compute", help="evaluate one scenario")
    add_common(p_compute, needs_config=True)
    p_sweep = sub.add_parser("sweep", help="evaluate a dimensionless grid")
    add_common(p_sweep, needs_config=True)
    p_sim = sub.add_parser("simulate", help="run the wavefield verification pipeline")
    add_common(p_sim, needs_config=True)
    p_verify = sub.add_parser("verify", help="run the invariant suite")
    add_common(p_verify, needs_config=False)
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "compute":
        if args.format is None:
            args.format = "json"
        return cmd_compute(args)
    if args.command == "sweep":
        if args.format is None:
            args.format = "csv"
        return cmd_sweep(args)
    if args.command == "simulate":
        if args.format == "csv":
            raise ConfigError("simulate reports are JSON only; csv is not supported")
        return cmd_simulate(args)
    if args.command == "verify":
        return cmd_verify(args)
    raise ConfigError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_CONFIG
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResolutionError as exc:
        print(f"resolution error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ModecapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
