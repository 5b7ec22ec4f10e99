from __future__ import annotations

import math

import numpy as np
import pytest

from motioncomfort import (
    AXES,
    DataError,
    MotionTrace,
    MsiSeries,
    SvcParams,
    SynthComponent,
    run_svc,
    synth_trace,
)
from motioncomfort.svc import svc_states


def _head(channels: dict, fs: float = 50.0, n: int | None = None) -> MotionTrace:
    if n is None:
        n = len(next(iter(channels.values())))
    full = {a: channels.get(a, np.zeros(n)) for a in AXES}
    return MotionTrace(sample_rate_hz=fs, channels=full, frame_label="head")


def _assert_series_contract(series: MsiSeries):
    assert np.all(series.msi_percent >= 0.0)
    assert np.all(series.msi_percent <= 100.0)
    assert np.all(np.diff(series.msi_percent) >= 0.0)


def test_zero_motion_yields_identically_zero():
    series = run_svc(_head({}, n=5000))
    _assert_series_contract(series)
    assert np.all(series.msi_percent == 0.0)


def test_constant_offset_conflict_decays_exponentially():
    fs, dur, d = 50.0, 60.0, 2.0
    n = int(dur * fs)
    head = _head({"z": np.full(n, d)}, fs=fs)
    params = SvcParams()
    states = svc_states(head, params)
    t = np.arange(n) / fs
    want = d * np.exp(-t / params.tau_s)
    # first-order response closed form, up to the Euler pole error
    assert np.max(np.abs(states["conflict"] - want)) < 1e-3 * d
    _assert_series_contract(run_svc(head, params))


def test_constant_offset_msi_plateaus():
    fs, dur, d = 20.0, 2400.0, 2.0
    n = int(dur * fs)
    head = _head({"z": np.full(n, d)}, fs=fs)
    series = run_svc(head)
    _assert_series_contract(series)
    assert series.final > 0.0
    # conflict dies within seconds; the accumulator peaks and then holds
    i_80 = int(0.8 * n)
    assert series.msi_percent[-1] == series.msi_percent[i_80]


def test_low_frequency_sine_long_run():
    head = _head(
        {"z": 1.0 * np.sin(2 * np.pi * 0.2 * np.arange(int(1800 * 50)) / 50.0)}, fs=50.0
    )
    series = run_svc(head)
    _assert_series_contract(series)
    assert 0.0 < series.final < 100.0
    # sustained stimulus: strictly increasing over every quarter
    quarters = np.array_split(series.msi_percent, 4)
    for q in quarters:
        assert q[-1] > q[0]


def _oracle_final_msi(head: MotionTrace, params: SvcParams, refine: int) -> float:
    """Plain-loop explicit Euler at `refine` times the trace rate."""
    fs = head.sample_rate_hz * refine
    dt = 1.0 / fs
    n = head.n_samples
    t_src = np.arange(n) / head.sample_rate_hz
    t_fine = np.arange(n * refine) / fs
    ch = {a: np.interp(t_fine, t_src, head.channels[a]) for a in AXES}
    g, tau, mu, b, hill_n = params.g, params.tau_s, params.mu_s, params.b, params.n
    leak = params.orientation_leak_s
    roll_rate = pitch_rate = roll = pitch = 0.0
    v = [0.0, 0.0, g]
    i1 = i2 = 0.0
    peak = 0.0
    for k in range(t_fine.size):
        peak = max(peak, i2)
        gx = g * math.sin(pitch)
        gy = -g * math.cos(pitch) * math.sin(roll)
        gz = g * math.cos(pitch) * math.cos(roll)
        f = (ch["x"][k] + gx, ch["y"][k] + gy, ch["z"][k] + gz)
        c = math.sqrt(sum((fi - vi) ** 2 for fi, vi in zip(f, v)))
        h = c**hill_n / (b**hill_n + c**hill_n)
        i2 += dt * (i1 - i2) / mu
        i1 += dt * (h - i1) / mu
        v = [vi + dt * (fi - vi) / tau for vi, fi in zip(v, f)]
        roll += dt * (roll_rate - roll / leak)
        pitch += dt * (pitch_rate - pitch / leak)
        roll_rate += dt * (ch["roll"][k] - roll_rate / leak)
        pitch_rate += dt * (ch["pitch"][k] - pitch_rate / leak)
    return 100.0 * max(peak, i2)


def _oracle_head_trace() -> MotionTrace:
    return synth_trace(
        [
            SynthComponent(axis="z", kind="sine", amplitude=1.0, f0=0.2),
            SynthComponent(axis="x", kind="noise", amplitude=0.3, f0=0.05, f1=2.0, seed=31),
            SynthComponent(axis="pitch", kind="noise", amplitude=0.04, f0=0.05, f1=1.0, seed=32),
        ],
        duration_s=600.0,
        sample_rate_hz=50.0,
        frame_label="head",
    )


def test_fine_step_oracle_agreement():
    head = _oracle_head_trace()
    params = SvcParams()
    got = run_svc(head, params).final
    want = _oracle_final_msi(head, params, refine=10)
    assert want > 0.0
    assert abs(got - want) < 0.02 * want


def test_step_halving_convergence():
    head = _oracle_head_trace()
    base = run_svc(head).final
    # halve the integration step by resampling the same underlying signal
    fs2 = head.sample_rate_hz * 2
    n2 = head.n_samples * 2
    t_src = head.time_s
    t2 = np.arange(n2) / fs2
    halved = MotionTrace(
        sample_rate_hz=fs2,
        channels={a: np.interp(t2, t_src, head.channels[a]) for a in AXES},
        frame_label="head",
    )
    refined = run_svc(halved).final
    assert abs(refined - base) < 0.01 * base


def test_bounded_for_violent_input():
    rng = np.random.default_rng(33)
    head = _head(
        {a: 50.0 * rng.standard_normal(30000) for a in ("x", "y", "z")}, fs=50.0
    )
    series = run_svc(head)
    _assert_series_contract(series)
    assert series.final <= 100.0


def test_scaling_up_does_not_decrease_final_msi():
    rng = np.random.default_rng(34)
    channels = {a: 0.5 * rng.standard_normal(20000) for a in ("x", "y", "z")}
    channels["pitch"] = 0.02 * rng.standard_normal(20000)
    base = run_svc(_head(dict(channels), fs=50.0)).final
    doubled = run_svc(
        _head({a: 2.0 * v for a, v in channels.items()}, fs=50.0)
    ).final
    assert doubled >= base


def test_params_validation():
    with pytest.raises(DataError):
        SvcParams(tau_s=0.0)
    with pytest.raises(DataError):
        SvcParams(b=-1.0)
    with pytest.raises(DataError):
        SvcParams(n=0.5)


def test_step_must_resolve_time_constant():
    head = _head({"z": np.ones(10)}, fs=0.1)  # dt = 10 s >= tau_s
    with pytest.raises(DataError, match="coarse"):
        run_svc(head, SvcParams(tau_s=5.0))


def test_series_time_matches_trace():
    head = _head({"z": np.ones(100)}, fs=50.0)
    series = run_svc(head)
    assert series.time_s.shape == (100,)
    assert series.time_s[1] == pytest.approx(1 / 50.0)
