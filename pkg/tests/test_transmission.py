from __future__ import annotations

import logging

import numpy as np
import pytest

from motioncomfort import (
    AXES,
    DataError,
    FrfChannelId,
    FrfCurve,
    FrfBundle,
    MotionTrace,
    fft_apply,
    identity_bundle,
    transmit,
)
from conftest import random_trace, rel_err


def test_trace_validation():
    with pytest.raises(DataError, match="missing"):
        MotionTrace(sample_rate_hz=100.0, channels={"x": [0.0, 1.0]})
    good = {a: np.zeros(4) for a in AXES}
    bad = dict(good, z=np.array([0.0, np.nan, 0.0, 0.0]))
    with pytest.raises(DataError, match="non-finite"):
        MotionTrace(sample_rate_hz=100.0, channels=bad)
    bad = dict(good, y=np.zeros(3))
    with pytest.raises(DataError, match="inconsistent"):
        MotionTrace(sample_rate_hz=100.0, channels=bad)
    with pytest.raises(DataError, match="2 samples"):
        MotionTrace(sample_rate_hz=100.0, channels={a: np.zeros(1) for a in AXES})
    with pytest.raises(DataError, match="positive"):
        MotionTrace(sample_rate_hz=0.0, channels=good)


def test_trace_channels_immutable():
    trace = random_trace(0, n=16)
    with pytest.raises(ValueError):
        trace.channels["x"][0] = 1.0


def test_fft_apply_identity():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(1000)
    y = fft_apply(x, FrfCurve.constant(1.0), 100.0)
    assert rel_err(y, x) < 1e-9


def test_fft_apply_sinusoid_closed_form():
    fs, f0, n = 100.0, 1.0, 1000  # integer number of periods
    t = np.arange(n) / fs
    x = np.sin(2 * np.pi * f0 * t)
    curve = FrfCurve(
        freq_hz=[0.5, 1.0, 2.0], gain=[2.0, 2.0, 2.0], phase_rad=[-np.pi / 2] * 3
    )
    y = fft_apply(x, curve, fs)
    want = 2.0 * np.sin(2 * np.pi * f0 * t - np.pi / 2)
    assert rel_err(y, want) < 1e-6


def test_fft_apply_dc_bin_uses_held_gain():
    curve = FrfCurve(freq_hz=[0.4, 1.0], gain=[3.0, 1.0], phase_rad=[-0.7, -0.7])
    x = np.full(256, 5.0)
    y = fft_apply(x, curve, 100.0)
    # held toward DC: gain 3, phase dropped at the 0 Hz bin
    assert rel_err(y, np.full(256, 15.0)) < 1e-9


def test_fft_apply_rejects_non_finite():
    with pytest.raises(DataError, match="non-finite"):
        fft_apply(np.array([0.0, np.inf, 0.0]), FrfCurve.constant(1.0), 10.0)


def test_nyquist_guard_warns_but_proceeds(caplog):
    curve = FrfCurve(freq_hz=[1.0, 40.0], gain=[1.0, 1.0], phase_rad=[0.0, 0.0])
    x = np.zeros(64)
    with caplog.at_level(logging.WARNING, logger="motioncomfort.transmission"):
        y = fft_apply(x, curve, 20.0)  # fs <= 2 * 40 Hz
    assert y.shape == x.shape
    assert any("Nyquist" in rec.getMessage() for rec in caplog.records)
    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="motioncomfort.transmission"):
        fft_apply(x, curve, 100.0)  # 100 > 80: fine
    assert not caplog.records


def _bundle_with_z_pitch_coupling(gain=0.5):
    channels = {}
    for cid in identity_bundle().channels:
        units = identity_bundle().channels[cid].units
        g = 1.0 if cid.is_diagonal else 0.0
        if (cid.set_id, cid.input_axis, cid.output_axis) == (1, "z", "pitch"):
            g = gain
        channels[cid] = FrfCurve.constant(g, 0.0, units=units)
    return FrfBundle(model_id="EXP", channels=channels)


def test_transmit_constant_coupling_wiring():
    rng = np.random.default_rng(2)
    z = rng.standard_normal(512)
    seat = MotionTrace.from_channels(100.0, z=z)
    head, breakdown = transmit(seat, _bundle_with_z_pitch_coupling(0.5))
    assert rel_err(head.channels["z"], z) < 1e-9
    assert rel_err(head.channels["pitch"], 0.5 * z) < 1e-9
    for axis in ("x", "y", "roll", "yaw"):
        assert np.max(np.abs(head.channels[axis])) < 1e-12
    assert head.frame_label == "head"
    cid = FrfChannelId(input_axis="z", output_axis="pitch", set_id=1)
    assert rel_err(breakdown.contributions["pitch"][cid], 0.5 * z) < 1e-9


def test_transmit_identity_returns_seat():
    seat = random_trace(3, n=1777)
    head, _ = transmit(seat, identity_bundle())
    for axis in AXES:
        assert rel_err(head.channels[axis], seat.channels[axis]) < 1e-9


def test_transmit_linearity():
    from motioncomfort import builtin_bundle

    bundle = builtin_bundle("EXP")
    a = random_trace(4, n=1000)
    b = random_trace(5, n=1000)
    alpha, beta = 0.7, -1.3
    mixed = MotionTrace(
        sample_rate_hz=100.0,
        channels={ax: alpha * a.channels[ax] + beta * b.channels[ax] for ax in AXES},
    )
    head_mixed, _ = transmit(mixed, bundle)
    head_a, _ = transmit(a, bundle)
    head_b, _ = transmit(b, bundle)
    for ax in AXES:
        want = alpha * head_a.channels[ax] + beta * head_b.channels[ax]
        assert rel_err(head_mixed.channels[ax], want) < 1e-9


def test_breakdown_sums_to_head_channels():
    from motioncomfort import builtin_bundle

    seat = random_trace(6, n=1500)
    head, breakdown = transmit(seat, builtin_bundle("AHM"))
    for axis in AXES:
        assert rel_err(breakdown.total(axis), head.channels[axis]) < 1e-9
    # the wiring: pitch is fed by exactly three channels, yaw by three, x/y/z by two
    assert len(breakdown.contributions["pitch"]) == 3
    assert len(breakdown.contributions["yaw"]) == 3
    assert len(breakdown.contributions["x"]) == 2


@pytest.mark.parametrize("n", [64, 1000, 9973, 2**14])
def test_round_trip_many_lengths(n):
    rng = np.random.default_rng(n)
    x = rng.standard_normal(n)
    y = fft_apply(x, FrfCurve.constant(1.0), 50.0)
    assert rel_err(y, x) < 1e-9


def test_outputs_real_and_finite():
    from motioncomfort import builtin_bundle

    seat = random_trace(7, n=501)
    head, _ = transmit(seat, builtin_bundle("EXP"))
    for axis in AXES:
        arr = head.channels[axis]
        assert arr.dtype == np.float64
        assert np.all(np.isfinite(arr))


def test_circular_time_invariance():
    # exact-length transforms give circular convolution semantics: shifting a
    # periodic input circularly shifts the output
    fs, n = 64.0, 1024
    t = np.arange(n) / fs
    x = np.sin(2 * np.pi * 2.0 * t) + 0.3 * np.sin(2 * np.pi * 5.0 * t + 0.4)
    curve = FrfCurve(
        freq_hz=[0.5, 2.0, 5.0, 8.0],
        gain=[1.0, 1.5, 0.7, 0.2],
        phase_rad=[-0.1, -0.5, -1.0, -1.4],
    )
    y = fft_apply(x, curve, fs)
    m = 137
    y_shifted = fft_apply(np.roll(x, m), curve, fs)
    assert rel_err(y_shifted, np.roll(y, m)) < 1e-6
