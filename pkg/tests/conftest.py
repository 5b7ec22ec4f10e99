from __future__ import annotations

import numpy as np
import pytest

from motioncomfort import AXES, MotionTrace, SynthComponent, synth_trace

BROADBAND_COMPONENTS = (
    SynthComponent(axis="x", kind="noise", amplitude=0.4, f0=0.05, f1=4.0, seed=101),
    SynthComponent(axis="y", kind="noise", amplitude=0.3, f0=0.05, f1=4.0, seed=102),
    SynthComponent(axis="z", kind="noise", amplitude=0.8, f0=0.05, f1=4.0, seed=103),
    SynthComponent(axis="z", kind="sine", amplitude=0.5, f0=1.0),
    SynthComponent(axis="roll", kind="noise", amplitude=0.05, f0=0.05, f1=2.0, seed=104),
    SynthComponent(axis="pitch", kind="noise", amplitude=0.06, f0=0.05, f1=2.0, seed=105),
    SynthComponent(axis="yaw", kind="noise", amplitude=0.04, f0=0.05, f1=2.0, seed=106),
)


def random_trace(seed: int, n: int = 2000, fs: float = 100.0, scale: float = 1.0) -> MotionTrace:
    """A dense random trace with energy on every axis."""
    rng = np.random.default_rng(seed)
    channels = {axis: scale * rng.standard_normal(n) for axis in AXES}
    return MotionTrace(sample_rate_hz=fs, channels=channels)


def sine_trace(axis: str, amplitude: float, f0: float, duration_s: float, fs: float) -> MotionTrace:
    return synth_trace(
        [SynthComponent(axis=axis, kind="sine", amplitude=amplitude, f0=f0)], duration_s, fs
    )


def rel_err(got, want) -> float:
    got = np.asarray(got, dtype=float)
    want = np.asarray(want, dtype=float)
    denom = max(float(np.max(np.abs(want))), 1e-300)
    return float(np.max(np.abs(got - want))) / denom


@pytest.fixture(scope="session")
def broadband_seat() -> MotionTrace:
    return synth_trace(BROADBAND_COMPONENTS, 600.0, 100.0)
