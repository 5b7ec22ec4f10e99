"""Subjective-vertical-conflict accumulation of motion sickness incidence.

The model tracks the mismatch between the specific force the vestibular
system senses and the slowly adapting internal estimate of "down":

1. Head roll and pitch angles come from the rotational acceleration
   channels, integrated twice with a leak on both stages so that
   acceleration-only input cannot drift the angles without bound.
2. The sensed specific force is the translational head acceleration plus
   gravity expressed in the tilted head frame.
3. The subjective vertical is a first-order low-pass of the sensed specific
   force (time constant `tau_s`), initialized at rest so a stationary trace
   produces no startup transient.
4. The conflict is the vector magnitude of (sensed - subjective); it is
   squashed through a Hill function c^n / (b^n + c^n).
5. Two cascaded leaky integrators (time constant `mu_s`) accumulate the
   squashed conflict; 100x their output, kept monotone by a running
   maximum, is the incidence percentage.  Incidence counts the fraction of
   a population that has become sick, so it cannot decrease.

Integration is explicit Euler at the trace sample rate; the recurrences are
evaluated with `scipy.signal.lfilter`, which reproduces the Euler update
exactly.  All parameters are exposed on `SvcParams` and can be substituted;
the defaults give plausible shapes but are not fitted to any dataset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.signal import lfilter

from .errors import DataError, NumericError
from .transmission import MotionTrace


@dataclass(frozen=True)
class SvcParams:
    """Model constants, all strictly positive.

    tau_s   : subjective-vertical adaptation time constant (s)
    b       : conflict half-sensitivity of the Hill squash (m/s^2)
    n       : Hill exponent (>= 1)
    mu_s    : accumulator time constant (s)
    g       : gravity magnitude (m/s^2)
    orientation_leak_s : drift-correction leak on the angle integrators (s)
    """

    tau_s: float = 5.0
    b: float = 0.5
    n: float = 2.0
    mu_s: float = 720.0
    g: float = 9.81
    orientation_leak_s: float = 30.0

    def __post_init__(self):
        for name in ("tau_s", "b", "n", "mu_s", "g", "orientation_leak_s"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0.0:
                raise DataError(f"SVC parameter {name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, value)
        if self.n < 1.0:
            raise DataError(f"Hill exponent must be >= 1, got {self.n}")

    def as_dict(self) -> dict:
        return {
            "tau_s": self.tau_s,
            "b": self.b,
            "n": self.n,
            "mu_s": self.mu_s,
            "g": self.g,
            "orientation_leak_s": self.orientation_leak_s,
        }


@dataclass(frozen=True)
class MsiSeries:
    """Motion sickness incidence over time, percent of population, in [0, 100]."""

    time_s: np.ndarray = field(repr=False)
    msi_percent: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.time_s, dtype=np.float64)
        m = np.asarray(self.msi_percent, dtype=np.float64)
        if t.ndim != 1 or t.shape != m.shape or t.size == 0:
            raise DataError("time and MSI arrays must be matching non-empty 1-D arrays")
        t = t.copy()
        m = m.copy()
        t.flags.writeable = False
        m.flags.writeable = False
        object.__setattr__(self, "time_s", t)
        object.__setattr__(self, "msi_percent", m)

    @property
    def final(self) -> float:
        return float(self.msi_percent[-1])


def _euler_stage(x: np.ndarray, gain_dt: float, decay: float, y0: float) -> np.ndarray:
    # y[k+1] = decay*y[k] + gain_dt*x[k], y[0] = y0, evaluated in C by lfilter.
    b = np.array([0.0, gain_dt])
    a = np.array([1.0, -decay])
    y, _ = lfilter(b, a, x, zi=np.array([float(y0)]))
    return y


def svc_states(head: MotionTrace, params: SvcParams | None = None) -> Mapping[str, np.ndarray]:
    """All intermediate trajectories of the model, keyed by name.

    Returns arrays aligned with the trace timeline: ``roll_angle``,
    ``pitch_angle`` (rad), ``sensed`` and ``subjective_vertical`` (3, n)
    specific forces, ``conflict`` (m/s^2), ``squashed`` (unitless), the two
    accumulator stages ``stage1`` and ``stage2``, and ``msi_percent``.
    """
    p = params if params is not None else SvcParams()
    fs = head.sample_rate_hz
    dt = 1.0 / fs
    if dt >= p.tau_s:
        raise DataError(
            f"sample interval {dt:g} s is too coarse for tau_s={p.tau_s:g} s; "
            "the explicit integration needs sample_rate_hz * tau_s >> 1"
        )
    n = head.n_samples

    leak = 1.0 - dt / p.orientation_leak_s
    roll_rate = _euler_stage(head.channels["roll"], dt, leak, 0.0)
    pitch_rate = _euler_stage(head.channels["pitch"], dt, leak, 0.0)
    roll_angle = _euler_stage(roll_rate, dt, leak, 0.0)
    pitch_angle = _euler_stage(pitch_rate, dt, leak, 0.0)

    # Gravity in the tilted head frame; magnitude stays g for any angles.
    sin_r, cos_r = np.sin(roll_angle), np.cos(roll_angle)
    sin_p, cos_p = np.sin(pitch_angle), np.cos(pitch_angle)
    gravity = np.empty((3, n))
    gravity[0] = p.g * sin_p
    gravity[1] = -p.g * cos_p * sin_r
    gravity[2] = p.g * cos_p * cos_r

    sensed = np.empty((3, n))
    sensed[0] = head.channels["x"] + gravity[0]
    sensed[1] = head.channels["y"] + gravity[1]
    sensed[2] = head.channels["z"] + gravity[2]

    vertical = np.empty((3, n))
    rest = (0.0, 0.0, p.g)
    alpha = dt / p.tau_s
    for i in range(3):
        vertical[i] = _euler_stage(sensed[i], alpha, 1.0 - alpha, rest[i])

    conflict = np.sqrt(np.sum(np.square(sensed - vertical), axis=0))
    cn = conflict**p.n
    squashed = cn / (p.b**p.n + cn)

    beta = dt / p.mu_s
    stage1 = _euler_stage(squashed, beta, 1.0 - beta, 0.0)
    stage2 = _euler_stage(stage1, beta, 1.0 - beta, 0.0)
    msi = 100.0 * np.maximum.accumulate(stage2)

    for name, arr in (("conflict", conflict), ("msi", msi)):
        if not np.all(np.isfinite(arr)):
            raise NumericError(f"SVC produced non-finite {name} values")

    return {
        "roll_angle": roll_angle,
        "pitch_angle": pitch_angle,
        "sensed": sensed,
        "subjective_vertical": vertical,
        "conflict": conflict,
        "squashed": squashed,
        "stage1": stage1,
        "stage2": stage2,
        "msi_percent": msi,
    }


def run_svc(head: MotionTrace, params: SvcParams | None = None) -> MsiSeries:
    """Run the model over a head trace and return the incidence time series."""
    states = svc_states(head, params)
    return MsiSeries(time_s=head.time_s, msi_percent=states["msi_percent"])
