"""Reading, writing and synthesizing 6-DOF motion traces.

Trace files are CSV with header ``t_s,ax,ay,az,aroll,apitch,ayaw`` and a
uniform time column (relative step deviation at most 1 ppm).  Values are
written with 17 significant digits so a save/load round trip is bit exact.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import fft as _fft

from .errors import ConfigError, DataError
from .frf import AXES
from .transmission import MotionTrace

TRACE_HEADER = "t_s,ax,ay,az,aroll,apitch,ayaw"
_COLUMN_AXES = ("x", "y", "z", "roll", "pitch", "yaw")

UNIFORMITY_TOL = 1e-6  # max relative deviation of the time step


def atomic_write_text(path, text: str) -> None:
    """Write a file via a temp file and rename, so readers never see partials."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_trace(path, fmt: str = "csv") -> MotionTrace:
    """Load a trace file, inferring the sample rate from the time column."""
    if fmt != "csv":
        raise ConfigError(f"unsupported trace format {fmt!r}")
    path = Path(path)
    try:
        with open(path) as fh:
            lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        raise ConfigError(f"cannot read trace file {path}: {exc}") from exc
    if not lines:
        raise DataError(f"{path}: empty trace file")
    header = lines[0].strip()
    if header != TRACE_HEADER:
        raise DataError(f"{path}: expected header {TRACE_HEADER!r}, got {header!r}")
    try:
        data = np.loadtxt(lines[1:], delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as exc:
        raise DataError(f"{path}: malformed numeric data ({exc})") from exc
    if data.shape[1] != 7:
        raise DataError(f"{path}: expected 7 columns, got {data.shape[1]}")
    if data.shape[0] < 2:
        raise DataError(f"{path}: a trace needs at least 2 samples")
    if not np.all(np.isfinite(data)):
        raise DataError(f"{path}: trace contains non-finite values")

    t = data[:, 0]
    steps = np.diff(t)
    if np.any(steps <= 0.0):
        raise DataError(f"{path}: time column is not strictly increasing")
    dt = (t[-1] - t[0]) / (len(t) - 1)
    if np.max(np.abs(steps - dt)) > UNIFORMITY_TOL * dt:
        raise DataError(f"{path}: non-uniform sampling (time step varies by more than 1 ppm)")
    fs = 1.0 / dt
    # Snap to an integer rate when the residual is far below the 1 ppm contract,
    # so rates like 100 Hz survive the text round trip exactly.
    if abs(fs - round(fs)) <= 1e-9 * fs and round(fs) > 0:
        fs = float(round(fs))

    channels = {axis: data[:, 1 + i] for i, axis in enumerate(_COLUMN_AXES)}
    return MotionTrace(sample_rate_hz=fs, channels=channels, frame_label=path.stem)


def save_trace(trace: MotionTrace, path) -> None:
    """Write a trace in the load_trace format (17 significant digits)."""
    n = trace.n_samples
    cols = [trace.time_s] + [trace.channels[axis] for axis in _COLUMN_AXES]
    body = np.column_stack(cols)
    rows = [TRACE_HEADER]
    rows.extend(",".join(f"{v:.17g}" for v in row) for row in body)
    atomic_write_text(path, "\n".join(rows) + "\n")


@dataclass(frozen=True)
class SynthComponent:
    """One synthetic ingredient on one axis.

    kind is ``sine`` (f0), ``sweep`` (linear chirp f0 -> f1) or ``noise``
    (seeded Gaussian noise spectrally masked to [f0, f1] and scaled so its
    RMS equals `amplitude`).
    """

    axis: str
    kind: str
    amplitude: float
    f0: float
    f1: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.axis not in AXES:
            raise DataError(f"unknown axis {self.axis!r}")
        if self.kind not in ("sine", "sweep", "noise"):
            raise DataError(f"unknown component kind {self.kind!r}")
        if self.kind in ("sweep", "noise") and self.f1 is None:
            raise DataError(f"{self.kind} component needs f1")
        for name in ("amplitude", "f0"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v < 0.0:
                raise DataError(f"{name} must be finite and >= 0")


def _component_signal(comp: SynthComponent, t: np.ndarray, fs: float) -> np.ndarray:
    nyquist = fs / 2.0
    top = comp.f0 if comp.f1 is None else max(comp.f0, comp.f1)
    if top > nyquist:
        raise DataError(f"component frequency {top} Hz exceeds Nyquist {nyquist} Hz")
    if comp.kind == "sine":
        return comp.amplitude * np.sin(2.0 * np.pi * comp.f0 * t)
    if comp.kind == "sweep":
        duration = t[-1] + (t[1] - t[0]) if t.size > 1 else 1.0
        rate = (comp.f1 - comp.f0) / (2.0 * duration)
        return comp.amplitude * np.sin(2.0 * np.pi * (comp.f0 + rate * t) * t)
    # noise: white Gaussian, hard spectral mask to [f0, f1], rescaled to RMS.
    rng = np.random.default_rng(comp.seed)
    white = rng.standard_normal(t.size)
    spectrum = _fft.rfft(white)
    freqs = _fft.rfftfreq(t.size, d=1.0 / fs)
    spectrum[(freqs < comp.f0) | (freqs > comp.f1)] = 0.0
    shaped = _fft.irfft(spectrum, n=t.size)
    scale = np.sqrt(np.mean(np.square(shaped)))
    if scale > 0.0:
        shaped *= comp.amplitude / scale
    return shaped


def synth_trace(
    components: Iterable[SynthComponent | dict],
    duration_s: float,
    sample_rate_hz: float,
    frame_label: str = "seat",
) -> MotionTrace:
    """Deterministic synthetic trace from a list of components.

    Components on the same axis add.  Dicts are accepted and converted, so
    JSON specs can be passed straight through.
    """
    fs = float(sample_rate_hz)
    if not np.isfinite(fs) or fs <= 0.0:
        raise DataError("sample rate must be positive")
    n = int(round(float(duration_s) * fs))
    if n < 2:
        raise DataError("duration too short for the sample rate")
    t = np.arange(n) / fs
    channels = {axis: np.zeros(n) for axis in AXES}
    for comp in components:
        if isinstance(comp, dict):
            comp = SynthComponent(**comp)
        channels[comp.axis] = channels[comp.axis] + _component_signal(comp, t, fs)
    return MotionTrace(sample_rate_hz=fs, channels=channels, frame_label=frame_label)


#: Demo mix used by the CLI when no synthesis spec is given: broadband
#: translational noise, gentler rotational noise, and a vertical tone.
DEMO_COMPONENTS: Sequence[SynthComponent] = (
    SynthComponent(axis="x", kind="noise", amplitude=0.4, f0=0.05, f1=4.0, seed=11),
    SynthComponent(axis="y", kind="noise", amplitude=0.3, f0=0.05, f1=4.0, seed=12),
    SynthComponent(axis="z", kind="noise", amplitude=0.8, f0=0.05, f1=4.0, seed=13),
    SynthComponent(axis="z", kind="sine", amplitude=0.5, f0=1.0),
    SynthComponent(axis="roll", kind="noise", amplitude=0.05, f0=0.05, f1=2.0, seed=14),
    SynthComponent(axis="pitch", kind="noise", amplitude=0.06, f0=0.05, f1=2.0, seed=15),
    SynthComponent(axis="yaw", kind="noise", amplitude=0.04, f0=0.05, f1=2.0, seed=16),
)
