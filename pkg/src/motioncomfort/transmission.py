"""Seat-to-head transmission of 6-DOF acceleration traces.

Each head channel is the sum of the bundle channels feeding it:

    x_h     = (x->x)         + (pitch->x)
    y_h     = (y->y)         + (roll->y)
    z_h     = (z->z)         + (pitch->z)
    roll_h  = (roll->roll)   + (y->roll)
    pitch_h = (pitch->pitch) + (z->pitch) + (x->pitch)
    yaw_h   = (yaw->yaw)     + (y->yaw)   + (roll->yaw)

with every term computed by frequency-domain multiplication of the seat
channel spectrum with the tabulated response.  The whole pipeline is linear
and deterministic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import spectral
from .errors import DataError
from .frf import AXES, CHANNEL_IDS, FrfBundle, FrfChannelId, FrfCurve, evaluate_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MotionTrace:
    """Uniformly sampled 6-DOF acceleration time series.

    Channels x, y, z are translational accelerations in m/s^2; roll, pitch,
    yaw are rotational accelerations in rad/s^2.  All six arrays must be
    present, equal length (>= 2) and finite.
    """

    sample_rate_hz: float
    channels: Mapping[str, np.ndarray] = field(repr=False)
    frame_label: str = "seat"

    def __post_init__(self):
        fs = float(self.sample_rate_hz)
        if not np.isfinite(fs) or fs <= 0.0:
            raise DataError(f"sample rate must be positive, got {fs!r}")
        incoming = dict(self.channels)
        missing = [a for a in AXES if a not in incoming]
        if missing:
            raise DataError(f"trace is missing channels {missing}")
        extra = [a for a in incoming if a not in AXES]
        if extra:
            raise DataError(f"trace has unknown channels {extra}")
        arrays = {}
        n = None
        for axis in AXES:
            arr = np.asarray(incoming[axis], dtype=np.float64)
            if arr.ndim != 1:
                raise DataError(f"channel {axis} must be 1-D")
            if n is None:
                n = arr.size
            elif arr.size != n:
                raise DataError("trace channels have inconsistent lengths")
            if not np.all(np.isfinite(arr)):
                raise DataError(f"channel {axis} contains non-finite samples")
            arr = arr.copy()
            arr.flags.writeable = False
            arrays[axis] = arr
        if n is None or n < 2:
            raise DataError("trace must have at least 2 samples")
        object.__setattr__(self, "sample_rate_hz", fs)
        object.__setattr__(self, "channels", MappingProxyType(arrays))
        object.__setattr__(self, "frame_label", str(self.frame_label))

    @property
    def n_samples(self) -> int:
        return int(self.channels["x"].size)

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate_hz

    @property
    def time_s(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.sample_rate_hz

    @classmethod
    def from_channels(cls, sample_rate_hz, frame_label="seat", **channels) -> "MotionTrace":
        """Build a trace from keyword channels, zero-filling absent axes."""
        given = {k: np.asarray(v, dtype=np.float64) for k, v in channels.items()}
        if not given:
            raise DataError("at least one channel is required")
        n = len(next(iter(given.values())))
        full = {axis: given.get(axis, np.zeros(n)) for axis in AXES}
        return cls(sample_rate_hz=sample_rate_hz, channels=full, frame_label=frame_label)


@dataclass(frozen=True)
class ContributionBreakdown:
    """Per head axis, the time-domain contribution of each feeding channel."""

    contributions: Mapping[str, Mapping[FrfChannelId, np.ndarray]]

    def total(self, axis: str) -> np.ndarray:
        parts = list(self.contributions[axis].values())
        out = np.zeros_like(parts[0])
        for part in parts:
            out = out + part
        return out


def _warn_if_undersampled(sample_rate_hz: float, max_tabulated_hz: float, what: str) -> None:
    # Guard: the trace should resolve the full tabulated band, fs > 2*f_max.
    if max_tabulated_hz > 0.0 and sample_rate_hz <= 2.0 * max_tabulated_hz:
        logger.warning(
            "sample rate %g Hz does not exceed twice the tabulated band edge %g Hz of %s; "
            "the response above Nyquist cannot be represented",
            sample_rate_hz,
            max_tabulated_hz,
            what,
        )


def fft_apply(signal, curve: FrfCurve, sample_rate_hz: float) -> np.ndarray:
    """Apply one tabulated response to one signal, returning a real array.

    output = irfft(evaluate(curve, f_k) * rfft(signal)), f_k = k*fs/n.
    """
    _warn_if_undersampled(float(sample_rate_hz), curve.max_freq_hz, "curve")
    return spectral.apply_response(
        signal, sample_rate_hz, lambda freqs: evaluate_grid(curve, freqs)
    )


def transmit(seat: MotionTrace, bundle: FrfBundle) -> tuple[MotionTrace, ContributionBreakdown]:
    """Predict head motion from seat motion through one bundle.

    Returns the head trace and the per-channel breakdown; summing each
    axis's contributions reproduces the head channel exactly (same arrays,
    same additions).
    """
    fs = seat.sample_rate_hz
    n = seat.n_samples
    _warn_if_undersampled(fs, bundle.max_freq_hz, f"bundle {bundle.model_id}")
    freqs = spectral.bin_frequencies(n, fs)
    input_spectra = {
        axis: spectral.rfft(spectral.check_signal(seat.channels[axis])) for axis in AXES
    }

    contributions: dict[str, dict[FrfChannelId, np.ndarray]] = {axis: {} for axis in AXES}
    for cid in CHANNEL_IDS:
        response = evaluate_grid(bundle.channels[cid], freqs)
        response = spectral.force_real_endpoints(response, n)
        part = spectral.irfft(input_spectra[cid.input_axis] * response, n=n)
        contributions[cid.output_axis][cid] = part

    head_channels = {}
    for axis in AXES:
        total = np.zeros(n)
        for part in contributions[axis].values():
            total = total + part
        head_channels[axis] = total

    head = MotionTrace(sample_rate_hz=fs, channels=head_channels, frame_label="head")
    frozen = MappingProxyType(
        {axis: MappingProxyType(dict(contributions[axis])) for axis in AXES}
    )
    return head, ContributionBreakdown(contributions=frozen)
