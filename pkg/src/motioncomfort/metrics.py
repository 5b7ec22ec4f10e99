"""Weighted-RMS comfort values per axis and their quadratic combination.

Per axis: weight the acceleration, take the RMS.  Per regime: combine the
six axis values as sqrt(sum k_i^2 v_i^2).  `full_assessment` runs the whole
pipeline (transmission, both regimes, sickness-incidence accumulation) and
assembles a report that echoes enough configuration to reproduce it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import spectral
from .errors import ConfigError, DataError
from .frf import AXES, CHANNEL_IDS, FrfBundle, evaluate_grid
from .svc import MsiSeries, SvcParams, run_svc
from .transmission import MotionTrace, transmit, _warn_if_undersampled
from .weighting import (
    MetricRegime,
    WeightingCurve,
    apply_weighting,
    builtin_weightings,
    motion_sickness_regime,
    ride_comfort_regime,
)


def rms(signal, sample_rate_hz: float | None = None) -> float:
    """Root mean square, sqrt(mean(s^2)).

    The discrete mean of squares already realizes the time-average of the
    squared signal, so the sample rate does not enter; the argument is
    accepted for interface symmetry with the weighting operations.
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.size == 0:
        raise DataError("cannot take the RMS of an empty signal")
    if not np.all(np.isfinite(x)):
        raise DataError("signal contains non-finite samples")
    return float(np.sqrt(np.mean(np.square(x))))


def combine(per_axis: Mapping[str, float], k_factors: Mapping[str, float]) -> float:
    """Overall metric sqrt(sum_i k_i^2 v_i^2) over the six axes."""
    acc = 0.0
    for axis in AXES:
        try:
            v = float(per_axis[axis])
            k = float(k_factors[axis])
        except KeyError as exc:
            raise DataError(f"missing axis {exc} in per-axis values or k factors") from exc
        if v < 0.0 or k < 0.0:
            raise DataError(f"negative value for axis {axis}: v={v}, k={k}")
        acc += (k * v) ** 2
    return float(np.sqrt(acc))


@dataclass(frozen=True)
class RegimeResult:
    """Per-axis weighted RMS values and their combined total for one regime."""

    kind: str
    per_axis: Mapping[str, float]
    total: float
    weighting_names: Mapping[str, str]
    k_factors: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "per_axis", MappingProxyType(dict(self.per_axis)))
        object.__setattr__(self, "weighting_names", MappingProxyType(dict(self.weighting_names)))
        object.__setattr__(self, "k_factors", MappingProxyType(dict(self.k_factors)))


def _resolve_curves(regime: MetricRegime, registry) -> dict[str, WeightingCurve]:
    curves = registry if registry is not None else builtin_weightings()
    resolved = {}
    for axis in AXES:
        name = regime.axis_weighting[axis]
        try:
            resolved[axis] = curves[name]
        except KeyError as exc:
            raise ConfigError(f"unknown weighting curve {name!r} for axis {axis}") from exc
    return resolved


def assess(
    trace: MotionTrace,
    regime: MetricRegime,
    registry: Mapping[str, WeightingCurve] | None = None,
) -> RegimeResult:
    """Weighted RMS per axis plus combined total for one regime."""
    curves = _resolve_curves(regime, registry)
    per_axis = {}
    for axis in AXES:
        weighted = apply_weighting(trace.channels[axis], curves[axis], trace.sample_rate_hz)
        per_axis[axis] = rms(weighted)
    return RegimeResult(
        kind=regime.kind,
        per_axis=per_axis,
        total=combine(per_axis, regime.k_factors),
        weighting_names=dict(regime.axis_weighting),
        k_factors=dict(regime.k_factors),
    )


@dataclass(frozen=True)
class ComfortReport:
    """Everything one assessment produced, with its configuration echo."""

    model_id: str
    rc: RegimeResult
    ms: RegimeResult
    msi: MsiSeries | None
    duration_s: float
    sample_rate_hz: float
    config_echo: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "config_echo", MappingProxyType(dict(self.config_echo)))


def _config_echo(rc: MetricRegime, ms: MetricRegime, svc_params: SvcParams | None) -> dict:
    echo: dict[str, object] = {
        "rc": {"weighting": dict(rc.axis_weighting), "k_factors": dict(rc.k_factors)},
        "ms": {"weighting": dict(ms.axis_weighting), "k_factors": dict(ms.k_factors)},
    }
    if svc_params is not None:
        echo["svc"] = svc_params.as_dict()
    return echo


def full_assessment(
    seat: MotionTrace,
    bundle: FrfBundle,
    *,
    rc: MetricRegime | None = None,
    ms: MetricRegime | None = None,
    svc_params: SvcParams | None = None,
    registry: Mapping[str, WeightingCurve] | None = None,
    include_svc: bool = True,
    timings: dict | None = None,
) -> ComfortReport:
    """Transmit seat motion to the head, then assess both regimes plus MSI.

    This is the batch path: each seat channel is transformed once, channel
    responses are accumulated per head axis in the spectral domain, and the
    weighted RMS values are read off the head spectra (Parseval), which is
    arithmetically equivalent to weighting in the time domain followed by a
    time-domain RMS.  Results match `transmit` + `assess` to fp round-off.
    Pass a dict as `timings` to collect per-stage wall times in seconds.
    """
    rc = rc if rc is not None else ride_comfort_regime()
    ms = ms if ms is not None else motion_sickness_regime()
    svc_params = svc_params if svc_params is not None else SvcParams()
    rc_curves = _resolve_curves(rc, registry)
    ms_curves = _resolve_curves(ms, registry)

    fs = seat.sample_rate_hz
    n = seat.n_samples
    _warn_if_undersampled(fs, bundle.max_freq_hz, f"bundle {bundle.model_id}")

    t0 = time.perf_counter()
    freqs = spectral.bin_frequencies(n, fs)
    head_spectra = {axis: None for axis in AXES}
    input_spectra: dict[str, np.ndarray] = {}
    for cid in CHANNEL_IDS:
        if cid.input_axis not in input_spectra:
            input_spectra[cid.input_axis] = spectral.rfft(
                spectral.check_signal(seat.channels[cid.input_axis])
            )
        response = spectral.force_real_endpoints(
            evaluate_grid(bundle.channels[cid], freqs), n
        )
        part = input_spectra[cid.input_axis] * response
        prev = head_spectra[cid.output_axis]
        head_spectra[cid.output_axis] = part if prev is None else prev + part
    head_channels = {axis: spectral.irfft(head_spectra[axis], n=n) for axis in AXES}
    head = MotionTrace(sample_rate_hz=fs, channels=head_channels, frame_label="head")
    t1 = time.perf_counter()

    head_power = {axis: np.abs(head_spectra[axis]) ** 2 for axis in AXES}

    def spectral_assess(regime: MetricRegime, curves) -> RegimeResult:
        per_axis = {}
        for axis in AXES:
            w = curves[axis].at(freqs)
            per_axis[axis] = float(
                np.sqrt(spectral.spectrum_mean_square(w * w * head_power[axis], n))
            )
        return RegimeResult(
            kind=regime.kind,
            per_axis=per_axis,
            total=combine(per_axis, regime.k_factors),
            weighting_names=dict(regime.axis_weighting),
            k_factors=dict(regime.k_factors),
        )

    rc_result = spectral_assess(rc, rc_curves)
    t2 = time.perf_counter()
    ms_result = spectral_assess(ms, ms_curves)
    t3 = time.perf_counter()

    msi = run_svc(head, svc_params) if include_svc else None
    t4 = time.perf_counter()

    if timings is not None:
        timings["transmit_s"] = t1 - t0
        timings["rc_s"] = t2 - t1
        timings["ms_s"] = t3 - t2
        timings["svc_s"] = t4 - t3
        timings["total_s"] = t4 - t0

    return ComfortReport(
        model_id=bundle.model_id,
        rc=rc_result,
        ms=ms_result,
        msi=msi,
        duration_s=seat.duration_s,
        sample_rate_hz=fs,
        config_echo=_config_echo(rc, ms, svc_params if include_svc else None),
    )
