"""Report serialization (JSON, MSI CSV, SVG) and multi-model comparison."""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError
from .frf import AXES, builtin_bundle
from .metrics import ComfortReport, full_assessment
from .svc import SvcParams
from .traceio import atomic_write_text
from .transmission import MotionTrace
from .weighting import MetricRegime, WeightingCurve

REPORT_SCHEMA = 1


def report_to_dict(report: ComfortReport, msi_filename: str | None) -> dict:
    """The JSON document for a report.  Floats are kept at full precision."""
    doc = {
        "schema": REPORT_SCHEMA,
        "model_id": report.model_id,
        "trace": {
            "duration_s": report.duration_s,
            "sample_rate_hz": report.sample_rate_hz,
        },
        "rc": {"per_axis": {a: report.rc.per_axis[a] for a in AXES}, "total": report.rc.total},
        "ms": {"per_axis": {a: report.ms.per_axis[a] for a in AXES}, "total": report.ms.total},
        "msi": None,
        "config_echo": _jsonable(report.config_echo),
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if report.msi is not None:
        doc["msi"] = {"final": report.msi.final, "series_path": msi_filename}
    return doc


def _jsonable(value):
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def render_report_svg(report: ComfortReport, width: int = 900, height: int = 520) -> str:
    """A static overview figure: MSI curve on top, per-axis bars below.

    Presentation only; the JSON report carries the authoritative numbers.
    The MSI series is drawn as a single polyline with one point per sample.
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="20" y="24" font-family="sans-serif" font-size="16">'
        f"model {report.model_id}: RC total {report.rc.total:.6g}, "
        f"MS total {report.ms.total:.6g}</text>",
    ]
    top = {"x0": 60.0, "y0": 40.0, "w": width - 90.0, "h": 200.0}
    if report.msi is not None:
        t = report.msi.time_s
        m = report.msi.msi_percent
        t_span = max(float(t[-1] - t[0]), 1e-12)
        m_max = max(float(np.max(m)), 1.0)
        xs = top["x0"] + (t - t[0]) / t_span * top["w"]
        ys = top["y0"] + top["h"] - (m / m_max) * top["h"]
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" points="{points}"/>'
        )
        parts.append(
            f'<text x="{top["x0"]}" y="{top["y0"] + top["h"] + 18:.0f}" '
            f'font-family="sans-serif" font-size="12">'
            f"sickness incidence, final {report.msi.final:.4g}% "
            f"(peak axis scale {m_max:.4g}%)</text>"
        )
    else:
        parts.append(
            f'<text x="{top["x0"]}" y="{top["y0"] + 20:.0f}" font-family="sans-serif" '
            f'font-size="12">no incidence series</text>'
        )

    bars_y0 = 300.0
    bars_h = 160.0
    group_w = (width - 90.0) / (2 * len(AXES))
    values = [("RC", report.rc, "#d08a26"), ("MS", report.ms, "#4a9a57")]
    peak = max(
        max(res.per_axis[a] for a in AXES) for _, res, _ in values
    )
    peak = max(peak, 1e-12)
    x = 60.0
    for label, res, color in values:
        for axis in AXES:
            v = res.per_axis[axis]
            h = v / peak * bars_h
            parts.append(
                f'<rect x="{x + 3:.1f}" y="{bars_y0 + bars_h - h:.1f}" '
                f'width="{group_w - 6:.1f}" height="{h:.1f}" fill="{color}"/>'
            )
            parts.append(
                f'<text x="{x + group_w / 2:.1f}" y="{bars_y0 + bars_h + 14:.0f}" '
                f'font-family="sans-serif" font-size="10" text-anchor="middle">'
                f"{label}.{axis}</text>"
            )
            x += group_w
    parts.append("</svg>")
    return "\n".join(parts)


def emit_report(
    report: ComfortReport,
    out_dir,
    *,
    basename: str = "report",
    msi_basename: str = "msi",
) -> dict[str, Path]:
    """Write report JSON, the MSI CSV (when present) and the SVG figure.

    All writes are atomic.  Returns the paths that were written.
    """
    out_dir = Path(out_dir)
    written: dict[str, Path] = {}

    msi_name = f"{msi_basename}.csv" if report.msi is not None else None
    if report.msi is not None:
        lines = ["time_s,msi_percent"]
        lines.extend(
            f"{t:.17g},{m:.17g}"
            for t, m in zip(report.msi.time_s, report.msi.msi_percent)
        )
        msi_path = out_dir / msi_name
        atomic_write_text(msi_path, "\n".join(lines) + "\n")
        written["msi_csv"] = msi_path

    doc = report_to_dict(report, msi_name)
    json_path = out_dir / f"{basename}.json"
    atomic_write_text(json_path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    written["report_json"] = json_path

    svg_path = out_dir / f"{basename}.svg"
    atomic_write_text(svg_path, render_report_svg(report) + "\n")
    written["report_svg"] = svg_path
    return written


@dataclass(frozen=True)
class ComparisonRow:
    model_id: str
    rc_per_axis: Mapping[str, float]
    rc_total: float
    ms_per_axis: Mapping[str, float]
    ms_total: float
    msi_final: float | None
    rc_total_vs_nhm: float
    ms_total_vs_nhm: float


@dataclass(frozen=True)
class ComparisonTable:
    """Per-model assessment rows plus totals relative to the NHM baseline."""

    rows: Sequence[ComparisonRow] = field(default_factory=tuple)

    def to_csv(self) -> str:
        cols = (
            ["model"]
            + [f"rc_{a}" for a in AXES]
            + ["rc_total"]
            + [f"ms_{a}" for a in AXES]
            + ["ms_total", "msi_final", "rc_total_vs_nhm", "ms_total_vs_nhm"]
        )
        lines = [",".join(cols)]
        for row in self.rows:
            cells = [row.model_id]
            cells += [f"{row.rc_per_axis[a]:.17g}" for a in AXES]
            cells.append(f"{row.rc_total:.17g}")
            cells += [f"{row.ms_per_axis[a]:.17g}" for a in AXES]
            cells.append(f"{row.ms_total:.17g}")
            cells.append("" if row.msi_final is None else f"{row.msi_final:.17g}")
            cells.append(f"{row.rc_total_vs_nhm:.17g}")
            cells.append(f"{row.ms_total_vs_nhm:.17g}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        header = (
            f"{'model':<6}"
            + "".join(f"{'rc_' + a:>10}" for a in AXES)
            + f"{'rc_tot':>10}"
            + "".join(f"{'ms_' + a:>10}" for a in AXES)
            + f"{'ms_tot':>10}{'msi%':>10}{'rc/nhm':>9}{'ms/nhm':>9}"
        )
        lines = [header]
        for row in self.rows:
            line = f"{row.model_id:<6}"
            line += "".join(f"{row.rc_per_axis[a]:>10.4f}" for a in AXES)
            line += f"{row.rc_total:>10.4f}"
            line += "".join(f"{row.ms_per_axis[a]:>10.4f}" for a in AXES)
            line += f"{row.ms_total:>10.4f}"
            line += f"{row.msi_final:>10.4f}" if row.msi_final is not None else f"{'-':>10}"
            line += f"{row.rc_total_vs_nhm:>9.4f}{row.ms_total_vs_nhm:>9.4f}"
            lines.append(line)
        return "\n".join(lines)


def compare(
    trace: MotionTrace,
    model_ids: Sequence[str],
    *,
    rc: MetricRegime | None = None,
    ms: MetricRegime | None = None,
    svc_params: SvcParams | None = None,
    registry: Mapping[str, WeightingCurve] | None = None,
    include_svc: bool = True,
    resolve_bundle=builtin_bundle,
) -> ComparisonTable:
    """Assess one trace under several model configurations.

    Ratios are taken against the NHM baseline, which is computed even when
    NHM is not among the requested models.  Requesting a model twice yields
    two identical rows.
    """
    model_ids = [str(m).upper() for m in model_ids]
    if len(model_ids) < 2:
        raise ConfigError("compare needs at least 2 models")

    reports: dict[str, ComfortReport] = {}

    def get_report(model_id: str) -> ComfortReport:
        if model_id not in reports:
            bundle = resolve_bundle(model_id)
            reports[model_id] = full_assessment(
                trace,
                bundle,
                rc=rc,
                ms=ms,
                svc_params=svc_params,
                registry=registry,
                include_svc=include_svc,
            )
        return reports[model_id]

    baseline = get_report("NHM")
    rows = []
    for model_id in model_ids:
        rep = get_report(model_id)
        rows.append(
            ComparisonRow(
                model_id=model_id,
                rc_per_axis=dict(rep.rc.per_axis),
                rc_total=rep.rc.total,
                ms_per_axis=dict(rep.ms.per_axis),
                ms_total=rep.ms.total,
                msi_final=None if rep.msi is None else rep.msi.final,
                rc_total_vs_nhm=rep.rc.total / baseline.rc.total
                if baseline.rc.total > 0.0
                else float("nan"),
                ms_total_vs_nhm=rep.ms.total / baseline.ms.total
                if baseline.ms.total > 0.0
                else float("nan"),
            )
        )
    return ComparisonTable(rows=tuple(rows))
