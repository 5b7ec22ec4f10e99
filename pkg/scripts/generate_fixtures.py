#!/usr/bin/env python3
"""Regenerate the packaged data tables.

Writes the weighting-curve CSVs and the synthetic EXP/AHM/EHM fixture
bundles under src/motioncomfort/data/.  The outputs are committed; rerun
this script only when changing the tables, then commit the results.

Weightings Wk, We and Wf are evaluated from the ISO 2631-1 rational-filter
parameterization (band-limiting 2-pole Butterworth sections, an
acceleration-velocity transition, and for Wk/Wf an upward step) at
one-third-octave nominal center frequencies.  Wfx, Wfy and Wfr use the same
machinery with synthetic low-frequency corner choices; they stand in for
published sickness weightings that cannot be redistributed here and are
meant to be replaced by authoritative tables when available.

The fixture transmissibilities are single-resonance shapes (unit
low-frequency gain, mild 2-4 Hz peak, attenuation above) with band-pass
cross couplings and a small transport delay, wrapped to (-180, 180] degrees
on disk so loading exercises phase unwrapping.  They are plausible in shape
but are not measured data.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "motioncomfort" / "data"

THIRD_OCTAVE_BASE = (1.0, 1.25, 1.6, 2.0, 2.5, 3.15, 4.0, 5.0, 6.3, 8.0)


def third_octave_grid(f_min: float, f_max: float) -> list[float]:
    out = []
    for decade in range(-2, 3):
        for base in THIRD_OCTAVE_BASE:
            f = base * 10.0**decade
            f = float(f"{f:.6g}")
            if f_min <= f <= f_max:
                out.append(f)
    return out


def highpass2(f: float, f1: float) -> float:
    x = f / f1
    return x * x / math.sqrt(1.0 + x**4)


def lowpass2(f: float, f2: float) -> float:
    x = f / f2
    return 1.0 / math.sqrt(1.0 + x**4)


def av_transition(f: float, f3: float | None, f4: float, q4: float) -> float:
    num = math.sqrt(1.0 + (f / f3) ** 2) if f3 is not None else 1.0
    den = math.sqrt((1.0 - (f / f4) ** 2) ** 2 + (f / (q4 * f4)) ** 2)
    return num / den


def upward_step(f: float, f5: float, q5: float, f6: float, q6: float) -> float:
    num = math.sqrt((f5 * f5 - f * f) ** 2 + (f * f5 / q5) ** 2)
    den = math.sqrt((f6 * f6 - f * f) ** 2 + (f * f6 / q6) ** 2)
    return num / den


WEIGHTINGS = {
    # name: (f_min, f_max, f1, f2, f3, f4, q4, step=(f5, q5, f6, q6) or None, note)
    "wk": (0.1, 400.0, 0.4, 100.0, 12.5, 12.5, 0.63, (2.37, 0.91, 3.35, 0.91),
           "vertical ride-comfort weighting, ISO 2631-1 parameterization"),
    "we": (0.1, 400.0, 0.4, 100.0, 1.0, 1.0, 0.63, None,
           "rotational ride-comfort weighting, ISO 2631-1 parameterization"),
    "wf": (0.02, 10.0, 0.08, 0.63, None, 0.25, 0.86, (0.0625, 0.80, 0.1, 0.80),
           "vertical motion-sickness weighting, ISO 2631-1 parameterization"),
    "wfx": (0.02, 10.0, 0.02, 1.0, None, 0.20, 0.86, None,
            "SYNTHETIC stand-in for the published longitudinal sickness weighting; "
            "replace with an authoritative table for production use"),
    "wfy": (0.02, 10.0, 0.015, 1.0, None, 0.125, 0.86, None,
            "SYNTHETIC stand-in for the published lateral sickness weighting; "
            "replace with an authoritative table for production use"),
    "wfr": (0.02, 10.0, 0.03, 1.5, None, 0.30, 0.80, None,
            "SYNTHETIC stand-in for the published rotational sickness weighting; "
            "replace with an authoritative table for production use"),
}


def write_weightings() -> None:
    out_dir = DATA_DIR / "weightings"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, (f_min, f_max, f1, f2, f3, f4, q4, step, note) in WEIGHTINGS.items():
        lines = [f"# {name.capitalize()}: {note}", "freq_hz,magnitude"]
        for f in third_octave_grid(f_min, f_max):
            w = highpass2(f, f1) * lowpass2(f, f2) * av_transition(f, f3, f4, q4)
            if step is not None:
                w *= upward_step(f, *step)
            lines.append(f"{f:g},{w:.6g}")
        (out_dir / f"{name}.csv").write_text("\n".join(lines) + "\n")
        print(f"wrote {out_dir / (name + '.csv')}")


# ---------------------------------------------------------------------------
# Fixture transmissibility bundles
# ---------------------------------------------------------------------------

FRF_FREQ_STEP = 0.4
FRF_FREQ_MAX = 40.0


def resonant_diagonal(f: float, fn: float, zeta: float) -> complex:
    r = f / fn
    return complex(1.0, 2.0 * zeta * r) / complex(1.0 - r * r, 2.0 * zeta * r)


def bandpass_coupling(f: float, fn: float, zeta: float, peak: float) -> complex:
    r = f / fn
    return peak * complex(0.0, 2.0 * zeta * r) / complex(1.0 - r * r, 2.0 * zeta * r)


def wrap_deg(angle_deg: float) -> float:
    wrapped = (angle_deg + 180.0) % 360.0 - 180.0
    return 180.0 if wrapped == -180.0 else wrapped


def write_frf_csv(path: Path, response, delay_s: float, note: str) -> None:
    lines = [
        "# synthetic fixture transmissibility (not measured data)",
        f"# {note}",
        "freq_hz,gain,phase_deg",
    ]
    n = int(round(FRF_FREQ_MAX / FRF_FREQ_STEP))
    for k in range(1, n + 1):
        f = k * FRF_FREQ_STEP
        h = response(f) * complex(math.cos(-2 * math.pi * f * delay_s),
                                  math.sin(-2 * math.pi * f * delay_s))
        gain = abs(h)
        phase = wrap_deg(math.degrees(math.atan2(h.imag, h.real)))
        lines.append(f"{f:.6g},{gain:.6g},{phase:.6g}")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path}")


# Shared sets 2, 3 and 6 (rotational transmission and its couplings), one
# file each, referenced by every model manifest.
COMMON_CHANNELS = {
    # filename: (set, in, out, kind, params, note)
    "set2_pitch_x.csv": (2, "pitch", "x", "coupling", (2.5, 0.50, 0.30),
                         "pitch-to-longitudinal coupling"),
    "set2_pitch_z.csv": (2, "pitch", "z", "coupling", (2.5, 0.50, 0.25),
                         "pitch-to-vertical coupling"),
    "set2_pitch_pitch.csv": (2, "pitch", "pitch", "diagonal", (4.2, 0.45),
                             "pitch transmissibility"),
    "set3_roll_y.csv": (3, "roll", "y", "coupling", (2.5, 0.50, 0.28),
                        "roll-to-lateral coupling"),
    "set3_roll_yaw.csv": (3, "roll", "yaw", "coupling", (2.8, 0.50, 0.22),
                          "roll-to-yaw coupling"),
    "set3_roll_roll.csv": (3, "roll", "roll", "diagonal", (4.0, 0.45),
                           "roll transmissibility"),
    "set6_yaw_yaw.csv": (6, "yaw", "yaw", "diagonal", (5.0, 0.50),
                         "yaw transmissibility"),
}

# Per-model sets 1, 4 and 5.  EXP carries the strongest resonances and
# couplings; AHM and EHM sit close together below it.
MODEL_CHANNELS = {
    "exp": {
        "set1_z_z.csv": (1, "z", "z", "diagonal", (3.5, 0.32), "vertical transmissibility"),
        "set1_z_pitch.csv": (1, "z", "pitch", "coupling", (3.0, 0.50, 0.60),
                             "vertical-to-pitch coupling"),
        "set4_x_x.csv": (4, "x", "x", "diagonal", (3.2, 0.35), "longitudinal transmissibility"),
        "set4_x_pitch.csv": (4, "x", "pitch", "coupling", (2.8, 0.50, 0.85),
                             "longitudinal-to-pitch coupling"),
        "set5_y_y.csv": (5, "y", "y", "diagonal", (2.9, 0.40), "lateral transmissibility"),
        "set5_y_yaw.csv": (5, "y", "yaw", "coupling", (3.0, 0.55, 0.30),
                           "lateral-to-yaw coupling"),
        "set5_y_roll.csv": (5, "y", "roll", "coupling", (2.6, 0.55, 0.38),
                            "lateral-to-roll coupling"),
    },
    "ahm": {
        "set1_z_z.csv": (1, "z", "z", "diagonal", (3.2, 0.38), "vertical transmissibility"),
        "set1_z_pitch.csv": (1, "z", "pitch", "coupling", (3.0, 0.50, 0.48),
                             "vertical-to-pitch coupling"),
        "set4_x_x.csv": (4, "x", "x", "diagonal", (3.0, 0.40), "longitudinal transmissibility"),
        "set4_x_pitch.csv": (4, "x", "pitch", "coupling", (2.8, 0.50, 0.70),
                             "longitudinal-to-pitch coupling"),
        "set5_y_y.csv": (5, "y", "y", "diagonal", (2.8, 0.44), "lateral transmissibility"),
        "set5_y_yaw.csv": (5, "y", "yaw", "coupling", (3.0, 0.55, 0.26),
                           "lateral-to-yaw coupling"),
        "set5_y_roll.csv": (5, "y", "roll", "coupling", (2.6, 0.55, 0.33),
                            "lateral-to-roll coupling"),
    },
    "ehm": {
        "set1_z_z.csv": (1, "z", "z", "diagonal", (3.1, 0.40), "vertical transmissibility"),
        "set1_z_pitch.csv": (1, "z", "pitch", "coupling", (3.0, 0.50, 0.45),
                             "vertical-to-pitch coupling"),
        "set4_x_x.csv": (4, "x", "x", "diagonal", (2.95, 0.41), "longitudinal transmissibility"),
        "set4_x_pitch.csv": (4, "x", "pitch", "coupling", (2.8, 0.50, 0.66),
                             "longitudinal-to-pitch coupling"),
        "set5_y_y.csv": (5, "y", "y", "diagonal", (2.75, 0.45), "lateral transmissibility"),
        "set5_y_yaw.csv": (5, "y", "yaw", "coupling", (3.0, 0.55, 0.25),
                           "lateral-to-yaw coupling"),
        "set5_y_roll.csv": (5, "y", "roll", "coupling", (2.6, 0.55, 0.32),
                            "lateral-to-roll coupling"),
    },
}

MODEL_DELAYS = {"exp": 0.025, "ahm": 0.028, "ehm": 0.028}
COMMON_DELAY = 0.025

UNIT = {"x": "m/s2", "y": "m/s2", "z": "m/s2", "roll": "rad/s2", "pitch": "rad/s2",
        "yaw": "rad/s2"}


def response_for(kind: str, params) -> callable:
    if kind == "diagonal":
        fn, zeta = params
        return lambda f: resonant_diagonal(f, fn, zeta)
    fn, zeta, peak = params
    return lambda f: bandpass_coupling(f, fn, zeta, peak)


def write_bundles() -> None:
    bundles_dir = DATA_DIR / "bundles"
    common_dir = bundles_dir / "common"
    common_dir.mkdir(parents=True, exist_ok=True)
    for fname, (set_id, ax_in, ax_out, kind, params, note) in COMMON_CHANNELS.items():
        write_frf_csv(common_dir / fname, response_for(kind, params), COMMON_DELAY, note)

    for model, channels in MODEL_CHANNELS.items():
        model_dir = bundles_dir / model
        model_dir.mkdir(parents=True, exist_ok=True)
        manifest = {"model_id": model.upper(), "channels": []}
        for fname, (set_id, ax_in, ax_out, kind, params, note) in channels.items():
            write_frf_csv(model_dir / fname, response_for(kind, params),
                          MODEL_DELAYS[model], note)
            manifest["channels"].append({
                "set": set_id, "in": ax_in, "out": ax_out, "file": fname,
                "in_unit": UNIT[ax_in], "out_unit": UNIT[ax_out],
            })
        for fname, (set_id, ax_in, ax_out, kind, params, note) in COMMON_CHANNELS.items():
            manifest["channels"].append({
                "set": set_id, "in": ax_in, "out": ax_out, "file": f"../common/{fname}",
                "in_unit": UNIT[ax_in], "out_unit": UNIT[ax_out],
            })
        manifest["channels"].sort(key=lambda c: (c["set"], c["in"], c["out"]))
        path = model_dir / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    write_weightings()
    write_bundles()
