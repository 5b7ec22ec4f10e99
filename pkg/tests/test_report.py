from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from motioncomfort import (
    AXES,
    builtin_bundle,
    compare,
    emit_report,
    full_assessment,
    identity_bundle,
)
from motioncomfort.errors import ConfigError
from conftest import random_trace

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "model_id", "trace", "rc", "ms", "msi", "config_echo"],
    "properties": {
        "schema": {"const": 1},
        "model_id": {"enum": ["EXP", "AHM", "EHM", "NHM"]},
        "trace": {
            "type": "object",
            "required": ["duration_s", "sample_rate_hz"],
            "properties": {
                "duration_s": {"type": "number"},
                "sample_rate_hz": {"type": "number"},
            },
        },
        "rc": {"$ref": "#/$defs/regime"},
        "ms": {"$ref": "#/$defs/regime"},
        "msi": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["final", "series_path"],
                    "properties": {
                        "final": {"type": "number"},
                        "series_path": {"type": "string"},
                    },
                },
            ]
        },
        "config_echo": {"type": "object"},
        "created_utc": {"type": "string"},
    },
    "$defs": {
        "regime": {
            "type": "object",
            "required": ["per_axis", "total"],
            "properties": {
                "per_axis": {
                    "type": "object",
                    "required": list(AXES),
                    "additionalProperties": {"type": "number"},
                },
                "total": {"type": "number"},
            },
        }
    },
}


@pytest.fixture(scope="module")
def report():
    return full_assessment(random_trace(40, n=600), builtin_bundle("EXP"))


def test_report_json_validates_against_schema(tmp_path, report):
    written = emit_report(report, tmp_path)
    doc = json.loads(written["report_json"].read_text())
    jsonschema.validate(doc, REPORT_SCHEMA)


def test_json_totals_bit_exact(tmp_path, report):
    written = emit_report(report, tmp_path)
    doc = json.loads(written["report_json"].read_text())
    assert doc["rc"]["total"] == report.rc.total
    assert doc["ms"]["total"] == report.ms.total
    assert doc["msi"]["final"] == report.msi.final
    for axis in AXES:
        assert doc["rc"]["per_axis"][axis] == report.rc.per_axis[axis]


def test_svg_has_one_polyline_with_n_points(tmp_path, report):
    written = emit_report(report, tmp_path)
    root = ET.fromstring(written["report_svg"].read_text())
    ns = {"svg": "http://www.w3.org/2000/svg"}
    polylines = root.findall(".//svg:polyline", ns)
    assert len(polylines) == 1
    points = polylines[0].attrib["points"].split()
    assert len(points) == report.msi.time_s.size


def test_msi_csv_written(tmp_path, report):
    written = emit_report(report, tmp_path)
    lines = written["msi_csv"].read_text().strip().splitlines()
    assert lines[0] == "time_s,msi_percent"
    assert len(lines) == 1 + report.msi.time_s.size


def test_report_deterministic_modulo_timestamp(tmp_path, report):
    a = emit_report(report, tmp_path / "a")["report_json"].read_text()
    b = emit_report(report, tmp_path / "b")["report_json"].read_text()

    def strip(text):
        return "\n".join(ln for ln in text.splitlines() if "created_utc" not in ln)

    assert strip(a) == strip(b)


def test_compare_duplicate_nhm_rows_identical():
    trace = random_trace(41, n=500)
    table = compare(trace, ["NHM", "NHM"])
    assert len(table.rows) == 2
    r0, r1 = table.rows
    assert r0.rc_total == r1.rc_total
    assert r0.rc_total_vs_nhm == 1.0
    assert r1.ms_total_vs_nhm == 1.0


def test_compare_coupled_bundle_beats_nhm(broadband_seat):
    table = compare(broadband_seat, ["EXP", "NHM"])
    exp_row = next(r for r in table.rows if r.model_id == "EXP")
    nhm_row = next(r for r in table.rows if r.model_id == "NHM")
    assert exp_row.rc_total_vs_nhm > 1.0
    assert nhm_row.rc_total_vs_nhm == 1.0
    assert exp_row.msi_final > nhm_row.msi_final


def test_compare_table_schema():
    trace = random_trace(42, n=400)
    table = compare(trace, ["NHM", "NHM"], include_svc=False)
    header = table.to_csv().splitlines()[0].split(",")
    for axis in AXES:
        assert f"rc_{axis}" in header
        assert f"ms_{axis}" in header
    for col in ("model", "rc_total", "ms_total", "msi_final",
                "rc_total_vs_nhm", "ms_total_vs_nhm"):
        assert col in header
    assert len(table.to_text().splitlines()) == 3


def test_compare_needs_two_models():
    with pytest.raises(ConfigError, match="2 models"):
        compare(random_trace(43, n=300), ["NHM"])


def test_emit_without_svc(tmp_path):
    report = full_assessment(random_trace(44, n=300), identity_bundle(), include_svc=False)
    written = emit_report(report, tmp_path)
    assert "msi_csv" not in written
    doc = json.loads(written["report_json"].read_text())
    assert doc["msi"] is None
    jsonschema.validate(doc, REPORT_SCHEMA)
