"""JSON and text rendering of analysis reports."""

from __future__ import annotations

import json
from importlib import resources

from ..analysis import AnalysisReport

SCHEMA_VERSION = 1


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report_schema.json").read_text(encoding="utf-8"))


def report_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def validate_report(data: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``data`` does not match the published schema."""
    import jsonschema

    jsonschema.validate(data, load_schema())


def report_text(report: AnalysisReport) -> str:
    d = report.to_dict()
    out = [f"{d['kind']} {d['structure']}"]
    out.append("  " + ", ".join(f"{k}={v}" for k, v in d["counts"].items()))
    summary = d.get("summary") or {}
    if "orbits" in summary:
        out.append("  orbits: " + " ".join("{" + ",".join(o) + "}" for o in summary["orbits"]))
    for iso in summary.get("isotropy", []):
        out.append(f"  isotropy at {iso['unit']}: {iso['group']}")
    for c in d["clauses"]:
        out.append(f"  [{c['status']}] {c['id']}: {c['question']}")
        for w in c["witnesses"]:
            out.append(f"      witness: {json.dumps(w, sort_keys=True)}")
        if c["caveat"]:
            out.append(f"      note: {c['caveat']}")
        for k, v in sorted(c.get("diagnostics", {}).items()):
            out.append(f"      {k}: {json.dumps(v)}")
    for k, v in d["verdicts"].items():
        out.append(f"  verdict {k}: {v['value']} (finite input)")
    for cav in d["caveats"]:
        out.append(f"  caveat: {cav}")
    return "\n".join(out) + "\n"
