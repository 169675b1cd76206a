"""
Report writers: canonical JSON, flattened CSV and an optional SVG figure
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
PLOT_FLOOR = 1e-18


def _builtin(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def to_json(document: Dict[str, Any]) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline"""
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False, default=_builtin) + "\n"


def flatten_samples(document: Dict[str, Any]) -> pd.DataFrame:
    """One row per sample record"""
    rows = []
    for record in document.get("samples", []):
        row = {
            "index": record["index"],
            "status": record["status"],
            "theta": record["theta"],
            "trace": record["trace"],
            "defect": record["defect"],
            "detS_err": record["detS_err"],
            "lemma2_err": record["lemma2_err"],
        }
        row.update({f"u{i + 1}": value for i, value in enumerate(record["u"])})
        for i, (re, im) in enumerate(record["nu"]):
            row[f"nu{i}_re"] = re
            row[f"nu{i}_im"] = im
        row.update({f"R{j}": value for j, value in enumerate(record["residuals"])})
        rows.append(row)
    return pd.DataFrame(rows)


def flatten_sections(document: Dict[str, Any]) -> pd.DataFrame:
    """One row per verify-all check, with scalar metrics only"""
    rows = []
    for section, result in document.get("sections", {}).items():
        entries = result.get("entries")
        items = entries.items() if entries else [("", result)]
        for name, values in items:
            row = {"section": section, "entry": name}
            row.update({key: value for key, value in values.items()
                        if isinstance(value, (bool, int, float, str)) or value is None})
            rows.append(row)
    return pd.DataFrame(rows)


def render(document: Dict[str, Any], fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(document)
    if fmt == "csv":
        frame = flatten_sections(document) if "sections" in document else flatten_samples(document)
        return frame.to_csv(index=False, lineterminator="\n")
    raise ValueError(f"Unknown report format {fmt!r}")


def write_report(document: Dict[str, Any], path: PathLike, fmt: str = "json") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(document, fmt), encoding="utf-8")
    logger.info(f"Wrote {fmt} report to {path}")
    return path


def tau_curves(document: Dict[str, Any]) -> Dict[str, List[float]]:
    """Per-tau maxima over the scored samples of a run report"""
    scored = [r for r in document.get("samples", []) if r["status"] == "ok"]
    taus = sorted({entry["tau"] for r in scored for entry in r["per_tau"]})
    curves = {"tau": taus, "defect": [], "detS_err": [], "phase_deviation": []}
    for tau in taus:
        values = [entry for r in scored for entry in r["per_tau"] if entry["tau"] == tau]
        defects = [v["defect"] for v in values if v["defect"] is not None]
        errors = [v["detS_err"] for v in values if v["detS_err"] is not None]
        phases = np.array([v["phase"] for v in values if v["phase"] is not None])
        curves["defect"].append(max(defects, default=0.0))
        curves["detS_err"].append(max(errors, default=0.0))
        deviation = float(np.max(np.abs(np.sin(phases - phases[0])))) if phases.size else 0.0
        curves["phase_deviation"].append(deviation)
    return curves


def write_plot(document: Dict[str, Any], path: PathLike) -> Path:
    """Defect and phase deviation against tau, as a byte-stable SVG"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    curves = tau_curves(document)
    residual = (document.get("summary") or {}).get("max_residual") or 0.0

    with plt.rc_context({"svg.hashsalt": "austere-kit", "svg.fonttype": "path"}):
        fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
        top.semilogy(curves["tau"], np.maximum(curves["defect"], PLOT_FLOOR), "o-", label="Lagrangian defect")
        top.semilogy(curves["tau"], np.maximum(curves["detS_err"], PLOT_FLOOR), "s--", label="det S cross-check")
        top.set_ylabel("max over samples")
        top.legend(loc="best")
        bottom.plot(curves["tau"], curves["phase_deviation"], "o-", label="phase deviation")
        bottom.axhline(residual, color="grey", linestyle=":", label=f"max |R_j| = {residual:.3g}")
        bottom.set_xlabel("tau")
        bottom.set_ylabel("|sin(phase - phase_0)|")
        bottom.legend(loc="best")
        fig.suptitle(document.get("target", {}).get("label", ""))
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.info(f"Wrote plot to {path}")
    return path


__all__ = ["to_json", "render", "flatten_samples", "flatten_sections", "write_report", "tau_curves", "write_plot"]
