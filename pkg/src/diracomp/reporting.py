"""Deterministic serialization of results to JSON and CSV.

Every float crossing into an artifact is first rounded to 9 significant
digits (round9), so identical inputs produce byte-identical files on any
platform.  JSON preserves insertion order; CSV uses LF endings and a
header row.
"""

from __future__ import annotations

import json
import os
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = [
    "round9", "fmt9", "jsonable", "write_json", "write_csv",
    "write_wave_csv", "write_curve_csv", "write_potentials_csv",
]


def round9(x: float) -> float:
    """Round to 9 significant digits through the shortest decimal form."""
    if x != x or x in (float("inf"), float("-inf")):
        return x
    return float(f"{x:.9g}")


def fmt9(x: Any) -> str:
    """Canonical cell text: 9 significant digits for reals, str otherwise."""
    if isinstance(x, bool) or x is None:
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.9g}"
    return str(x)


def jsonable(obj: Any) -> Any:
    """Recursively convert to JSON-ready types with round9 floats."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round9(float(obj))
    return obj


def write_json(path: str, obj: Any) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    text = json.dumps(jsonable(obj), indent=2, allow_nan=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
        fh.write("\n")


def write_csv(path: str, header: Sequence[str],
              rows: Iterable[Sequence[Any]]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header))
        fh.write("\n")
        for row in rows:
            fh.write(",".join(fmt9(c) for c in row))
            fh.write("\n")


def _decimate(n: int, cap: int) -> np.ndarray:
    if n <= cap:
        return np.arange(n)
    idx = np.unique(np.linspace(0, n - 1, cap).round().astype(int))
    return idx


def write_wave_csv(path: str, sol, max_rows: int = 4000) -> None:
    """Radial profile (r, psi1, psi2), decimated evenly past max_rows."""
    idx = _decimate(sol.r.size, max_rows)
    rows = zip(sol.r[idx], sol.psi1[idx], sol.psi2[idx])
    write_csv(path, ("r", "psi1", "psi2"), rows)


def write_curve_csv(path: str, curve, max_rows: int = 4000) -> None:
    """Cumulative-integral curve as (r, value)."""
    idx = _decimate(curve.grid.size, max_rows)
    rows = zip(curve.grid[idx], curve.values[idx])
    write_csv(path, ("r", "value"), rows)


def write_potentials_csv(path: str, case, r: np.ndarray,
                         extra: dict[str, np.ndarray] | None = None) -> None:
    """Plot-ready (r, V_a, V_b, dV [, named integrands...]) table."""
    from .model import evaluate

    va = evaluate(case.potential_a, r)
    vb = evaluate(case.potential_b, r)
    cols = {"r": r, "V_a": va, "V_b": vb, "dV": vb - va}
    if extra:
        cols.update(extra)
    header = tuple(cols)
    rows = zip(*cols.values())
    write_csv(path, header, rows)
