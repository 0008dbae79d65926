"""Curve data behind the two figures: bounds vs exact values, and the W entropy sweep."""
from __future__ import annotations

import csv
import io

import numpy as np

from .discord import w_symmetric_entropy
from .gme import superposition_upper_bound
from .numerics import binary_entropy
from .qstate import DomainError

FIG1_COLUMNS = ("s", "BG", "G", "BE", "E")
FIG2_COLUMNS = ("p", "S_bits")


def fig1_rows(K: int) -> list[tuple[float, ...]]:
    """GME bound, exact GME, REE bound and exact REE of the two-block state (m, n >= 2).

    Rows are indexed by s = sin(alpha) on K equally spaced points of [0, 1].
    """
    if K < 2:
        raise DomainError("grid needs at least two points")
    rows = []
    for s in np.linspace(0.0, 1.0, K):
        alpha = float(np.arcsin(s))
        c2 = 1.0 - s * s
        pm = max(c2, s * s) / 2
        bg = np.sqrt(1.0 - superposition_upper_bound(alpha))
        rows.append((float(s), float(bg), float(np.sqrt(1 - pm)), float(-np.log2(pm)),
                     1.0 + binary_entropy(min(max(c2, 0.0), 1.0))))
    return rows


def fig2_rows(N: int, K: int) -> list[tuple[float, float]]:
    if N < 2:
        raise DomainError("need N >= 2")
    if K < 2:
        raise DomainError("grid needs at least two points")
    return [(float(p), w_symmetric_entropy(N, float(p))) for p in np.linspace(0.0, 1.0, K)]


def to_csv(columns, rows) -> str:
    """Comma separated, header row, 17 significant digits."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([f"{x:.17g}" for x in r])
    return buf.getvalue()
