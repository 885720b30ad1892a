"""Double-double arithmetic and deterministic ordered reduction.

Partial sums are carried as an unevaluated pair (hi, lo) with |lo| <= ulp(hi)/2,
which keeps roughly 32 significant digits through long accumulations.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1
REDUCTION_CHUNK = 1 << 16


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    s, e = two_sum(xh, yh)
    t, f = two_sum(xl, yl)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def dd_recip(d: float) -> tuple[float, float]:
    """1/d as a double-double, for a double ``d``."""
    q = 1.0 / d
    p, e = two_prod(q, d)
    r = (1.0 - p) - e
    return quick_two_sum(q, r / d)


def dd_cumsum(hi: Sequence[float], lo: Sequence[float] | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Running double-double partial sums of the terms hi[i] + lo[i], in index order."""
    n = len(hi)
    out_hi = np.empty(n)
    out_lo = np.empty(n)
    sh = sl = 0.0
    hi_list = np.asarray(hi, dtype=float).tolist()
    lo_list = [0.0] * n if lo is None else np.asarray(lo, dtype=float).tolist()
    for i in range(n):
        sh, sl = dd_add(sh, sl, hi_list[i], lo_list[i])
        out_hi[i] = sh
        out_lo[i] = sl
    return out_hi, out_lo


def thread_count() -> int:
    """Worker cap from DELTA_SPECTRA_THREADS; 0 or unset means one per CPU."""
    raw = os.environ.get("DELTA_SPECTRA_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def ordered_sum(terms: Iterable[float] | np.ndarray) -> float:
    """Deterministic compensated sum.

    Terms are cut into fixed-size chunks in index order, each chunk is summed
    exactly-rounded, and the chunk totals are merged in ascending order.
    Chunk boundaries do not depend on the worker count, so the result is
    bitwise identical for any DELTA_SPECTRA_THREADS setting.
    """
    arr = np.asarray(terms, dtype=float).ravel()
    chunks = [arr[i : i + REDUCTION_CHUNK] for i in range(0, arr.size, REDUCTION_CHUNK)]
    if not chunks:
        return 0.0
    workers = min(thread_count(), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partial = list(pool.map(lambda c: math.fsum(c.tolist()), chunks))
    else:
        partial = [math.fsum(c.tolist()) for c in chunks]
    return math.fsum(partial)
