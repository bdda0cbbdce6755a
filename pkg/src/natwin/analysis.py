"""
Window scans for sets of positive integers.

Every verdict is about the window [1, N] only. Windows that would run past
the horizon are left out of the universal quantifiers, so a positive answer
here never claims more than the window shows.
"""
from __future__ import annotations

import itertools
from typing import Any, Iterator, Optional, Sequence

import numpy as np
from scipy.ndimage import label

from src import config
from src.core.errors import HorizonError, SizeLimitError
from src.natwin.window import WindowSet
from src.utils.log import get_logger

logger = get_logger("NATWIN")

# index entries gathered per chunk of differences, whatever k is
_AP_BUDGET = 1 << 21


def _scope(W: WindowSet) -> str:
    return f"within [1,{W.horizon}]"


# --- GAPS AND RUNS ---

def gap_bound(W: WindowSet) -> Optional[int]:
    """
    Smallest b such that the first member is <= b and every length-b window
    inside [1, N] meets W. None for the empty set, or when the stretch after
    the last member already holds a full empty window.
    """
    members = W.members
    if members.size == 0:
        return None
    b = int(members[0])
    if members.size > 1:
        b = max(b, int(np.diff(members).max()))
    if W.horizon - int(members[-1]) >= b:
        return None
    return b


def gap_bound_report(W: WindowSet) -> dict[str, Any]:
    b = gap_bound(W)
    return {
        "b": b,
        "window": [1, W.horizon],
        "largest_x_checked": W.horizon - b if b is not None else None,
        "scope": _scope(W),
    }


def max_block_run(W: WindowSet) -> int:
    labeled, num = label(W.bits)
    if num == 0:
        return 0
    counts = np.bincount(labeled.ravel())
    counts[0] = 0
    return int(counts.max())


def ps_witness(W: WindowSet, b: int, L: int) -> Optional[tuple[int, int]]:
    """
    Least subwindow [s, s+L-1] that meets W and in which every length-b window meets W.
    A subwindow shorter than b holds no length-b window, so it only has to meet W.
    """
    if b < 1 or L < 1:
        raise ValueError(f"b and L must be positive, got b={b}, L={L}")
    N = W.horizon
    if L > N:
        return None
    counts = np.concatenate(([0], np.cumsum(W.bits, dtype=np.int64)))
    if L < b:
        meets = np.flatnonzero(counts[L:] - counts[:-L] > 0)
        return (int(meets[0]) + 1, int(meets[0]) + L) if meets.size else None
    # empty[p] for the length-b window starting at 1-based p = 1..N-b+1
    empty = (counts[b:] - counts[:-b]) == 0
    bad = np.concatenate(([0], np.cumsum(empty, dtype=np.int64)))
    span = L - b + 1
    starts = N - L + 1
    # subwindow starting at s holds the length-b windows starting at s..s+L-b
    hits = bad[span:span + starts] - bad[:starts]
    ok = np.flatnonzero(hits == 0)
    if ok.size == 0:
        return None
    s = int(ok[0]) + 1
    return (s, s + L - 1)


# --- ARITHMETIC PROGRESSIONS ---

def _difference_chunks(dmax: int, k: int) -> Iterator[np.ndarray]:
    """Differences 1..dmax in ascending chunks of at most _AP_BUDGET // (k-1) values."""
    width = max(1, _AP_BUDGET // (k - 1))
    for lo in range(1, dmax + 1, width):
        yield np.arange(lo, min(dmax, lo + width - 1) + 1, dtype=np.int64)


def find_ap(W: WindowSet, k: int) -> Optional[tuple[int, int]]:
    """Lexicographically least (a, d), d >= 1, with a, a+d, ..., a+(k-1)d all in W."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    members = W.members
    if members.size == 0:
        return None
    if k == 1:
        return (int(members[0]), 1)
    steps = np.arange(1, k, dtype=np.int64)[:, None]
    for a in members:
        a = int(a)
        dmax = (W.horizon - a) // (k - 1)
        if dmax < 1:
            break
        for ds in _difference_chunks(dmax, k):
            ok = W.bits[a - 1 + steps * ds[None, :]].all(axis=0)
            if ok.any():
                return (a, int(ds[ok.argmax()]))
    return None


# --- FINITE EMBEDDABILITY ---

def embedding_shift(F: Sequence[int], B: WindowSet) -> Optional[int]:
    """Least x >= 0 with F + x inside B; shifts leaving B's horizon do not count."""
    if len(F) == 0:
        return 0
    top = max(F)
    if top > B.horizon:
        return None
    ok = np.ones(B.horizon - top + 1, dtype=bool)
    for f in F:
        ok &= B.bits[f - 1:f - 1 + ok.size]
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None


def _prefix(A: WindowSet, m: int) -> list[int]:
    if not 1 <= m <= A.horizon:
        raise HorizonError(f"m={m} outside [1, {A.horizon}]")
    return [int(k) for k in A.members if k <= m]


def finite_embeddable(A: WindowSet, B: WindowSet, m: int) -> bool:
    """Every finite F ⊆ A ∩ [1,m] shifts into B. Subsets of a shiftable set shift too, so one check suffices."""
    return embedding_shift(_prefix(A, m), B) is not None


def finite_embeddable_literal(A: WindowSet, B: WindowSet, m: int) -> bool:
    if m > config.MAX_LITERAL_EMBED_M:
        raise SizeLimitError(f"literal sweep supports m <= {config.MAX_LITERAL_EMBED_M}, got {m}")
    pool = _prefix(A, m)
    for size in range(1, len(pool) + 1):
        for F in itertools.combinations(pool, size):
            if embedding_shift(F, B) is None:
                return False
    return True


# --- EVENS DEMO ---

def example_3_4_probe(N: int, m: int) -> dict[str, Any]:
    """
    Evens in [1,N]: every 2F with F ⊆ [1,m] shifts into the evens, and the
    evens hold no two consecutive integers.
    """
    if m < 1 or 2 * m > N:
        raise HorizonError(f"need 1 <= m and 2m <= N, got m={m}, N={N}")
    evens = WindowSet.evens(N)
    doubled = list(range(2, 2 * m + 1, 2))
    shift = embedding_shift(doubled, evens)
    run = max_block_run(evens)
    report = {
        "window": [1, N],
        "m": m,
        "relatively_thick_within_window": shift is not None,
        "shift": shift,
        "max_run": run,
        "not_thick_within_window": run < 2,
        "scope": f"within [1,{N}]",
    }
    report["passed"] = report["relatively_thick_within_window"] and report["not_thick_within_window"]
    logger.info(f"evens probe N={N} m={m}: passed={report['passed']}")
    return report
