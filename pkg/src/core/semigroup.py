"""
Finite semigroups as Cayley tables: entry (i, j) is the product i·j.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterator, Literal, Optional, Sequence

import numpy as np

from src import config
from src.core.errors import SizeLimitError, TableFormatError
from src.core.setfam import SubsetMask, elements, from_elements, full_mask, is_subset, submasks
from src.utils.log import get_logger

logger = get_logger("SEMIGROUP")

Dedupe = Literal["none", "iso"]


@dataclass(frozen=True)
class CayleyTable:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if not 1 <= n <= config.MAX_TABLE_ORDER:
            raise TableFormatError(f"table order {n} outside [1, {config.MAX_TABLE_ORDER}]")
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise TableFormatError(f"row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise TableFormatError(f"entry ({i},{j}) = {v} out of range [0,{n})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "CayleyTable":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "CayleyTable":
        return cls.from_rows(np.asarray(arr).tolist())

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> SubsetMask:
        return full_mask(self.n)

    @property
    def label(self) -> str:
        sep = "" if self.n <= 10 else ","
        return "/".join(sep.join(str(v) for v in row) for row in self.rows)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.rows, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def translates(self) -> np.ndarray:
        """translates[h, A] = mask of h⁻¹A, for every element h and subset A."""
        if self.n > config.MAX_FAMILY_N:
            raise SizeLimitError(f"whole-family work needs n <= {config.MAX_FAMILY_N}, got {self.n}")
        A = np.arange(1 << self.n, dtype=np.int64)
        weights = np.int64(1) << np.arange(self.n, dtype=np.int64)
        # bit y of h⁻¹A is bit T[h, y] of A
        out = np.stack([(((A[:, None] >> self.array[h][None, :]) & 1) * weights).sum(axis=1)
                        for h in range(self.n)])
        out.flags.writeable = False
        return out

    def product(self, x: int, y: int) -> int:
        return self.rows[x][y]


@dataclass(frozen=True)
class Validation:
    ok: bool
    violation: Optional[tuple[int, int, int]] = None


def validate(table: CayleyTable) -> Validation:
    T = table.array
    lhs = T[T]        # lhs[i, j, k] = (i·j)·k
    rhs = T[:, T]     # rhs[i, j, k] = i·(j·k)
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return Validation(True)
    i, j, k = (int(v) for v in bad[0])
    return Validation(False, (i, j, k))


# --- TRANSLATES AND PRODUCTS ---

def _mask_array(A: SubsetMask, n: int) -> np.ndarray:
    return ((A >> np.arange(n)) & 1).astype(bool)


def _mask_of(flags: np.ndarray) -> SubsetMask:
    return from_elements(np.flatnonzero(flags))


def preimage_translate(table: CayleyTable, h: int, A: SubsetMask) -> SubsetMask:
    """h⁻¹A = {y : h·y ∈ A}."""
    in_A = _mask_array(A, table.n)
    return _mask_of(in_A[table.array[h]])


def set_product(table: CayleyTable, X: SubsetMask, Y: SubsetMask) -> SubsetMask:
    xs, ys = elements(X), elements(Y)
    if not xs or not ys:
        return 0
    return from_elements(np.unique(table.array[np.ix_(xs, ys)]))


# --- IDEALS ---

def is_subsemigroup(table: CayleyTable, B: SubsetMask) -> bool:
    return B != 0 and is_subset(set_product(table, B, B), B)


def is_left_ideal(table: CayleyTable, B: SubsetMask) -> bool:
    return B != 0 and is_subset(set_product(table, table.full, B), B)


def is_right_ideal(table: CayleyTable, B: SubsetMask) -> bool:
    return B != 0 and is_subset(set_product(table, B, table.full), B)


def idempotents(table: CayleyTable) -> SubsetMask:
    T = table.array
    return _mask_of(np.diagonal(T) == np.arange(table.n))


class IdealKind(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"
    MINIMAL_LEFT = "minimal_left"


@dataclass(frozen=True)
class IdealSet:
    mask: SubsetMask
    kind: IdealKind

    def holds(self, table: CayleyTable) -> bool:
        if self.kind is IdealKind.LEFT:
            return is_left_ideal(table, self.mask)
        if self.kind is IdealKind.RIGHT:
            return is_right_ideal(table, self.mask)
        if self.kind is IdealKind.TWO_SIDED:
            return is_left_ideal(table, self.mask) and is_right_ideal(table, self.mask)
        return is_left_ideal(table, self.mask) and not _has_proper_left_subideal(table, self.mask)


def _has_proper_left_subideal(table: CayleyTable, L: SubsetMask) -> bool:
    return any(sub != L and is_left_ideal(table, sub) for sub in submasks(L))


@lru_cache(maxsize=4096)
def _minimal_left_ideals(table: CayleyTable) -> tuple[SubsetMask, ...]:
    # principal left ideals S¹a = S·a ∪ {a}
    principal = {set_product(table, table.full, 1 << a) | (1 << a) for a in range(table.n)}
    minimal = sorted(L for L in principal
                     if not any(M != L and is_subset(M, L) for M in principal))
    for L in minimal:
        if not IdealSet(L, IdealKind.MINIMAL_LEFT).holds(table):
            raise RuntimeError(f"minimal left ideal check failed for {elements(L)} in {table.label}")
    return tuple(minimal)


def minimal_left_ideals(table: CayleyTable) -> list[SubsetMask]:
    return list(_minimal_left_ideals(table))


def clear_caches() -> None:
    _minimal_left_ideals.cache_clear()


def smallest_ideal(table: CayleyTable) -> SubsetMask:
    K = 0
    for L in minimal_left_ideals(table):
        K |= L
    if not IdealSet(K, IdealKind.TWO_SIDED).holds(table):
        raise RuntimeError(f"union of minimal left ideals is not an ideal in {table.label}")
    return K


def ideal_sets(table: CayleyTable) -> list[IdealSet]:
    """Every nonempty left, right and two-sided ideal plus the minimal left ones (n <= 4)."""
    if table.n > 4:
        raise SizeLimitError("ideal enumeration is exhaustive, n <= 4")
    out = []
    for B in range(1, table.full + 1):
        out.extend(IdealSet(B, kind) for kind in IdealKind if IdealSet(B, kind).holds(table))
    return out


def two_sided_ideals(table: CayleyTable) -> list[SubsetMask]:
    return [I.mask for I in ideal_sets(table) if I.kind is IdealKind.TWO_SIDED]


# --- NAMED TABLES ---

def left_zero(n: int) -> CayleyTable:
    return CayleyTable.from_rows([[i] * n for i in range(n)])


def right_zero(n: int) -> CayleyTable:
    return CayleyTable.from_rows([list(range(n)) for _ in range(n)])


def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable.from_rows([[(i + j) % n for j in range(n)] for i in range(n)])


def multiplication_mod(n: int) -> CayleyTable:
    return CayleyTable.from_rows([[(i * j) % n for j in range(n)] for i in range(n)])


def null_semigroup(n: int) -> CayleyTable:
    """Every product is the absorbing zero 0."""
    return CayleyTable.from_rows([[0] * n for _ in range(n)])


def min_semilattice(n: int) -> CayleyTable:
    return CayleyTable.from_rows([[min(i, j) for j in range(n)] for i in range(n)])


# --- RELABELING ---

def relabel(table: CayleyTable, sigma: Sequence[int]) -> CayleyTable:
    """Image of the table under the bijection x -> sigma[x]."""
    s = np.asarray(sigma, dtype=np.int64)
    out = np.empty_like(table.array)
    out[np.ix_(s, s)] = s[table.array]
    return CayleyTable.from_array(out)


@lru_cache(maxsize=None)
def _permutations(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return perms, np.argsort(perms, axis=1)


def _all_relabelings(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    perms, inv = _permutations(n)
    # new[i, j] = sigma[T[inv i, inv j]]
    sub = T[inv[:, :, None], inv[:, None, :]]
    out = perms[np.arange(len(perms))[:, None, None], sub]
    return out.reshape(len(perms), n * n)


def canonical_form(table: CayleyTable) -> CayleyTable:
    """Lexicographically least table in the relabeling orbit."""
    flat = _all_relabelings(table.array)
    best = flat[np.lexsort(flat.T[::-1])[0]]
    return CayleyTable.from_array(best.reshape(table.n, table.n))


def _is_canonical(rows: list[list[int]]) -> bool:
    T = np.array(rows, dtype=np.int64)
    flat = _all_relabelings(T)
    own = T.ravel()
    differs = flat != own
    first = differs.argmax(axis=1)
    smaller = differs.any(axis=1) & (flat[np.arange(len(flat)), first] < own[first])
    return not smaller.any()


# --- ENUMERATION ---

def _associative_fills(n: int) -> Iterator[list[list[int]]]:
    T = [[-1] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]

    def consistent(i: int, j: int) -> bool:
        # every triple whose four lookups are now all defined and touch cell (i, j)
        v = T[i][j]
        for c in range(n):
            jc = T[j][c]
            if jc >= 0 and T[v][c] >= 0 and T[i][jc] >= 0 and T[v][c] != T[i][jc]:
                return False
        for a in range(n):
            ai = T[a][i]
            if ai >= 0 and T[ai][j] >= 0 and T[a][v] >= 0 and T[ai][j] != T[a][v]:
                return False
        for a in range(n):
            for b in range(n):
                if T[a][b] == i:
                    bj = T[b][j]
                    if bj >= 0 and T[a][bj] >= 0 and T[a][bj] != v:
                        return False
                if T[a][b] == j:
                    ia = T[i][a]
                    if ia >= 0 and T[ia][b] >= 0 and T[ia][b] != v:
                        return False
        return True

    def fill(k: int) -> Iterator[list[list[int]]]:
        if k == len(cells):
            yield [row[:] for row in T]
            return
        i, j = cells[k]
        for v in range(n):
            T[i][j] = v
            if consistent(i, j):
                yield from fill(k + 1)
        T[i][j] = -1

    yield from fill(0)


def enumerate_semigroups(n: int, dedupe: Dedupe = "none") -> Iterator[CayleyTable]:
    """All associative tables of order n in lexicographic order, or one per relabeling orbit."""
    if dedupe not in ("none", "iso"):
        raise ValueError(f"unknown dedupe mode {dedupe!r}")
    cap = config.MAX_ENUM_ORDER_ISO if dedupe == "iso" else config.MAX_ENUM_ORDER_RAW
    if not 1 <= n <= cap:
        raise SizeLimitError(f"enumeration with dedupe={dedupe} supports 1 <= n <= {cap}, got {n}")
    count = 0
    for rows in _associative_fills(n):
        if dedupe == "iso" and not _is_canonical(rows):
            continue
        count += 1
        yield CayleyTable.from_rows(rows)
    logger.info(f"order {n} ({dedupe}): {count} tables")
