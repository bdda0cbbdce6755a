"""
Families of subsets of a finite ground set X = {0, ..., n-1}.

A subset is an n-bit int (SubsetMask). A family is a 2^n-bit int: bit i is set
iff the subset with mask i is a member. Whole-family work is done on the
boolean view `Family.members` (index = subset mask).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator

import numpy as np

from src import config
from src.core.errors import NotAFilterError, SizeLimitError
from src.utils.log import get_logger

logger = get_logger("SETFAM")

SubsetMask = int


# --- SUBSET MASKS ---

def full_mask(n: int) -> SubsetMask:
    return (1 << n) - 1


def complement(a: SubsetMask, n: int) -> SubsetMask:
    return full_mask(n) ^ a


def elements(a: SubsetMask) -> list[int]:
    out = []
    i = 0
    while a:
        if a & 1:
            out.append(i)
        a >>= 1
        i += 1
    return out


def from_elements(xs: Iterable[int]) -> SubsetMask:
    mask = 0
    for x in xs:
        mask |= 1 << int(x)
    return mask


def popcount(a: SubsetMask) -> int:
    return bin(a).count("1")


def is_subset(a: SubsetMask, b: SubsetMask) -> bool:
    return a & b == a


def check_mask(a: SubsetMask, n: int) -> None:
    if not 1 <= n <= config.MAX_SUBSET_N:
        raise SizeLimitError(f"ground-set size {n} outside [1, {config.MAX_SUBSET_N}]")
    if a < 0 or a >> n:
        raise ValueError(f"mask {a:#x} has bits above position {n - 1}")


def submasks(a: SubsetMask) -> Iterator[SubsetMask]:
    """Nonempty submasks of `a`, descending."""
    sub = a
    while sub:
        yield sub
        sub = (sub - 1) & a


@lru_cache(maxsize=None)
def subset_index(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    idx.flags.writeable = False
    return idx


# --- FAMILIES ---

@dataclass(frozen=True)
class Family:
    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= config.MAX_FAMILY_N:
            raise SizeLimitError(f"families are limited to n <= {config.MAX_FAMILY_N}, got n={self.n}")
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise ValueError(f"family bit-vector too wide for n={self.n}")

    @classmethod
    def from_array(cls, n: int, members: np.ndarray) -> "Family":
        packed = np.packbits(np.asarray(members, dtype=bool), bitorder="little")
        return cls(n, int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[SubsetMask]) -> "Family":
        bits = 0
        for m in masks:
            check_mask(m, n)
            bits |= 1 << m
        return cls(n, bits)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Family":
        masks = []
        for s in sets:
            s = list(s)
            if any(x < 0 or x >= n for x in s):
                raise ValueError(f"element out of range in {s} for n={n}")
            masks.append(from_elements(s))
        return cls.from_masks(n, masks)

    @classmethod
    def from_predicate(cls, n: int, pred: Callable[[SubsetMask], bool]) -> "Family":
        return cls.from_masks(n, (a for a in range(1 << n) if pred(a)))

    @classmethod
    def empty(cls, n: int) -> "Family":
        return cls(n, 0)

    @classmethod
    def everything(cls, n: int) -> "Family":
        # the improper filter P(X)
        return cls(n, (1 << (1 << n)) - 1)

    @cached_property
    def members(self) -> np.ndarray:
        size = 1 << self.n
        raw = self.bits.to_bytes(max(1, (size + 7) // 8), "little")
        arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size].astype(bool)
        arr.flags.writeable = False
        return arr

    @cached_property
    def masks(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def __contains__(self, a: SubsetMask) -> bool:
        return bool((self.bits >> a) & 1)

    def __iter__(self) -> Iterator[SubsetMask]:
        return (int(a) for a in self.masks)

    def __len__(self) -> int:
        return popcount(self.bits)

    def _same_ground(self, other: "Family") -> None:
        if self.n != other.n:
            raise ValueError(f"ground sets differ: n={self.n} vs n={other.n}")

    def issubset(self, other: "Family") -> bool:
        self._same_ground(other)
        return self.bits & other.bits == self.bits

    def __le__(self, other: "Family") -> bool:
        return self.issubset(other)

    def __or__(self, other: "Family") -> "Family":
        self._same_ground(other)
        return Family(self.n, self.bits | other.bits)

    def __and__(self, other: "Family") -> "Family":
        self._same_ground(other)
        return Family(self.n, self.bits & other.bits)

    def sets(self) -> list[list[int]]:
        return [elements(a) for a in self]

    def __repr__(self) -> str:
        return f"Family(n={self.n}, members={self.sets()})"


# --- CLASSIFICATION ---

class FamilyClass(str, Enum):
    ARBITRARY = "arbitrary"
    STACK = "stack"
    FILTER = "filter"
    GRILL = "grill"
    ULTRAFILTER = "ultrafilter"


@dataclass(frozen=True)
class Classification:
    is_stack: bool
    is_filter: bool
    is_grill: bool
    is_ultrafilter: bool

    @property
    def kind(self) -> FamilyClass:
        if self.is_ultrafilter:
            return FamilyClass.ULTRAFILTER
        if self.is_filter:
            return FamilyClass.FILTER
        if self.is_grill:
            return FamilyClass.GRILL
        if self.is_stack:
            return FamilyClass.STACK
        return FamilyClass.ARBITRARY


@lru_cache(maxsize=1 << 16)
def upward_closure(F: Family) -> Family:
    m = F.members.copy()
    idx = subset_index(F.n)
    for e in range(F.n):
        bit = 1 << e
        lower = idx[(idx & bit) == 0]
        m[lower | bit] |= m[lower]
    return Family.from_array(F.n, m)


def _closed_under_intersection(F: Family) -> bool:
    ms = F.masks
    return bool(F.members[ms[:, None] & ms[None, :]].all())


def _is_grill_condition(F: Family) -> bool:
    # A | B in F  =>  A in F or B in F, for all A, B
    idx = subset_index(F.n)
    m = F.members
    union_in = m[idx[:, None] | idx[None, :]]
    either_in = m[:, None] | m[None, :]
    return bool(np.all(~union_in | either_in))


@lru_cache(maxsize=1 << 16)
def classify(F: Family) -> Classification:
    stack = F.bits != 0 and 0 not in F and upward_closure(F) == F
    is_filter = stack and _closed_under_intersection(F)
    is_grill = stack and _is_grill_condition(F)
    return Classification(stack, is_filter, is_grill, is_filter and is_grill)


def classify_literal(F: Family) -> Classification:
    """The four stack/filter/grill conditions read off quantifier by quantifier; reference for `classify`."""
    n = F.n
    universe = range(1 << n)
    cond1 = F.bits != 0 and 0 not in F
    cond2 = all(b in F for a in universe if a in F for b in universe if a & b == a)
    stack = cond1 and cond2
    cond3 = all((a & b) in F for a in universe if a in F for b in universe if b in F)
    cond4 = all(a in F or b in F for a in universe for b in universe if (a | b) in F)
    return Classification(stack, stack and cond3, stack and cond4, stack and cond3 and cond4)


# --- MESH AND FRIENDS ---

@lru_cache(maxsize=1 << 16)
def mesh(F: Family) -> Family:
    # X \ A has mask full ^ A = (2^n - 1) - A, so the lookup is a reversal
    return Family.from_array(F.n, ~F.members[::-1])


def schmidt_mesh(F: Family) -> Family:
    idx = subset_index(F.n)
    ms = F.masks
    if ms.size == 0:
        return Family.everything(F.n)
    meets = ((idx[:, None] & ms[None, :]) != 0).all(axis=1)
    return Family.from_array(F.n, meets)


def intersection_family(F: Family, G: Family) -> Family:
    F._same_ground(G)
    out = np.zeros(1 << F.n, dtype=bool)
    if F.masks.size and G.masks.size:
        out[np.unique(F.masks[:, None] & G.masks[None, :])] = True
    return Family.from_array(F.n, out)


@lru_cache(maxsize=1 << 16)
def minimal_members(F: Family) -> tuple[SubsetMask, ...]:
    ms = F.masks
    if ms.size == 0:
        return ()
    # contains[i, j]: member j is a subset of member i
    contains = (ms[:, None] & ms[None, :]) == ms[None, :]
    np.fill_diagonal(contains, False)
    return tuple(int(a) for a in ms[~contains.any(axis=1)])


def clear_caches() -> None:
    for fn in (upward_closure, classify, mesh, minimal_members):
        fn.cache_clear()


# --- FILTERS ON A FINITE SET ARE PRINCIPAL ---

def sets_containing(points: SubsetMask, n: int) -> Family:
    """{A : points ⊆ A}."""
    idx = subset_index(n)
    return Family.from_array(n, (idx & points) == points)


def sets_meeting(points: SubsetMask, n: int) -> Family:
    """{A : A ∩ points ≠ ∅}."""
    idx = subset_index(n)
    return Family.from_array(n, (idx & points) != 0)


def principal_filter(base: SubsetMask, n: int) -> Family:
    check_mask(base, n)
    if base == 0:
        raise NotAFilterError("principal filter over the empty set is the improper filter")
    return sets_containing(base, n)


def principal_ultrafilter(x: int, n: int) -> Family:
    if not 0 <= x < n:
        raise ValueError(f"element {x} outside ground set of size {n}")
    return principal_filter(1 << x, n)


def filter_base(F: Family) -> SubsetMask:
    if not classify(F).is_filter:
        raise NotAFilterError(f"not a proper filter: {F!r}")
    return int(np.bitwise_and.reduce(F.masks))


# --- ENUMERATION ---

def _check_enum_n(n: int, cap: int, what: str) -> None:
    if not 1 <= n <= cap:
        raise SizeLimitError(f"{what} enumeration supports 1 <= n <= {cap}, got n={n}")


def _antichains(candidates: list[SubsetMask]) -> Iterator[tuple[SubsetMask, ...]]:
    chosen: list[SubsetMask] = []

    def extend(start: int) -> Iterator[tuple[SubsetMask, ...]]:
        for pos in range(start, len(candidates)):
            a = candidates[pos]
            if any(a & c == a or a & c == c for c in chosen):
                continue
            chosen.append(a)
            yield tuple(chosen)
            yield from extend(pos + 1)
            chosen.pop()

    yield from extend(0)


def closure_of_antichain(generators: Iterable[SubsetMask], n: int) -> Family:
    idx = subset_index(n)
    m = np.zeros(1 << n, dtype=bool)
    for g in generators:
        m |= (idx & g) == g
    return Family.from_array(n, m)


def enumerate_stacks(n: int) -> Iterator[Family]:
    """Every stack on n points, as upward closures of nonempty antichains avoiding ∅."""
    _check_enum_n(n, config.MAX_STACK_ENUM_N, "stack")
    for antichain in _antichains(list(range(1, 1 << n))):
        yield closure_of_antichain(antichain, n)


def enumerate_filters(n: int) -> Iterator[Family]:
    _check_enum_n(n, config.MAX_FILTER_ENUM_N, "filter")
    for base in range(1, 1 << n):
        yield principal_filter(base, n)


def enumerate_ultrafilters(n: int) -> Iterator[Family]:
    _check_enum_n(n, config.MAX_FILTER_ENUM_N, "ultrafilter")
    for x in range(n):
        yield principal_ultrafilter(x, n)


def enumerate_grills(n: int) -> Iterator[Family]:
    _check_enum_n(n, config.MAX_STACK_ENUM_N, "grill")
    grills = [mesh(F) for F in enumerate_filters(n)]
    if n <= 3:
        direct = {S for S in enumerate_stacks(n) if classify(S).is_grill}
        if direct != set(grills):
            raise RuntimeError(f"grill enumeration disagrees with direct classification at n={n}")
        logger.info(f"n={n}: {len(grills)} grills, cross-checked against stacks")
    yield from grills


def brute_force_families(n: int) -> Iterator[Family]:
    """All 2^(2^n) families on n points, in bit-vector order."""
    _check_enum_n(n, config.MAX_BRUTE_FORCE_N, "brute-force family")
    for bits in range(1 << (1 << n)):
        yield Family(n, bits)
