"""
Size notions over a finite semigroup: syndetic, thick, piecewise syndetic,
their (F,G)-relative forms, the stack product and the SZZ piecewise notion.

The optimized deciders use two quantifier shortcuts:
  - the union (intersection) of translates is largest (smallest) at H = B,
    and G is upward closed, so one H per B suffices;
  - larger B only helps the ∀B quantifier and only hurts the ∃B one, so
    inclusion-minimal members of F suffice.
The `*_literal` functions quantify over every B and every H and are kept as
the reference they are tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from src import config
from src.core.errors import NotAStackError, PreconditionError, SizeLimitError
from src.core.semigroup import CayleyTable, is_subsemigroup, preimage_translate
from src.core.setfam import (
    Family,
    SubsetMask,
    classify,
    elements,
    filter_base,
    intersection_family,
    mesh,
    minimal_members,
    principal_ultrafilter,
    submasks,
)


@dataclass(frozen=True)
class SizeFamilies:
    syn: Family
    thick: Family
    ps: Family


@dataclass(frozen=True)
class RelParams:
    F: Family
    G: Family

    def __post_init__(self):
        for name, fam in (("F", self.F), ("G", self.G)):
            if not classify(fam).is_stack:
                raise NotAStackError(f"{name} is not a stack: {fam!r}")
        if self.F.n != self.G.n:
            raise ValueError(f"F and G live on different ground sets ({self.F.n} vs {self.G.n})")


def _check_ground(table: CayleyTable, *families: Family) -> None:
    if table.n > config.MAX_FAMILY_N:
        raise SizeLimitError(f"whole-family work needs n <= {config.MAX_FAMILY_N}, got {table.n}")
    for fam in families:
        if fam.n != table.n:
            raise ValueError(f"family on {fam.n} points used with a table of order {table.n}")


def _union_of_translates(table: CayleyTable, H: SubsetMask, A: SubsetMask) -> SubsetMask:
    out = 0
    for h in elements(H):
        out |= preimage_translate(table, h, A)
    return out


def _intersection_of_translates(table: CayleyTable, H: SubsetMask, A: SubsetMask) -> SubsetMask:
    out = table.full
    for h in elements(H):
        out &= preimage_translate(table, h, A)
    return out


# --- CLASSICAL NOTIONS ---

def is_syndetic(table: CayleyTable, A: SubsetMask) -> bool:
    return _union_of_translates(table, table.full, A) == table.full


def is_thick(table: CayleyTable, A: SubsetMask) -> bool:
    return _intersection_of_translates(table, table.full, A) != 0


def is_piecewise_syndetic(table: CayleyTable, A: SubsetMask) -> bool:
    return is_thick(table, _union_of_translates(table, table.full, A))


def is_syndetic_literal(table: CayleyTable, A: SubsetMask) -> bool:
    return any(_union_of_translates(table, H, A) == table.full for H in submasks(table.full))


def is_thick_literal(table: CayleyTable, A: SubsetMask) -> bool:
    return all(_intersection_of_translates(table, H, A) != 0 for H in submasks(table.full))


def is_ps_literal(table: CayleyTable, A: SubsetMask) -> bool:
    return any(is_thick_literal(table, _union_of_translates(table, H, A)) for H in submasks(table.full))


@lru_cache(maxsize=4096)
def size_families(table: CayleyTable) -> SizeFamilies:
    _check_ground(table)
    pre = table.translates
    union = np.bitwise_or.reduce(pre, axis=0)
    inter = np.bitwise_and.reduce(pre, axis=0)
    thick = inter != 0
    return SizeFamilies(
        syn=Family.from_array(table.n, union == table.full),
        thick=Family.from_array(table.n, thick),
        ps=Family.from_array(table.n, thick[union]),
    )


# --- RELATIVE NOTIONS ---

def is_rel_syndetic(table: CayleyTable, A: SubsetMask, F: Family, G: Family) -> bool:
    RelParams(F, G)
    return all(_union_of_translates(table, B, A) in G for B in minimal_members(F))


def is_rel_thick(table: CayleyTable, A: SubsetMask, F: Family, G: Family) -> bool:
    RelParams(F, G)
    G_star = mesh(G)
    return any(_intersection_of_translates(table, B, A) in G_star for B in minimal_members(F))


def is_rel_syndetic_literal(table: CayleyTable, A: SubsetMask, F: Family, G: Family) -> bool:
    RelParams(F, G)
    return all(any(_union_of_translates(table, H, A) in G for H in submasks(B)) for B in F)


def is_rel_thick_literal(table: CayleyTable, A: SubsetMask, F: Family, G: Family) -> bool:
    RelParams(F, G)
    G_star = mesh(G)
    return any(all(_intersection_of_translates(table, H, A) in G_star for H in submasks(B)) for B in F)


@lru_cache(maxsize=1 << 16)
def rel_syn_family(table: CayleyTable, F: Family, G: Family) -> Family:
    RelParams(F, G)
    _check_ground(table, F, G)
    pre = table.translates
    ok = np.ones(1 << table.n, dtype=bool)
    for B in minimal_members(F):
        ok &= G.members[np.bitwise_or.reduce(pre[elements(B)], axis=0)]
    return Family.from_array(table.n, ok)


@lru_cache(maxsize=1 << 16)
def rel_thick_family(table: CayleyTable, F: Family, G: Family) -> Family:
    RelParams(F, G)
    _check_ground(table, F, G)
    pre = table.translates
    G_star = mesh(G).members
    ok = np.zeros(1 << table.n, dtype=bool)
    for B in minimal_members(F):
        ok |= G_star[np.bitwise_and.reduce(pre[elements(B)], axis=0)]
    return Family.from_array(table.n, ok)


@lru_cache(maxsize=1 << 16)
def rel_ps_family(table: CayleyTable, F: Family, G: Family) -> Family:
    return intersection_family(rel_syn_family(table, F, G), rel_thick_family(table, F, G))


@lru_cache(maxsize=1 << 16)
def stack_product(table: CayleyTable, F: Family, G: Family) -> Family:
    """F·G = {A : {x : x⁻¹A ∈ G} ∈ F}."""
    RelParams(F, G)
    _check_ground(table, F, G)
    in_G = G.members[table.translates]                 # (n, 2^n)
    weights = np.int64(1) << np.arange(table.n, dtype=np.int64)
    xs = (in_G * weights[:, None]).sum(axis=0)
    return Family.from_array(table.n, F.members[xs])


# --- SZZ PIECEWISE F-SYNDETIC ---

def _szz_base(table: CayleyTable, F: Family) -> SubsetMask:
    base = filter_base(F)
    if not is_subsemigroup(table, base):
        raise PreconditionError(f"base {elements(base)} of F is not a subsemigroup")
    return base


def szz_component(table: CayleyTable, F: Family, y: int) -> Family:
    """Syn(F, Thick(F, q)) with q the ultrafilter at y."""
    q = principal_ultrafilter(y, table.n)
    return rel_syn_family(table, F, rel_thick_family(table, F, q))


@lru_cache(maxsize=1 << 14)
def szz_family(table: CayleyTable, F: Family, q_base: Optional[SubsetMask] = None) -> Family:
    base = _szz_base(table, F)
    points = base if q_base is None else q_base
    out = Family.empty(table.n)
    for y in elements(points):
        out = out | szz_component(table, F, y)
    return out


def szz_witness(table: CayleyTable, A: SubsetMask, F: Family,
                q_base: Optional[SubsetMask] = None) -> Optional[int]:
    """Least y in the q-range with A ∈ Syn(F, Thick(F, u_y)), or None."""
    base = _szz_base(table, F)
    points = base if q_base is None else q_base
    for y in elements(points):
        if A in szz_component(table, F, y):
            return y
    return None


def is_szz_piecewise_syndetic(table: CayleyTable, A: SubsetMask, F: Family) -> bool:
    return szz_witness(table, A, F) is not None


def clear_caches() -> None:
    for fn in (size_families, rel_syn_family, rel_thick_family, rel_ps_family, stack_product, szz_family):
        fn.cache_clear()
