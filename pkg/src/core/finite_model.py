"""
Finite β-model dictionary.

For a finite semigroup S the Stone–Čech compactification is S itself, so every
statement about βS is read through one identification:

    ultrafilter p        <->  element x (p = all sets containing x)
    filter F             <->  its base B (F = all supersets of B)
    closure F̄            <->  the points of B
    closure of a set A   <->  A
    F̄·Ḡ, cl(F̄·Ḡ)         <->  set_product(B, C)
    F̄·q                  <->  set_product(B, {y})
    p·G                  <->  principal filter over set_product({x}, C)

Every checker that reads a βS-side statement goes through this module.
"""
from typing import Iterable

from src.core.semigroup import CayleyTable, set_product
from src.core.setfam import Family, SubsetMask, elements, filter_base, sets_containing, sets_meeting


def closure(F: Family) -> SubsetMask:
    return filter_base(F)


def product_of_closures(table: CayleyTable, F: Family, G: Family) -> SubsetMask:
    """F̄·Ḡ."""
    return set_product(table, closure(F), closure(G))


def closure_times_point(table: CayleyTable, F: Family, y: int) -> SubsetMask:
    """F̄·q for q the ultrafilter at y."""
    return set_product(table, closure(F), 1 << y)


def point_times_closure(table: CayleyTable, x: int, G: Family) -> SubsetMask:
    """Base of p·G for p the ultrafilter at x."""
    return set_product(table, 1 << x, closure(G))


def any_of(families: Iterable[Family], n: int) -> Family:
    out = Family.empty(n)
    for fam in families:
        out = out | fam
    return out


def all_of(families: Iterable[Family], n: int) -> Family:
    out = Family.everything(n)
    for fam in families:
        out = out & fam
    return out


# Right-hand sides of the product characterizations for filters F, G
# with bases B, C. Each is built from points only, never from the translate-based deciders.

def thick_by_products(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : ∃y∈C, B·y ⊆ A}."""
    n = table.n
    return any_of((sets_containing(closure_times_point(table, F, y), n) for y in elements(closure(G))), n)


def syn_by_products(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : ∀y∈C, B·y ∩ A ≠ ∅}."""
    n = table.n
    return all_of((sets_meeting(closure_times_point(table, F, y), n) for y in elements(closure(G))), n)


def containing_product(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : B·C ⊆ A}, i.e. cl(F̄·Ḡ) ⊆ Ā."""
    return sets_containing(product_of_closures(table, F, G), table.n)


def meeting_product(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : B·C ∩ A ≠ ∅}."""
    return sets_meeting(product_of_closures(table, F, G), table.n)


def some_point_product_contained(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : ∃x∈B, x·C ⊆ A}."""
    n = table.n
    return any_of((sets_containing(point_times_closure(table, x, G), n) for x in elements(closure(F))), n)


def every_point_product_meets(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : ∀x∈B, x·C ∩ A ≠ ∅}."""
    n = table.n
    return all_of((sets_meeting(point_times_closure(table, x, G), n) for x in elements(closure(F))), n)


def some_point_product_meets(table: CayleyTable, F: Family, G: Family) -> Family:
    """{A : ∃x∈B, x·C ∩ A ≠ ∅}."""
    n = table.n
    return any_of((sets_meeting(point_times_closure(table, x, G), n) for x in elements(closure(F))), n)
