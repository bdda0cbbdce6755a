"""
Claim registry.

Each claim is stored once as (relation, left side, right side, precondition).
Checkers, the suite and the failure re-verifier all evaluate claims through
`evaluate`, so a reported counterexample is recomputed by the same two sides
that produced it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterator, Optional, Sequence

from src.core import finite_model as fm
from src.core import notions, semigroup, setfam
from src.core.notions import (
    rel_ps_family,
    rel_syn_family,
    rel_thick_family,
    size_families,
    stack_product,
    szz_family,
)
from src.core.semigroup import (
    CayleyTable,
    is_left_ideal,
    is_right_ideal,
    is_subsemigroup,
    minimal_left_ideals,
)
from src.core.setfam import (
    Family,
    classify,
    elements,
    intersection_family,
    is_subset,
    mesh,
    principal_filter,
    schmidt_mesh,
    sets_containing,
    sets_meeting,
)
from src.theorems.reports import CheckReport, ClaimId, Status


class Scope(str, Enum):
    GROUND = "ground"                # one family on n points
    GROUND_PAIR = "ground_pair"      # two families on n points
    TABLE = "table"
    FILTER = "filter"
    FILTER_PAIR = "filter_pair"
    FILTER_TRIPLE = "filter_triple"
    NESTED_F = "nested_f"            # F ⊆ H, any G
    NESTED_G = "nested_g"            # G ⊆ H, any F


class Relation(str, Enum):
    EQUAL = "equal"
    EQUAL_FILTER = "equal_filter"    # equal, and the left side is a filter
    SUBSET = "subset"
    IFF = "iff"


@dataclass(frozen=True)
class Universe:
    n: int
    table: Optional[CayleyTable] = None
    F: Optional[Family] = None
    G: Optional[Family] = None
    H: Optional[Family] = None

    def payload(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n}
        if self.table is not None:
            out["table"] = [list(row) for row in self.table.rows]
        for name in ("F", "G", "H"):
            fam = getattr(self, name)
            if fam is not None:
                out[name] = fam.sets()
        return out

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "Universe":
        n = int(data["n"])
        table = CayleyTable.from_rows(data["table"]) if "table" in data else None
        fams = {name: Family.from_sets(n, data[name]) for name in ("F", "G", "H") if name in data}
        return cls(n, table, **fams)

    def describe(self) -> str:
        parts = [f"n={self.n}"]
        if self.table is not None:
            parts.append(f"table={self.table.label}")
        for name in ("F", "G", "H"):
            fam = getattr(self, name)
            if fam is not None:
                parts.append(f"{name}={fam.sets()}")
        return "; ".join(parts)


Side = Callable[[Universe], Any]


@dataclass(frozen=True)
class Claim:
    id: ClaimId
    scope: Scope
    relation: Relation
    lhs: Side
    rhs: Side
    precondition: Optional[Callable[[Universe], Optional[str]]] = None
    track_strictness: bool = False


@dataclass(frozen=True)
class Outcome:
    status: Status
    counterexample: Optional[dict[str, Any]] = None
    witness: Optional[dict[str, Any]] = None
    reason: Optional[str] = None


# --- SHARED PIECES ---

def _whole(u: Universe) -> Family:
    """The stack {S}."""
    return principal_filter(u.table.full, u.n)


def _syn(u: Universe) -> Family:
    return size_families(u.table).syn


def _thick(u: Universe) -> Family:
    return size_families(u.table).thick


def _ps(u: Universe) -> Family:
    return size_families(u.table).ps


def _true(u: Universe) -> bool:
    return True


def _need_stack(*names: str) -> Callable[[Universe], Optional[str]]:
    def check(u: Universe) -> Optional[str]:
        for name in names:
            if not classify(getattr(u, name)).is_stack:
                return f"{name} is not a stack"
        return None
    return check


def _need_nested(small: str, large: str) -> Callable[[Universe], Optional[str]]:
    def check(u: Universe) -> Optional[str]:
        if not getattr(u, small).issubset(getattr(u, large)):
            return f"{small} is not contained in {large}"
        return None
    return check


def _need_filter_and_ultrafilter(u: Universe) -> Optional[str]:
    if not classify(u.F).is_filter:
        return "F is not a filter"
    if not classify(u.G).is_ultrafilter:
        return "G is not an ultrafilter"
    return None


def _need_subsemigroup_base(u: Universe) -> Optional[str]:
    if not is_subsemigroup(u.table, fm.closure(u.F)):
        return "base of F is not a subsemigroup"
    return None


def _need_thm_4_4(u: Universe) -> Optional[str]:
    reason = _need_subsemigroup_base(u)
    if reason:
        return reason
    if not is_subset(fm.product_of_closures(u.table, u.F, u.G), fm.closure(u.G)):
        return "base(F)·base(G) is not contained in base(G)"
    return None


def _grill_construction(u: Universe) -> bool:
    star = mesh(u.F)
    built = intersection_family(u.F, star)
    return classify(built).is_grill and u.F.issubset(built) and star.issubset(built)


def _ps_contains_factors(u: Universe) -> bool:
    ps = rel_ps_family(u.table, u.F, u.G)
    return (classify(ps).is_grill
            and rel_syn_family(u.table, u.F, u.G).issubset(ps)
            and rel_thick_family(u.table, u.F, u.G).issubset(ps))


def _min_left_all_meet(u: Universe) -> Family:
    return fm.all_of((sets_meeting(L, u.n) for L in minimal_left_ideals(u.table)), u.n)


def _min_left_one_inside(u: Universe) -> Family:
    return fm.any_of((sets_containing(L, u.n) for L in minimal_left_ideals(u.table)), u.n)


def _min_left_one_meets(u: Universe) -> Family:
    return fm.any_of((sets_meeting(L, u.n) for L in minimal_left_ideals(u.table)), u.n)


def _base_is(pred: Callable[[CayleyTable, int], bool]) -> Side:
    return lambda u: pred(u.table, fm.closure(u.F))


def _syn_of_mesh_whole(u: Universe) -> bool:
    return u.F.issubset(rel_syn_family(u.table, mesh(_whole(u)), u.F))


def _syn_of_mesh_self_whole(u: Universe) -> bool:
    return u.F.issubset(rel_syn_family(u.table, mesh(u.F), _whole(u)))


_STACK_F = _need_stack("F")

CLAIMS: dict[ClaimId, Claim] = {c.id: c for c in [
    # families on a finite set
    Claim(ClaimId.P2_4A, Scope.GROUND, Relation.IFF,
          lambda u: classify(mesh(u.F)).is_stack, _true, _STACK_F),
    Claim(ClaimId.P2_4B, Scope.GROUND, Relation.EQUAL,
          lambda u: mesh(mesh(u.F)), lambda u: u.F, _STACK_F),
    Claim(ClaimId.P2_4C, Scope.GROUND_PAIR, Relation.IFF,
          lambda u: u.F.issubset(u.G), lambda u: mesh(u.G).issubset(mesh(u.F)), _need_stack("F", "G")),
    Claim(ClaimId.P2_4D, Scope.GROUND, Relation.EQUAL,
          lambda u: u.F, lambda u: schmidt_mesh(mesh(u.F)), _STACK_F),
    Claim(ClaimId.P2_4E, Scope.GROUND, Relation.IFF,
          lambda u: classify(u.F).is_filter, lambda u: classify(mesh(u.F)).is_grill, _STACK_F),
    Claim(ClaimId.P2_4F, Scope.GROUND, Relation.IFF,
          lambda u: classify(u.F).is_ultrafilter,
          lambda u: classify(u.F).is_filter and mesh(u.F) == u.F, _STACK_F),
    Claim(ClaimId.P2_4G, Scope.GROUND_PAIR, Relation.IFF,
          lambda u: u.F.issubset(u.G), lambda u: u.G.issubset(mesh(u.F)), _need_filter_and_ultrafilter),
    Claim(ClaimId.P2_4H, Scope.GROUND, Relation.IFF, _grill_construction, _true, _STACK_F),

    # minimal left ideals and the classical notions
    Claim(ClaimId.T1_4A, Scope.TABLE, Relation.EQUAL, _syn, _min_left_all_meet),
    Claim(ClaimId.T1_4B, Scope.TABLE, Relation.EQUAL, _thick, _min_left_one_inside),
    Claim(ClaimId.T1_4C, Scope.TABLE, Relation.EQUAL, _ps, _min_left_one_meets),
    Claim(ClaimId.C2_6, Scope.TABLE, Relation.IFF, lambda u: classify(_ps(u)).is_grill, _true),
    Claim(ClaimId.C2_6_BHM, Scope.TABLE, Relation.EQUAL,
          _ps, lambda u: intersection_family(_syn(u), _thick(u))),

    # duality and monotonicity of the relative notions
    Claim(ClaimId.P3_2A, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_syn_family(u.table, u.F, u.G),
          lambda u: mesh(rel_thick_family(u.table, u.F, u.G))),
    Claim(ClaimId.P3_2B, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_syn_family(u.table, u.F, u.G),
          lambda u: schmidt_mesh(rel_thick_family(u.table, u.F, u.G))),
    Claim(ClaimId.E3_4, Scope.FILTER, Relation.SUBSET,
          _thick, lambda u: rel_thick_family(u.table, u.F, _whole(u)), track_strictness=True),
    Claim(ClaimId.P3_5A, Scope.NESTED_F, Relation.SUBSET,
          lambda u: rel_syn_family(u.table, u.H, u.G),
          lambda u: rel_syn_family(u.table, u.F, u.G), _need_nested("F", "H")),
    Claim(ClaimId.P3_5B, Scope.NESTED_G, Relation.SUBSET,
          lambda u: rel_syn_family(u.table, u.F, u.G),
          lambda u: rel_syn_family(u.table, u.F, u.H), _need_nested("G", "H")),
    Claim(ClaimId.P3_5A_PRIME, Scope.NESTED_F, Relation.SUBSET,
          lambda u: rel_thick_family(u.table, u.F, u.G),
          lambda u: rel_thick_family(u.table, u.H, u.G), _need_nested("F", "H")),
    Claim(ClaimId.P3_5B_PRIME, Scope.NESTED_G, Relation.SUBSET,
          lambda u: rel_thick_family(u.table, u.F, u.H),
          lambda u: rel_thick_family(u.table, u.F, u.G), _need_nested("G", "H")),

    # piecewise syndeticity as a composition
    Claim(ClaimId.P3_7A, Scope.TABLE, Relation.EQUAL,
          _ps, lambda u: rel_syn_family(u.table, _whole(u), _thick(u))),
    Claim(ClaimId.P3_7B, Scope.TABLE, Relation.EQUAL,
          _ps, lambda u: rel_thick_family(u.table, _syn(u), mesh(_ps(u)))),
    Claim(ClaimId.P3_7C, Scope.TABLE, Relation.EQUAL,
          lambda u: mesh(_ps(u)), lambda u: rel_thick_family(u.table, _whole(u), _thick(u))),
    Claim(ClaimId.P3_7D, Scope.TABLE, Relation.EQUAL,
          _ps, lambda u: rel_thick_family(u.table, _syn(u),
                                          rel_thick_family(u.table, _whole(u), _thick(u)))),

    # product characterizations for filters
    Claim(ClaimId.L3_8A, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_thick_family(u.table, u.F, u.G),
          lambda u: fm.thick_by_products(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8B, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_thick_family(u.table, u.F, mesh(u.G)),
          lambda u: stack_product(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8C, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_thick_family(u.table, mesh(u.F), u.G),
          lambda u: fm.meeting_product(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8D, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_thick_family(u.table, mesh(u.F), mesh(u.G)),
          lambda u: fm.some_point_product_contained(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8A_PRIME, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_syn_family(u.table, u.F, u.G),
          lambda u: fm.syn_by_products(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8B_PRIME, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_syn_family(u.table, u.F, mesh(u.G)),
          lambda u: fm.meeting_product(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8C_PRIME, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_syn_family(u.table, mesh(u.F), u.G),
          lambda u: fm.containing_product(u.table, u.F, u.G)),
    Claim(ClaimId.L3_8D_PRIME, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_syn_family(u.table, mesh(u.F), mesh(u.G)),
          lambda u: fm.every_point_product_meets(u.table, u.F, u.G)),
    Claim(ClaimId.T3_10A, Scope.FILTER_PAIR, Relation.EQUAL_FILTER,
          lambda u: rel_syn_family(u.table, mesh(u.F), u.G),
          lambda u: principal_filter(fm.product_of_closures(u.table, u.F, u.G), u.n)),
    Claim(ClaimId.T3_10B, Scope.FILTER_PAIR, Relation.EQUAL_FILTER,
          lambda u: rel_thick_family(u.table, u.F, mesh(u.G)),
          lambda u: stack_product(u.table, u.F, u.G)),
    Claim(ClaimId.T3_10_BH, Scope.FILTER_PAIR, Relation.SUBSET,
          lambda u: rel_thick_family(u.table, u.F, mesh(u.G)),
          lambda u: rel_syn_family(u.table, mesh(u.F), u.G)),
    Claim(ClaimId.T3_11, Scope.FILTER_TRIPLE, Relation.IFF,
          lambda u: is_subset(fm.product_of_closures(u.table, u.F, u.G), fm.closure(u.H)),
          lambda u: u.H.issubset(rel_syn_family(u.table, mesh(u.F), u.G))),
    Claim(ClaimId.C3_12A, Scope.FILTER, Relation.IFF,
          _base_is(is_subsemigroup), lambda u: u.F.issubset(rel_syn_family(u.table, mesh(u.F), u.F))),
    Claim(ClaimId.C3_12B, Scope.FILTER, Relation.IFF, _base_is(is_left_ideal), _syn_of_mesh_whole),
    Claim(ClaimId.C3_12C, Scope.FILTER, Relation.IFF, _base_is(is_right_ideal), _syn_of_mesh_self_whole),
    Claim(ClaimId.C3_12D, Scope.FILTER, Relation.IFF,
          lambda u: is_left_ideal(u.table, fm.closure(u.F)) and is_right_ideal(u.table, fm.closure(u.F)),
          lambda u: _syn_of_mesh_whole(u) and _syn_of_mesh_self_whole(u)),

    # relative piecewise syndeticity
    Claim(ClaimId.T4_2, Scope.FILTER_PAIR, Relation.IFF, _ps_contains_factors, _true, _need_stack("F", "G")),
    Claim(ClaimId.P4_3A, Scope.FILTER_PAIR, Relation.SUBSET,
          lambda u: rel_ps_family(u.table, u.F, u.G),
          lambda u: rel_thick_family(u.table, mesh(u.F), u.G), track_strictness=True),
    Claim(ClaimId.P4_3B, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_ps_family(u.table, u.F, mesh(u.G)),
          lambda u: rel_syn_family(u.table, u.F, mesh(u.G))),
    Claim(ClaimId.P4_3C, Scope.FILTER_PAIR, Relation.EQUAL,
          lambda u: rel_ps_family(u.table, mesh(u.F), u.G),
          lambda u: rel_thick_family(u.table, mesh(u.F), u.G)),
    Claim(ClaimId.P4_3D, Scope.FILTER_PAIR, Relation.SUBSET,
          lambda u: rel_ps_family(u.table, mesh(u.F), mesh(u.G)),
          lambda u: fm.some_point_product_meets(u.table, u.F, u.G), track_strictness=True),
    Claim(ClaimId.T4_4, Scope.FILTER_PAIR, Relation.SUBSET,
          lambda u: rel_ps_family(u.table, u.F, u.G),
          lambda u: szz_family(u.table, u.F, fm.closure(u.G)), _need_thm_4_4),
    Claim(ClaimId.C4_5, Scope.FILTER, Relation.SUBSET,
          lambda u: rel_ps_family(u.table, u.F, u.F),
          lambda u: szz_family(u.table, u.F), _need_subsemigroup_base),
]}


# --- EVALUATION ---

def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def _set_record(u: Universe, A: int, left: Family, right: Family) -> dict[str, Any]:
    return {"universe": u.payload(), "set": elements(A), "mask": A,
            "in_lhs": A in left, "in_rhs": A in right}


def evaluate(claim_id: ClaimId, u: Universe) -> Outcome:
    claim = CLAIMS[claim_id]
    if claim.precondition is not None:
        reason = claim.precondition(u)
        if reason:
            return Outcome(Status.SKIPPED, reason=reason)
    left, right = claim.lhs(u), claim.rhs(u)

    if claim.relation is Relation.IFF:
        if bool(left) == bool(right):
            return Outcome(Status.PASS)
        return Outcome(Status.FAIL, {"universe": u.payload(), "lhs": bool(left), "rhs": bool(right)})

    if claim.relation is Relation.EQUAL_FILTER and not classify(left).is_filter:
        return Outcome(Status.FAIL, {"universe": u.payload(), "lhs_is_filter": False})

    if claim.relation in (Relation.EQUAL, Relation.EQUAL_FILTER):
        diff = left.bits ^ right.bits
        if diff:
            return Outcome(Status.FAIL, _set_record(u, _lowest(diff), left, right))
        return Outcome(Status.PASS)

    extra = left.bits & ~right.bits
    if extra:
        return Outcome(Status.FAIL, _set_record(u, _lowest(extra), left, right))
    witness = None
    gap = right.bits & ~left.bits
    if claim.track_strictness and gap:
        witness = _set_record(u, _lowest(gap), left, right)
    return Outcome(Status.PASS, witness=witness)


def reverify(report: CheckReport) -> bool:
    """Recompute both sides of a failed report from its payload; True if the failure reproduces."""
    if report.status is not Status.FAIL or not report.counterexample:
        return False
    for module in (notions, semigroup, setfam):
        module.clear_caches()
    u = Universe.from_payload(report.counterexample["universe"])
    again = evaluate(report.claim, u)
    return again.status is Status.FAIL and again.counterexample == report.counterexample


# --- UNIVERSES ---

def claims_in_scope(*scopes: Scope) -> list[ClaimId]:
    return [cid for cid, c in CLAIMS.items() if c.scope in scopes]


def table_universes(claim_id: ClaimId, table: CayleyTable, filters: Sequence[Family]) -> Iterator[Universe]:
    n = table.n
    scope = CLAIMS[claim_id].scope
    if scope is Scope.TABLE:
        yield Universe(n, table)
    elif scope is Scope.FILTER:
        for F in filters:
            yield Universe(n, table, F)
    elif scope is Scope.FILTER_PAIR:
        for F, G in itertools.product(filters, repeat=2):
            yield Universe(n, table, F, G)
    elif scope is Scope.FILTER_TRIPLE:
        for F, G, H in itertools.product(filters, repeat=3):
            yield Universe(n, table, F, G, H)
    elif scope is Scope.NESTED_F:
        for F, H in itertools.product(filters, repeat=2):
            if F.issubset(H):
                for G in filters:
                    yield Universe(n, table, F, G, H)
    elif scope is Scope.NESTED_G:
        for G, H in itertools.product(filters, repeat=2):
            if G.issubset(H):
                for F in filters:
                    yield Universe(n, table, F, G, H)
    else:
        raise ValueError(f"{claim_id.value} is not a table-level claim")


def stack_universes(claim_id: ClaimId, table: CayleyTable, stacks: Sequence[Family],
                    filters: Sequence[Family]) -> Iterator[Universe]:
    """
    Pair claims over every pair of stacks; nested claims over every comparable
    pair of stacks, with the remaining family drawn from the filters.
    """
    n = table.n
    scope = CLAIMS[claim_id].scope
    if scope is Scope.FILTER_PAIR:
        for F, G in itertools.product(stacks, repeat=2):
            yield Universe(n, table, F, G)
    elif scope in (Scope.NESTED_F, Scope.NESTED_G):
        for small, big in itertools.product(stacks, repeat=2):
            if not small.issubset(big):
                continue
            for other in filters:
                if scope is Scope.NESTED_F:
                    yield Universe(n, table, small, other, big)
                else:
                    yield Universe(n, table, other, small, big)
    else:
        raise ValueError(f"{claim_id.value} has no stack-pair form")
