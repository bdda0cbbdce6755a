from __future__ import annotations

from typing import Literal

import pandas as pd
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src import config
from src.core.semigroup import CayleyTable, enumerate_semigroups
from src.theorems.checks import STACK_LAYER, check_prop_2_4, check_stack_pairs, check_table
from src.theorems.claims import CLAIMS, Scope, reverify
from src.theorems.reports import CheckReport, ClaimId, Status, SuiteResult, SuiteSummary
from src.utils.log import get_logger
from src.utils.profiling import timed

logger = get_logger("SUITE")

_GROUND = (Scope.GROUND, Scope.GROUND_PAIR)


class SuiteConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_order: int = Field(2, ge=1, le=config.MAX_ENUM_ORDER_ISO)
    dedupe: Literal["none", "iso"] = "none"
    claims: list[str] = Field(default_factory=lambda: ["all"], min_length=1)
    jobs: int = Field(default_factory=lambda: config.DEFAULT_JOBS, ge=1)
    prop_2_4_n: int = Field(config.PROP_2_4_MAX_N, ge=1, le=config.PROP_2_4_MAX_N)
    brute_force_n: int = Field(config.BRUTE_FORCE_N_DEFAULT, ge=1, le=config.MAX_BRUTE_FORCE_N)
    # P3_2, P3_5 and T4_2 again over all stack pairs, iso tables up to STACK_LAYER_MAX_ORDER
    stack_layer: bool = True

    @field_validator("claims")
    @classmethod
    def _known_claims(cls, v: list[str]) -> list[str]:
        # an entry is "all", an exact id, or a prefix such as "L3_8"
        for item in v:
            if item != "all" and not any(c.value.startswith(item) for c in ClaimId):
                raise ValueError(f"unknown claim {item!r}")
        return v

    @model_validator(mode="after")
    def _raw_order_cap(self) -> "SuiteConfig":
        if self.dedupe == "none" and self.max_order > config.MAX_ENUM_ORDER_RAW:
            raise ValueError(f"max_order {self.max_order} needs dedupe='iso' "
                             f"(raw enumeration stops at {config.MAX_ENUM_ORDER_RAW})")
        return self

    def describe(self) -> str:
        return (f"suite max_order={self.max_order} dedupe={self.dedupe} "
                f"claims={','.join(self.claims)} jobs={self.jobs}")

    def selected(self) -> list[ClaimId]:
        if "all" in self.claims:
            return list(ClaimId)
        return [c for c in ClaimId if any(c.value.startswith(item) for item in self.claims)]


def _tables(cfg: SuiteConfig) -> list[CayleyTable]:
    tables = []
    for order in range(1, cfg.max_order + 1):
        batch = list(enumerate_semigroups(order, cfg.dedupe))
        logger.info(f"order {order}: {len(batch)} tables")
        tables.extend(batch)
    return tables


def summarize(reports: list[CheckReport], tables: int, cfg: SuiteConfig, elapsed: float) -> SuiteSummary:
    frame = pd.DataFrame([{"claim": r.claim.value, "status": r.status.value} for r in reports],
                         columns=["claim", "status"])
    tally: dict[str, dict[str, int]] = {}
    if not frame.empty:
        counts = (frame.groupby(["claim", "status"]).size()
                  .unstack(fill_value=0)
                  .reindex(columns=[s.value for s in Status], fill_value=0))
        tally = {claim: {k: int(v) for k, v in row.items()} for claim, row in counts.iterrows()}

    first_fail, first_witness = {}, {}
    for r in reports:
        key = r.claim.value
        if r.status is Status.FAIL and key not in first_fail:
            first_fail[key] = r.counterexample
        if r.witness is not None and key not in first_witness:
            first_witness[key] = r.witness

    return SuiteSummary(
        claims=tally,
        first_counterexample=first_fail,
        first_witness=first_witness,
        tables=tables,
        reports=len(reports),
        exit_status=1 if first_fail else 0,
        config=cfg.model_dump(mode="json", exclude={"jobs"}),
        meta={"elapsed": elapsed, "jobs": float(cfg.jobs)},
    )


def run_suite(cfg: SuiteConfig) -> SuiteResult:
    selected = cfg.selected()
    ground = [c for c in selected if CLAIMS[c].scope in _GROUND]
    per_table = [c for c in selected if CLAIMS[c].scope not in _GROUND]
    reports: list[CheckReport] = []

    with timed() as clock:
        if ground:
            reports += check_prop_2_4(cfg.prop_2_4_n, cfg.brute_force_n, ground)
        tables = _tables(cfg) if per_table else []
        if tables:
            logger.info(f"checking {len(per_table)} claims over {len(tables)} tables, jobs={cfg.jobs}")
            batches = Parallel(n_jobs=cfg.jobs)(delayed(check_table)(t, per_table) for t in tables)
            for batch in batches:
                reports.extend(batch)
        stacked = [c for c in per_table if c in STACK_LAYER] if cfg.stack_layer else []
        if stacked:
            layer = [t for order in range(1, min(cfg.max_order, config.STACK_LAYER_MAX_ORDER) + 1)
                     for t in enumerate_semigroups(order, "iso")]
            logger.info(f"stack-pair layer: {len(stacked)} claims over {len(layer)} tables")
            batches = Parallel(n_jobs=cfg.jobs)(delayed(check_stack_pairs)(t, stacked) for t in layer)
            for batch in batches:
                reports.extend(batch)

    for r in reports:
        if r.status is Status.FAIL:
            state = "reproduces" if reverify(r) else "does NOT reproduce"
            logger.warning(f"{r.claim.value} counterexample {state} on recomputation")

    summary = summarize(reports, len(tables), cfg, clock.elapsed)
    logger.info(f"{len(reports)} reports, exit status {summary.exit_status}, {clock.elapsed:.2f}s")
    return SuiteResult(reports=reports, summary=summary)
