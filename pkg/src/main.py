"""
sgsize command line: every subcommand prints JSON on stdout; diagnostics go to stderr.

Exit codes: 0 ok / all pass, 1 violation or failing claim, 2 bad input or flags.
"""
import sys
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional

import click
import typer
from pydantic import ValidationError

from src import config
from src.core.notions import (
    is_piecewise_syndetic,
    is_rel_syndetic,
    is_rel_thick,
    is_syndetic,
    is_thick,
    rel_ps_family,
    rel_syn_family,
    rel_thick_family,
    size_families,
    szz_witness,
)
from src.core.semigroup import CayleyTable, enumerate_semigroups, validate as validate_table
from src.core.setfam import Family, check_mask, from_elements, principal_filter
from src.ingestion.loader import load_family, load_table, load_window, save_tables_jsonl, table_record
from src.natwin.analysis import (
    embedding_shift,
    example_3_4_probe,
    finite_embeddable,
    find_ap,
    gap_bound_report,
    max_block_run,
    ps_witness,
)
from src.theorems.reports import dump_json
from src.theorems.search import search_question_4_6
from src.theorems.suite import SuiteConfig, run_suite
from src.utils.log import get_logger, setup_logging
from src.utils.profiling import profile_performance

logger = get_logger("CLI")

app = typer.Typer(add_completion=False, no_args_is_help=True,
                  help="Finite-model checks for size notions in semigroups.")


class Notion(str, Enum):
    SYNDETIC = "syndetic"
    THICK = "thick"
    PS = "ps"
    REL_SYN = "rel-syn"
    REL_THICK = "rel-thick"
    REL_PS = "rel-ps"
    SZZ_PS = "szz-ps"


class Dedupe(str, Enum):
    NONE = "none"
    ISO = "iso"


class WindowOp(str, Enum):
    GAP_BOUND = "gap-bound"
    RUNS = "runs"
    PS_WITNESS = "ps-witness"
    AP = "ap"
    EMBED = "embed"
    EXAMPLE_3_4 = "example-3-4"


@contextmanager
def _reported_errors() -> Iterator[None]:
    """Input problems become one line on stderr and exit code 2."""
    try:
        yield
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "config"
        typer.echo(f"error: {where}: {first['msg']}", err=True)
        raise typer.Exit(2)
    except (ValueError, FileNotFoundError) as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(2)


def _emit(payload) -> None:
    typer.echo(dump_json(payload))


def _parse_set(text: str, n: int) -> int:
    text = text.strip()
    if not text:
        return 0
    try:
        mask = from_elements(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"--set expects comma-separated element indices, got {text!r}") from None
    check_mask(mask, n)
    return mask


def _stack_or_whole(path: Optional[Path], table: CayleyTable) -> Family:
    if path is None:
        return principal_filter(table.full, table.n)
    return load_family(path, table.n)


@app.callback()
def _root(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress to stderr.")):
    setup_logging("INFO" if verbose else None)


@app.command()
def validate(table_file: Path = typer.Argument(..., help="Cayley table file.")):
    """Check associativity; report the least violating triple."""
    with _reported_errors():
        result = validate_table(load_table(table_file))
    _emit({"ok": result.ok, "violation": list(result.violation) if result.violation else None})
    if not result.ok:
        raise typer.Exit(1)


@app.command()
def classify(
    table_file: Path = typer.Argument(...),
    set_: str = typer.Option(..., "--set", help="Comma-separated 0-based elements, e.g. 0,2."),
    notion: Notion = typer.Option(..., "--notion"),
    filter_f: Optional[Path] = typer.Option(None, "--filter-f", help="Family F as JSON (default {S})."),
    filter_g: Optional[Path] = typer.Option(None, "--filter-g", help="Family G as JSON (default {S})."),
):
    """Decide one size notion for one set."""
    with _reported_errors():
        table = load_table(table_file)
        A = _parse_set(set_, table.n)
        out = {"notion": notion.value, "set": [x for x in range(table.n) if A >> x & 1]}
        if notion in (Notion.REL_SYN, Notion.REL_THICK, Notion.REL_PS, Notion.SZZ_PS):
            F = _stack_or_whole(filter_f, table)
            G = _stack_or_whole(filter_g, table)
        if notion is Notion.SYNDETIC:
            out["member"] = is_syndetic(table, A)
        elif notion is Notion.THICK:
            out["member"] = is_thick(table, A)
        elif notion is Notion.PS:
            out["member"] = is_piecewise_syndetic(table, A)
        elif notion is Notion.REL_SYN:
            out["member"] = is_rel_syndetic(table, A, F, G)
        elif notion is Notion.REL_THICK:
            out["member"] = is_rel_thick(table, A, F, G)
        elif notion is Notion.REL_PS:
            out["member"] = A in rel_ps_family(table, F, G)
        else:
            y = szz_witness(table, A, F)
            out["member"] = y is not None
            out["y"] = y
    _emit(out)


@app.command()
def families(
    table_file: Path = typer.Argument(...),
    f: Optional[Path] = typer.Option(None, "--f", help="Family F as JSON."),
    g: Optional[Path] = typer.Option(None, "--g", help="Family G as JSON."),
):
    """Syn, Thick and PS as lists of sets; relative to (F,G) when either is given."""
    with _reported_errors():
        table = load_table(table_file)
        if f is None and g is None:
            fams = size_families(table)
            syn, thick, ps = fams.syn, fams.thick, fams.ps
        else:
            F, G = _stack_or_whole(f, table), _stack_or_whole(g, table)
            syn = rel_syn_family(table, F, G)
            thick = rel_thick_family(table, F, G)
            ps = rel_ps_family(table, F, G)
    _emit({"relative": f is not None or g is not None,
           "syn": syn.sets(), "thick": thick.sets(), "ps": ps.sets()})


@app.command()
def check(
    max_order: int = typer.Option(2, "--max-order"),
    claims: str = typer.Option("all", "--claims", help="'all' or comma-separated ids / prefixes."),
    dedupe: Dedupe = typer.Option(Dedupe.NONE, "--dedupe"),
    jobs: int = typer.Option(config.DEFAULT_JOBS, "--jobs"),
    out: Optional[Path] = typer.Option(None, "--out", help="JSONL file, one report per line."),
    stable: bool = typer.Option(False, "--stable", help="Drop timings for byte comparison."),
    summary: Optional[Path] = typer.Option(None, "--summary"),
    profile: Optional[Path] = typer.Option(None, "--profile", help="Write cProfile stats here."),
):
    """Run the claim suite over enumerated semigroups."""
    with _reported_errors():
        cfg = SuiteConfig(max_order=max_order, dedupe=dedupe.value, jobs=jobs,
                          claims=[c.strip() for c in claims.split(",") if c.strip()])
    logger.info(f"suite config: {cfg.model_dump()}")
    runner = (profile_performance(str(profile), context=SuiteConfig.describe)(run_suite)
              if profile else run_suite)
    result = runner(cfg)
    if out is not None:
        with open(out, "w") as fh:
            for report in result.reports:
                fh.write(report.to_json(stable) + "\n")
    text = result.summary.to_json(stable)
    if summary is not None:
        summary.write_text(text + "\n")
    typer.echo(text)
    if result.summary.exit_status:
        raise typer.Exit(result.summary.exit_status)


@app.command("enumerate")
def enumerate_tables(
    order: int = typer.Option(..., "--order"),
    dedupe: Dedupe = typer.Option(Dedupe.NONE, "--dedupe"),
    out: Optional[Path] = typer.Option(None, "--out", help="JSONL file; stdout when omitted."),
):
    """All associative tables of one order."""
    with _reported_errors():
        tables = enumerate_semigroups(order, dedupe.value)
        if out is None:
            for table in tables:
                _emit(table_record(table))
            return
        count = save_tables_jsonl(tables, out)
    _emit({"order": order, "dedupe": dedupe.value, "count": count})


@app.command("search-q46")
def search_q46(
    max_order: int = typer.Option(..., "--max-order"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Cap on (table, F) universes."),
    out: Optional[Path] = typer.Option(None, "--out"),
    stable: bool = typer.Option(False, "--stable"),
):
    """Look for a finite set meeting the SZZ condition for F outside PS(F,F)."""
    with _reported_errors():
        report = search_question_4_6(max_order, budget)
    text = report.to_json(stable)
    if out is not None:
        out.write_text(text + "\n")
    typer.echo(text)


@app.command()
def natwin(
    in_: Path = typer.Option(..., "--in", help="Window set (.rle or .bin)."),
    op: WindowOp = typer.Option(..., "--op"),
    k: Optional[int] = typer.Option(None, "--k"),
    b: Optional[int] = typer.Option(None, "--b"),
    length: Optional[int] = typer.Option(None, "--L"),
    m: Optional[int] = typer.Option(None, "--m"),
    other: Optional[Path] = typer.Option(None, "--other", help="Second window set for --op embed."),
    n: Optional[int] = typer.Option(None, "--n", help="Horizon for --op example-3-4."),
):
    """Window scans over a set of positive integers."""

    def need(value, flag):
        if value is None:
            raise ValueError(f"--op {op.value} needs {flag}")
        return value

    with _reported_errors():
        W = load_window(in_)
        scope = f"within [1,{W.horizon}]"
        if op is WindowOp.GAP_BOUND:
            out = gap_bound_report(W)
        elif op is WindowOp.RUNS:
            out = {"runs": [list(r) for r in W.runs()], "max_run": max_block_run(W), "scope": scope}
        elif op is WindowOp.PS_WITNESS:
            hit = ps_witness(W, need(b, "--b"), need(length, "--L"))
            out = {"b": b, "L": length, "interval": list(hit) if hit else None, "scope": scope}
        elif op is WindowOp.AP:
            hit = find_ap(W, need(k, "--k"))
            out = {"a": hit[0], "d": hit[1]} if hit else {"a": None, "d": None}
        elif op is WindowOp.EMBED:
            B = load_window(need(other, "--other"))
            m = need(m, "--m")
            prefix = [int(x) for x in W.members if x <= m]
            out = {"embeddable": finite_embeddable(W, B, m), "m": m,
                   "shift": embedding_shift(prefix, B), "scope": f"within [1,{B.horizon}]"}
        else:
            out = example_3_4_probe(n if n is not None else W.horizon, need(m, "--m"))
    _emit(out)


def main(argv: Optional[list[str]] = None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    command = typer.main.get_command(app)
    try:
        rv = command.main(args=args, prog_name="sgsize", standalone_mode=False)
    except click.ClickException as e:
        typer.echo(f"error: {e.format_message()}", err=True)
        return 2
    except click.exceptions.Abort:
        return 130
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
