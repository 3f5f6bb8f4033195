"""Command line front end.

Exit codes: 0 success, 2 disagreement or failed check, 64 usage error,
65 oracle cap exceeded.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from . import asymptotics as asy
from .enumerate import (
    DEFAULT_CAP,
    TYPES,
    OracleCapExceeded,
    crosscheck,
    parity_defects,
    phi_closed,
    phi_oracle,
    table,
    table_footnotes,
)
from .numtheory import DomainError
from .tilings import TILINGS_ENV, V0, builtin_specs, validate
from .tilings.io import SchemaError

EXIT_OK = 0
EXIT_DISAGREE = 2
EXIT_USAGE = 64
EXIT_CAP = 65

FORMATS = click.Choice(["text", "json", "csv"])


def _emit(text: str) -> None:
    click.echo(text, nl=not text.endswith("\n"))


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _parse_types(text: str) -> list[int]:
    if text.strip().lower() == "all":
        return list(TYPES)
    try:
        ells = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise click.BadParameter(f"expected a comma separated list of types or 'all', got {text!r}")
    bad = [e for e in ells if e not in TYPES]
    if bad or not ells:
        raise click.BadParameter(f"types must lie in 1..27, got {text!r}")
    return ells


def _specs(ctx: click.Context):
    try:
        return builtin_specs(ctx.obj["tilings"])
    except (SchemaError, OSError) as exc:
        raise click.UsageError(f"cannot load tilings: {exc}")


@click.group()
@click.option("--tilings", type=click.Path(exists=True, file_okay=False), envvar=TILINGS_ENV,
              help="Directory of E<id>.json files overriding the built-in tilings.")
@click.pass_context
def cli(ctx: click.Context, tilings: str | None) -> None:
    ctx.ensure_object(dict)
    ctx.obj["tilings"] = tilings


@cli.command("count")
@click.option("--type", "ell", type=click.IntRange(1, 27), required=True)
@click.option("--vertices", "v", type=click.IntRange(min=1), required=True)
@click.option("--oracle", is_flag=True, help="Also run the orbit oracle.")
@click.option("--strict", is_flag=True, help="Exit 2 when closed form and oracle disagree.")
@click.option("--published", is_flag=True, help="Use the published formula even where it is overruled.")
@click.option("--cap", type=click.IntRange(min=1), default=DEFAULT_CAP, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.pass_context
def cmd_count(ctx, ell, v, oracle, strict, published, cap, fmt):
    """Number of 2-uniform maps of a type with a given vertex count."""
    closed = phi_closed(ell, v, published=published)
    res = None
    if oracle:
        try:
            res = phi_oracle(ell, v, cap=cap, specs=_specs(ctx))
        except OracleCapExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            return EXIT_CAP
        res.count_closed = closed
    if fmt == "json":
        payload = res.to_dict() if res else {"type": ell, "vertices": v, "count_closed": closed}
        _emit(_json(payload))
    elif fmt == "csv":
        row = [ell, v, closed, res.count_oracle if res else "", res.agreement if res else ""]
        _emit(_csv(["type", "vertices", "count_closed", "count_oracle", "agreement"], [row]))
    else:
        _emit(f"Phi_{ell}({v}) = {closed}")
        if res:
            verdict = "agree" if res.agreement else "DISAGREE"
            _emit(f"oracle: {res.count_oracle} ({verdict})")
    if strict and res is not None and not res.agreement:
        return EXIT_DISAGREE
    return EXIT_OK


@cli.command("list")
@click.option("--type", "ell", type=click.IntRange(1, 27), required=True)
@click.option("--vertices", "v", type=click.IntRange(min=1), required=True)
@click.option("--cap", type=click.IntRange(min=1), default=DEFAULT_CAP, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.pass_context
def cmd_list(ctx, ell, v, cap, fmt):
    """Class representatives of the 2-uniform maps, as HNF triples [a,b,d]."""
    try:
        res = phi_oracle(ell, v, cap=cap, specs=_specs(ctx))
    except OracleCapExceeded as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CAP
    if fmt == "json":
        _emit(_json(res.to_dict()))
    elif fmt == "csv":
        rows = [[M.a, M.b, M.d, " ".join(labels)] for M, labels in res.representatives]
        _emit(_csv(["a", "b", "d", "isotropy"], rows))
    else:
        for M, labels in res.representatives:
            _emit(f"[{M.a},{M.b},{M.d}]  isotropy: {' '.join(labels)}")
        _emit(f"{len(res.representatives)} map(s)")
    return EXIT_OK


def _table_text(tab) -> str:
    cols = list(tab)
    rows = max(len(c) for c in tab.values())
    width = 12
    head = "".join(f"{'v':>5} {'Phi_' + str(ell):>{width - 6}}|" for ell in cols)
    lines = [head, "-" * len(head)]
    for k in range(rows):
        parts = []
        for ell in cols:
            c = tab[ell][k]
            mark = "*" if c.footnoted else " "
            parts.append(f"{c.v:>5} {str(c.value) + mark:>{width - 6}}|")
        lines.append("".join(parts))
    return "\n".join(lines)


@cli.command("table")
@click.option("--rows", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--types", "types_", default="all", show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.option("--parallel", type=click.IntRange(min=1), default=None, help="Accepted for symmetry with verify.")
def cmd_table(rows, types_, fmt, parallel):
    """Phi at the first multiples of v0, with cells overruled by the oracle marked."""
    tab = table(_parse_types(types_), rows)
    notes = table_footnotes(tab)
    if fmt == "json":
        payload = {
            "columns": [
                {"type": ell, "cells": [
                    {"v": c.v, "phi": c.value, "published": c.published, "footnoted": c.footnoted}
                    for c in cells]}
                for ell, cells in tab.items()
            ],
            "footnotes": notes,
        }
        _emit(_json(payload))
    elif fmt == "csv":
        out = [[ell, c.v, c.value, "" if c.published is None else c.published, c.footnoted]
               for ell, cells in tab.items() for c in cells]
        _emit(_csv(["type", "v", "phi", "published", "footnoted"], out))
    else:
        # chunks of nine columns keep lines readable
        ells = list(tab)
        blocks = [_table_text({e: tab[e] for e in ells[i:i + 9]}) for i in range(0, len(ells), 9)]
        _emit("\n\n".join(blocks))
        if notes:
            _emit("")
            for note in notes:
                _emit(f"* {note}")
    return EXIT_OK


@cli.command("verify")
@click.option("--max-sheets", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--types", "types_", default="all", show_default=True)
@click.option("--parity-range", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--parallel", type=click.IntRange(min=1), default=None)
@click.option("--cap", type=click.IntRange(min=1), default=DEFAULT_CAP, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def cmd_verify(ctx, max_sheets, types_, parity_range, parallel, cap, fmt):
    """Compare every closed form with the orbit oracle."""
    _specs(ctx)
    rep = crosscheck(max_sheets, _parse_types(types_), parallel=parallel, cap=cap,
                     tilings_dir=ctx.obj["tilings"])
    shipped_defects = parity_defects(parity_range, published=False)
    published_defects = parity_defects(parity_range, published=True)
    if fmt == "json":
        d = rep.to_dict()
        d["parity"] = {"range": parity_range, "shipped_defects": shipped_defects,
                       "published_defects": published_defects}
        d["ok"] = rep.ok and not shipped_defects
        _emit(_json(d))
    else:
        _emit(f"checked {rep.checked} (type, sheets) pairs up to {max_sheets} sheets")
        if rep.skipped:
            _emit(f"skipped over cap: {len(rep.skipped)}")
        _emit(f"discrepancies: {len(rep.discrepancies)}")
        for d in rep.discrepancies:
            reps = " ".join(str(M) for M, _ in d.representatives)
            tag = " (whitelisted)" if d.whitelisted else ""
            _emit(f"  type {d.ell} n={d.n}: closed {d.count_closed} oracle {d.count_oracle}{tag} [{reps}]")
        _emit(f"published forms overruled by the oracle: {len(rep.overruled)}")
        for o in rep.overruled:
            _emit(f"  type {o['type']} n={o['sheets']}: published {o['published_form']} oracle {o['count_oracle']}")
        _emit(f"published table cells overruled by the oracle: {len(rep.table_cells)}")
        for c in rep.table_cells:
            _emit(f"  Phi_{c['type']}({c['vertices']}): published {c['published']} oracle {c['count_oracle']}")
        _emit(f"published forms with parity defects: {len(rep.defects)} within the oracle range, "
              f"{len(published_defects)} for n <= {parity_range}")
        for dd in rep.defects:
            _emit(f"  type {dd['type']} n={dd['sheets']}: {dd['numerator']}/{dd['denominator']}")
        _emit(f"shipped forms with parity defects for n <= {parity_range}: {len(shipped_defects)}")
        _emit("OK" if rep.ok and not shipped_defects else "FAILED")
    return EXIT_OK if rep.ok and not shipped_defects else EXIT_DISAGREE


@cli.command("validate-tilings")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def cmd_validate_tilings(ctx, fmt):
    """Run the self-checks on every tiling."""
    reports = [validate(s) for s in _specs(ctx)]
    passed = sum(r.passed for r in reports)
    if fmt == "json":
        _emit(_json([
            {"id": r.spec_id, "passed": r.passed, "orbit_count": r.orbit_count,
             "checks": {c.name: c.problems for c in r.checks}}
            for r in reports
        ]))
    else:
        for r in reports:
            _emit(r.summary())
            for c in r.checks:
                for p in c.problems:
                    _emit(f"    {c.name}: {p}")
        _emit(f"{passed}/{len(reports)} pass")
    return EXIT_OK if passed == len(reports) else EXIT_DISAGREE


@cli.command("asymptotics")
@click.option("--type", "ell", type=click.IntRange(1, 27), required=True)
@click.option("--max-v", type=click.IntRange(min=1), default=10**4, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text")
def cmd_asymptotics(ell, max_v, fmt):
    """Phi against its growth bound at sample vertex counts."""
    try:
        rep = asy.growth_report(ell, max_v=max_v)
    except DomainError as exc:
        raise click.BadParameter(str(exc), param_hint="--max-v")
    if fmt == "json":
        _emit(_json(rep.to_dict()))
    elif fmt == "csv":
        _emit(rep.to_csv())
    else:
        _emit(f"type {ell}, bound {rep.bound_name}, {rep.formula}")
        _emit(f"{'v':>8} {'phi':>8} {'bound':>14} {'ratio':>10}")
        for v, p, b, r in rep.samples:
            _emit(f"{v:>8} {p:>8} {b:>14.4f} {r:>10.5f}")
        if rep.exceed_search is not None:
            s = rep.exceed_search
            found = f"found at v={s['v']} (phi={s['phi']})" if s["found"] else "not found"
            _emit(f"Phi > v within v <= {s['scan_limit']}: {found}")
        for note in rep.notes:
            _emit(f"note: {note}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="toromaps", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
