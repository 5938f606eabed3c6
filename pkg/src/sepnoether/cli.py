"""Command-line front end: list, beta, betasep, witness, verify-all."""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import click

from . import catalog, invar, septool
from .ffield import FieldError, PrimeField, is_prime
from .grp import GroupError
from .mpoly import format_polynomial

FORMAT_VERSION = 1


class PreconditionFailed(Exception):
    pass


@dataclass
class RunConfig:
    prime: str = "auto"
    cap: int | None = None
    subset_size: int | None = None
    fmt: str = "human"
    jobs: int = 1
    out: str | None = None


def resolve_field(entry: catalog.CatalogEntry, prime: str | int | None) -> PrimeField:
    if prime in (None, "auto"):
        return PrimeField(entry.default_prime())
    p = int(prime)
    if not is_prime(p):
        raise PreconditionFailed(f"{p} is not prime")
    if (p - 1) % entry.order:
        raise PreconditionFailed(f"p = {p} is not 1 mod |G| = {entry.order}")
    if p <= (entry.maxdim - 1) * entry.order:
        raise PreconditionFailed(f"p = {p} must exceed (maxdim - 1)|G| = {(entry.maxdim - 1) * entry.order}")
    return PrimeField(p)


# ------------------------------------------------------------------ checks

def check_table_row(key: str, prime=None, subset_size=None, progress=None) -> dict:
    """Both directions for one table group: witness lower bound and radical upper bound."""
    entry = catalog.get(key)
    built = entry.build(resolve_field(entry, prime))
    rep = septool.betasep_group(entry.key, built.group, built.irreducibles, built.witnesses,
                                subset_size=subset_size, progress=progress)
    lower_ok = rep.lower_bound is None or rep.lower_bound == entry.betasep
    ok = rep.value == entry.betasep and lower_ok
    return {"id": entry.key, "name": entry.name, "prime": built.field.p, "expected_betasep": entry.betasep,
            "betasep": rep.value, "lower_bound": rep.lower_bound, "witness": rep.witness,
            "lower_source": "witness" if rep.lower_bound is not None else entry.source,
            "status": "PASS" if ok else "FAIL", "report": rep.as_dict()}


def check_family_member(key: str, prime=None, group_level: bool = True) -> dict:
    """Witness lower bound, beta and radical beta_sep on the witness module, Davenport where relevant.

    With group_level the subset search over irreducibles is run as well.
    """
    entry = catalog.get(key)
    built = entry.build(resolve_field(entry, prime))
    wp = built.witnesses[0]
    cert = septool.verify_witness(wp)
    gs = invar.minimal_generators(wp.module)
    rad = septool.betasep_via_radical(wp.module, gs)
    row = {"id": entry.key, "name": entry.name, "prime": built.field.p,
           "expected_beta": entry.beta, "expected_betasep": entry.betasep,
           "lower_bound": cert.degree, "beta_witness_module": gs.beta,
           "betasep_witness_module": rad.value, "witness_certificate": cert.as_dict(),
           "radical_certificate": rad.certificate.as_dict()}
    ok = cert.degree == entry.betasep == rad.value and gs.beta == entry.beta
    row["betasep"] = None
    if group_level:
        rep = septool.betasep_group(entry.key, built.group, built.irreducibles, built.witnesses)
        row["betasep"] = rep.value
        row["report"] = rep.as_dict()
        ok = ok and rep.value == entry.betasep
    if entry.family == "d2nxc2":
        n = entry.order // 4
        d = septool.davenport([n, 2])
        row["davenport"] = d
        ok = ok and d == n + 1
    row["status"] = "PASS" if ok else "FAIL"
    return row


FAMILY_CHECKS = ("dic:8", "dic:12", "dic:16", "ic2:m:16", "ic2:sd:16", "ic2:d:16", "d2nxc2:8", "d2nxc2:12")


def _run_item(args):
    kind, key, prime, subset_size = args
    if kind == "table":
        return check_table_row(key, prime, subset_size)
    return check_family_member(key, prime)


# --------------------------------------------------------------- rendering

def _dump(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2)
    if fmt == "tsv":
        rows = data.get("rows", [data])
        cols = [c for c in rows[0] if not isinstance(rows[0][c], (dict, list))] if rows else []
        lines = ["\t".join(cols)]
        for r in rows:
            lines.append("\t".join(str(r.get(c, "")) for c in cols))
        return "\n".join(lines)
    return _human(data)


def _human(data) -> str:
    lines = []
    if "rows" in data:
        for r in data["rows"]:
            flat = {k: v for k, v in r.items() if not isinstance(v, (dict, list))}
            lines.append("  ".join(f"{k}={v}" for k, v in flat.items()))
        for k, v in data.items():
            if k != "rows" and not isinstance(v, (dict, list)):
                lines.append(f"{k}: {v}")
        return "\n".join(lines)
    for k, v in data.items():
        if isinstance(v, list) and v and not isinstance(v[0], (dict, list)):
            lines.append(f"{k}: {', '.join(map(str, v))}")
        elif not isinstance(v, (dict, list)):
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _emit(data: dict, cfg: RunConfig):
    data = {"version": FORMAT_VERSION, **data}
    text = _dump(data, cfg.fmt)
    click.echo(text)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


def _guard(fn):
    """Map precondition problems to exit 2 and unexpected errors to exit 1."""
    def wrapper(*a, **kw):
        try:
            return fn(*a, **kw)
        except (PreconditionFailed, catalog.UnknownEntry, catalog.RootUnavailable, catalog.BadParameter,
                FieldError, GroupError, septool.PrimeTooSmall, septool.IrreducibleListUnverified) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)
        except (septool.OrbitCollision, septool.ClaimMismatch) as e:
            click.echo(f"claim failed: {e}", err=True)
            sys.exit(1)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _common(f):
    f = click.option("--prime", default="auto", show_default=True, help="prime modulus or 'auto'")(f)
    f = click.option("--cap", type=int, default=None, help="degree cap")(f)
    f = click.option("--subset-size", type=int, default=None, help="override mu(G)+1")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "tsv", "human"]), default="human",
                     show_default=True)(f)
    f = click.option("--jobs", type=int, default=1, show_default=True, help="worker processes")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help="write JSON here")(f)
    return f


# -------------------------------------------------------------- commands

@click.group()
def main():
    """Noether numbers and separating Noether numbers of small finite groups over F_p."""


@main.command("list")
@click.option("--family", default=None, help="describe a parameterized family")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv", "human"]), default="human")
def cmd_list(family, fmt):
    """List catalogued groups with expected values."""
    if family:
        if family not in catalog.FAMILIES:
            click.echo(f"error: unknown family {family!r}", err=True)
            sys.exit(2)
        members = [e for e in catalog.entries() if e.family == family]
        data = {"family": family, "description": catalog.FAMILIES[family],
                "rows": [_entry_row(e) for e in members]}
    else:
        data = {"rows": [_entry_row(e) for e in catalog.entries()],
                "families": sorted(catalog.FAMILIES)}
    _emit(data, RunConfig(fmt=fmt))


def _entry_row(e: catalog.CatalogEntry) -> dict:
    return {"id": e.key, "name": e.name, "order": e.order, "beta": e.beta, "betasep": e.betasep,
            "family": e.family or "", "source": e.source, "prime": e.default_prime()}


@main.command("beta")
@click.argument("group")
@click.option("--module", "selector", required=True, help="module name or '+'-joined block labels")
@_common
@_guard
def cmd_beta(group, selector, prime, cap, subset_size, fmt, jobs, out):
    """Minimal generators and beta(G, V)."""
    cfg = RunConfig(prime, cap, subset_size, fmt, jobs, out)
    entry = catalog.get(group)
    built = entry.build(resolve_field(entry, prime))
    mod = built.module(selector)
    gs = invar.minimal_generators(mod, cap)
    z = invar.central_sign(mod)
    data = {"group": entry.key, "module": mod.describe(), "prime": built.field.p, "cap": gs.cap,
            "beta": gs.beta, "degrees": gs.degrees,
            "generators": [format_polynomial(f) for f in gs.polynomials()]}
    if z is not None:
        data["parity"] = f"{mod.group.word_of(z)} acts by -1: all invariant degrees are even"
    if gs.beta > entry.order:
        raise AssertionError("Noether bound violated")
    _emit(data, cfg)


@main.command("betasep")
@click.argument("group")
@_common
@_guard
def cmd_betasep(group, prime, cap, subset_size, fmt, jobs, out):
    """beta_sep over (mu(G)+1)-subsets of irreducibles, with the witness lower bound."""
    cfg = RunConfig(prime, cap, subset_size, fmt, jobs, out)
    entry = catalog.get(group)
    if entry.family in ("ic2", "d2nxc2"):
        row = check_family_member(entry.key, prime)
    else:
        row = check_table_row(entry.key, prime, subset_size)
    _emit(row, cfg)
    sys.exit(0 if row["status"] == "PASS" else 1)


@main.command("witness")
@click.argument("group")
@_common
@_guard
def cmd_witness(group, prime, cap, subset_size, fmt, jobs, out):
    """Verify the catalogued witness pairs (lower bounds)."""
    cfg = RunConfig(prime, cap, subset_size, fmt, jobs, out)
    entry = catalog.get(group)
    built = entry.build(resolve_field(entry, prime))
    certs = []
    for wp in built.witnesses:
        c = septool.verify_witness(wp, cap)
        certs.append({"name": wp.name, "degree": c.degree, "invariant": c.invariant,
                      "certificate": c.as_dict()})
    data = {"group": entry.key, "prime": built.field.p, "rows": certs}
    _emit(data, cfg)


@main.command("verify-all")
@click.option("--only", multiple=True, help="restrict to these ids")
@click.option("--no-families", is_flag=True, help="table rows only")
@_common
@_guard
def cmd_verify_all(only, no_families, prime, cap, subset_size, fmt, jobs, out):
    """Check every table row (and family member) in both directions."""
    cfg = RunConfig(prime, cap, subset_size, fmt, jobs, out)
    items = [("table", e.key, prime, subset_size) for e in catalog.table_entries()]
    if not no_families:
        items += [("family", k, prime, None) for k in FAMILY_CHECKS]
    if only:
        wanted = {catalog.get(k).key for k in only}
        items = [it for it in items if catalog.get(it[1]).key in wanted]
    for it in items:
        resolve_field(catalog.get(it[1]), prime)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_run_item, items))
    else:
        rows = []
        for it in items:
            rows.append(_run_item(it))
            if fmt == "human":
                r = rows[-1]
                click.echo(f"{r['status']}  {r['id']}  expected={r['expected_betasep']}", err=True)
    failed = [r["id"] for r in rows if r["status"] != "PASS"]
    data = {"rows": rows, "failed": failed, "all_pass": not failed}
    _emit(data, cfg)
    sys.exit(0 if not failed else 1)


if __name__ == "__main__":
    main()
