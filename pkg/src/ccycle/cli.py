"""ccycle command line: count | classes | euler | kl | verify | sweep."""
from __future__ import annotations

import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional

import click

from .classes import ClassMatrix, all_classes, euler_obstructions
from .kl import KLCache, kl_matrix
from .rootsys import CartanError
from .verify import (VerificationError, check_node, dumps, parse_target, requires_allow_long,
                     sweep as run_sweep, verify_irreducible)
from .weyl import count_bruhat_ideal, generate_WP, weyl_group

log = logging.getLogger("ccycle")


@dataclass
class RunConfig:
    cartan: str
    node: int
    command: str
    out: Optional[str]
    cache: str
    threads: int
    allow_long: bool = False
    csv: bool = False
    verbose: bool = False
    seed: Optional[int] = None

    def validate(self) -> None:
        check_node(self.cartan, self.node)
        if self.command != "count" and requires_allow_long(self.cartan) and not self.allow_long:
            raise VerificationError(f"{self.cartan} is a long run; pass --allow-long")

    def kl_cache_path(self) -> str:
        return os.path.join(self.cache, f"kl-{weyl_group(self.cartan).label}.jsonl")


def _emit(cfg: RunConfig, payload: dict, tables: dict | None = None, summary: str | None = None) -> None:
    text = dumps(payload) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        if cfg.csv and tables:
            stem = os.path.splitext(cfg.out)[0]
            for name, M in tables.items():
                with open(f"{stem}.{name}.csv", "w") as fh:
                    fh.write(M.to_csv())
        click.echo(summary or f"wrote {cfg.out}")
    else:
        click.echo(text, nl=False)
        if cfg.csv and tables:
            for name, M in tables.items():
                click.echo(f"# {name}")
                click.echo(M.to_csv(), nl=False)
        if summary:
            click.echo(summary, err=True)


def _progress(done: int, total: int) -> None:
    log.info("classes %d/%d", done, total)


def common(f):
    opts = [
        click.option("--cartan", required=True, help="Cartan type label, e.g. E6."),
        click.option("--node", type=int, required=True, help="Cominuscule node (Bourbaki numbering)."),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output JSON path."),
        click.option("--cache", default=".", show_default=True, help="Cache directory (CCYCLE_CACHE overrides)."),
        click.option("--threads", type=int, default=None, help="Worker processes [default: CPU count]."),
        click.option("--csv", "csv_", is_flag=True, help="Also write CSV matrices."),
        click.option("--allow-long", is_flag=True, help="Permit E7-sized runs."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(ctx, command, cartan, node, out, cache, threads, csv_, allow_long) -> RunConfig:
    cfg = RunConfig(
        cartan=cartan, node=node, command=command, out=out,
        cache=os.environ.get("CCYCLE_CACHE") or cache,
        threads=threads if threads else (os.cpu_count() or 1),
        allow_long=allow_long, csv=csv_, verbose=ctx.obj["verbose"], seed=ctx.obj["seed"],
    )
    cfg.validate()
    return cfg


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
@click.option("--seed", type=int, default=None, help="Seed for randomized choices.")
@click.pass_context
def main(ctx, verbose, seed):
    """Characteristic cycles of cominuscule Schubert varieties."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.ensure_object(dict)
    ctx.obj.update(verbose=verbose, seed=seed)


@main.command()
@common
@click.pass_context
def count(ctx, **kw):
    """|W|, |W^P| and the size of the Bruhat ideal below w_0^P."""
    cfg = _config(ctx, "count", **kw)
    W = weyl_group(cfg.cartan)
    pd = generate_WP(W, cfg.node)
    payload = {"cartan": W.label, "node": cfg.node, "order_W": W.order(),
               "size_WP": len(pd), "ideal_size": count_bruhat_ideal(pd)}
    _emit(cfg, payload, summary=f"{W.label} node {cfg.node}: |W|={payload['order_W']} "
                                f"|W^P|={payload['size_WP']} ideal={payload['ideal_size']}")


@main.command()
@common
@click.pass_context
def classes(ctx, **kw):
    """CSM classes of cells and Mather classes, as matrices."""
    cfg = _config(ctx, "classes", **kw)
    pd = generate_WP(weyl_group(cfg.cartan), cfg.node)
    csm, ma = all_classes(pd)
    C, M = ClassMatrix.from_classes(csm, pd), ClassMatrix.from_classes(ma, pd)
    payload = {"cartan": pd.group.label, "node": cfg.node, "csm": C.to_dict(), "mather": M.to_dict()}
    _emit(cfg, payload, {"csm": C, "mather": M})


@main.command()
@common
@click.pass_context
def euler(ctx, **kw):
    """Local Euler obstruction matrix."""
    cfg = _config(ctx, "euler", **kw)
    pd = generate_WP(weyl_group(cfg.cartan), cfg.node)
    csm, ma = all_classes(pd)
    E = euler_obstructions(ClassMatrix.from_classes(ma, pd), ClassMatrix.from_classes(csm, pd))
    _emit(cfg, {"cartan": pd.group.label, "node": cfg.node, "euler": E.to_dict()}, {"euler": E})


@main.command()
@common
@click.pass_context
def kl(ctx, **kw):
    """Parabolic KL polynomials on W^P and their values at 1."""
    cfg = _config(ctx, "kl", **kw)
    W = weyl_group(cfg.cartan)
    pd = generate_WP(W, cfg.node)
    cache = KLCache(W, cfg.kl_cache_path())
    if cache.warning:
        click.echo(f"warning: {cache.warning}", err=True)
    polys, at_one = kl_matrix(pd, cache)
    os.makedirs(cfg.cache, exist_ok=True)
    cache.save()
    words = pd.words()
    n = len(words)
    records = [{"w": words[j], "v": words[i], "p": list(polys[i][j].coeffs)}
               for j in range(n) for i in range(n) if polys[i][j] is not None]
    K = ClassMatrix(words, at_one)
    _emit(cfg, {"cartan": W.label, "node": cfg.node, "kl_polynomials": records,
                "kl_at_one": K.to_dict()}, {"kl_at_one": K})


@main.command()
@common
@click.pass_context
def verify(ctx, **kw):
    """Full run: is every IH characteristic cycle irreducible?"""
    cfg = _config(ctx, "verify", **kw)
    os.makedirs(cfg.cache, exist_ok=True)
    report = verify_irreducible(cfg.cartan, cfg.node, workers=cfg.threads, cache_dir=cfg.cache,
                                allow_long=cfg.allow_long, progress=_progress if cfg.verbose else None)
    tables = {name: report.matrix(name) for name in ("csm", "mather", "euler", "kl_at_one")}
    _emit(cfg, report.to_dict(), tables, report.summary())


@main.command()
@click.argument("targets", nargs=-1)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output JSON path.")
@click.option("--cache", default=".", show_default=True, help="Cache directory (CCYCLE_CACHE overrides).")
@click.option("--threads", type=int, default=None, help="Worker processes [default: CPU count].")
@click.option("--allow-long", is_flag=True, help="Permit E7-sized runs.")
@click.pass_context
def sweep(ctx, targets, out, cache, threads, allow_long):
    """verify over TARGETS such as A3:2 C2:2 E6:6."""
    for t in targets:
        parse_target(t)
    cache = os.environ.get("CCYCLE_CACHE") or cache
    os.makedirs(cache, exist_ok=True)
    res = run_sweep(targets, workers=threads or (os.cpu_count() or 1), cache_dir=cache,
                    allow_long=allow_long)
    payload = {"reports": [r.to_dict() for r in res.reports], "failures": res.failures}
    text = dumps(payload) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    for r in res.reports:
        click.echo(f"{r.cartan}:{r.node} irreducible={str(r.irreducible).lower()}", err=True)
    for f in res.failures:
        click.echo(f"{f['target']} failed: {f['error']}", err=True)
    if res.failures:
        ctx.exit(1)


def run() -> None:
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)
    except (VerificationError, CartanError, ValueError, ArithmeticError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
