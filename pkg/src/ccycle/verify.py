"""End-to-end verification for one cominuscule G/P.

Computes CSM classes of cells and Mather classes of Schubert varieties,
solves for the local Euler obstructions, evaluates the parabolic KL
polynomials at q = 1 and compares.  Everything is exact integer arithmetic;
the irreducibility verdict is a plain equality test.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .classes import (ClassMatrix, csm_cell, euler_obstructions, identity_matrix,
                      ih_multiplicities, matmul, mather)
from .homology import SchubertClass
from .kl import KLCache, kl_matrix
from .rootsys import cominuscule_nodes
from .weyl import ParabolicData, WeylElement, count_bruhat_ideal, generate_WP, weyl_group

log = logging.getLogger(__name__)

LONG_RUN_ORDER = 10 ** 6


class VerificationError(RuntimeError):
    pass


class NodeError(VerificationError, ValueError):
    pass


class LongRunError(VerificationError):
    pass


def requires_allow_long(label: str) -> bool:
    """Groups with more than a million elements (E7 and up) are gated."""
    return weyl_group(label).order() > LONG_RUN_ORDER


def check_node(label: str, node: int) -> None:
    W = weyl_group(label)
    valid = cominuscule_nodes(W.rs)
    if node not in valid:
        raise NodeError(f"node {node} is not cominuscule in {W.label}; valid nodes: {valid}")


@dataclass
class ObstructionReport:
    cartan: str
    node: int
    simply_laced: bool
    basis: List[str]
    csm: List[List[int]]
    mather: List[List[int]]
    euler: List[List[int]]
    kl_at_one: List[List[int]]
    ih_multiplicities: List[List[int]]
    kl_polynomials: List[dict]
    counts: Dict[str, int]
    irreducible: bool
    discrepancies: List[dict]
    positivity: Dict[str, dict] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    timing: Dict[str, object] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "cartan": self.cartan,
            "node": self.node,
            "simply_laced": self.simply_laced,
            "basis": self.basis,
            "matrices": {
                "csm": self.csm,
                "mather": self.mather,
                "euler": self.euler,
                "kl_at_one": self.kl_at_one,
                "ih_multiplicities": self.ih_multiplicities,
            },
            "kl_polynomials": self.kl_polynomials,
            "counts": self.counts,
            "irreducible": self.irreducible,
            "discrepancies": self.discrepancies,
            "positivity": self.positivity,
            "checks": self.checks,
        }
        if timing:
            d["timing"] = self.timing
        return d

    def to_json(self, timing: bool = True) -> str:
        return dumps(self.to_dict(timing))

    @classmethod
    def from_dict(cls, d: dict) -> "ObstructionReport":
        m = d["matrices"]
        return cls(d["cartan"], d["node"], d["simply_laced"], d["basis"], m["csm"], m["mather"],
                   m["euler"], m["kl_at_one"], m["ih_multiplicities"], d["kl_polynomials"],
                   d["counts"], d["irreducible"], d["discrepancies"], d.get("positivity", {}),
                   d.get("checks", {}), d.get("timing", {}))

    def matrix(self, name: str) -> ClassMatrix:
        return ClassMatrix(list(self.basis), getattr(self, name))

    def summary(self) -> str:
        n = len(self.basis)
        lines = [f"{self.cartan} node {self.node}: |W^P| = {n}, "
                 f"|W| = {self.counts['order_W']}, #{{v <= w_0^P}} = {self.counts['ideal_size']}"]
        verdict = "irreducible" if self.irreducible else f"REDUCIBLE ({len(self.discrepancies)} cells with e != P(1))"
        lines.append(f"  IH characteristic cycles: {verdict}")
        for d in self.discrepancies[:10]:
            lines.append(f"    w={d['w'] or 'id'} v={d['v'] or 'id'}: e={d['e']} P(1)={d['P1']}")
        for name, flag in sorted(self.positivity.items()):
            state = "ok" if flag["holds"] else f"fails at {flag['first_violation']}"
            lines.append(f"  positivity[{name}] ({'strict' if flag['strict'] else 'weak'}): {state}")
        return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


# -- class computation, optionally in worker processes ------------------------

_WORKER: Dict[str, ParabolicData] = {}


def _init_worker(label: str, node: int, backend: str | None) -> None:
    _WORKER["pd"] = generate_WP(weyl_group(label, backend), node)


def _classes_for(pd: ParabolicData, index: int, memo: dict):
    w = pd.WP[index]
    return index, csm_cell(w, pd, memo=memo).coeffs, mather(w, pd).coeffs


def _worker_task(index: int):
    memo = _WORKER.setdefault("memo", {})
    return _classes_for(_WORKER["pd"], index, memo)


def _load_checkpoint(path: str, pd: ParabolicData) -> Dict[int, Tuple[SchubertClass, SchubertClass]]:
    W = pd.group
    done = {}
    try:
        with open(path) as fh:
            head = json.loads(fh.readline())
            if head != {"cartan": W.label, "node": pd.node, "format": "ccycle-classes"}:
                raise ValueError("header mismatch")
            for line in fh:
                rec = json.loads(line)
                w = W.parse_word(rec["w"])
                done[pd.position[w]] = (SchubertClass.from_pairs(W, rec["csm"]),
                                        SchubertClass.from_pairs(W, rec["mather"]))
    except FileNotFoundError:
        return {}
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring checkpoint %s: %s", path, exc)
        return {}
    return done


def compute_classes(pd: ParabolicData, workers: int = 1, checkpoint: str | None = None,
                    progress=None) -> Tuple[List[SchubertClass], List[SchubertClass]]:
    """CSM and Mather classes for all of W^P, assembled in basis order."""
    W = pd.group
    n = len(pd.WP)
    done = _load_checkpoint(checkpoint, pd) if checkpoint else {}
    todo = [i for i in range(n) if i not in done]
    fh = None
    if checkpoint:
        os.makedirs(os.path.dirname(os.path.abspath(checkpoint)), exist_ok=True)
        fresh = not done
        fh = open(checkpoint, "w" if fresh else "a")
        if fresh:
            fh.write(json.dumps({"cartan": W.label, "node": pd.node, "format": "ccycle-classes"},
                                sort_keys=True) + "\n")

    def record(i, c, m):
        cc, mm = SchubertClass._raw(c), SchubertClass._raw(m)
        done[i] = (cc, mm)
        if fh:
            fh.write(json.dumps({"w": W.word_string(pd.WP[i]),
                                 "csm": cc.to_pairs(W), "mather": mm.to_pairs(W)}) + "\n")
            fh.flush()
        if progress:
            progress(len(done), n)

    try:
        if workers <= 1 or len(todo) <= 1:
            memo: dict = {}
            for i in todo:
                record(*_classes_for(pd, i, memo))
        else:
            with ProcessPoolExecutor(workers, initializer=_init_worker,
                                     initargs=(W.label, pd.node, W.backend)) as ex:
                for i, c, m in ex.map(_worker_task, todo):
                    record(i, c, m)
    finally:
        if fh:
            fh.close()
    return [done[i][0] for i in range(n)], [done[i][1] for i in range(n)]


# -- verification -------------------------------------------------------------

def verify_irreducible(label: str, node: int, workers: int = 1, cache_dir: str | None = None,
                       allow_long: bool = False, progress=None) -> ObstructionReport:
    """Full pipeline for the cominuscule G/P given by (label, node)."""
    t0 = time.perf_counter()
    W = weyl_group(label)
    label = W.label
    check_node(label, node)
    if requires_allow_long(label) and not allow_long:
        raise LongRunError(f"{label} has |W| = {W.order()}; pass allow_long to run it")
    pd = generate_WP(W, node)
    timing: Dict[str, object] = {"backend": W.backend, "workers": workers}

    checkpoint = None
    if cache_dir and requires_allow_long(label):
        checkpoint = os.path.join(cache_dir, f"classes-{label}-{node}.jsonl")
    t = time.perf_counter()
    csm, ma = compute_classes(pd, workers, checkpoint, progress)
    C = ClassMatrix.from_classes(csm, pd)
    M = ClassMatrix.from_classes(ma, pd)
    timing["classes_s"] = round(time.perf_counter() - t, 3)

    t = time.perf_counter()
    E = euler_obstructions(M, C)
    timing["euler_s"] = round(time.perf_counter() - t, 3)

    t = time.perf_counter()
    cache = KLCache(W, os.path.join(cache_dir, f"kl-{label}.jsonl") if cache_dir else None)
    polys, at_one = kl_matrix(pd, cache)
    if cache_dir:
        cache.save()
    timing["kl_s"] = round(time.perf_counter() - t, 3)
    timing["kl_cache_loaded"] = cache.loaded

    K = ClassMatrix(list(C.basis), at_one)
    mult = ih_multiplicities(E, K)
    words = C.basis
    n = len(words)
    discrepancies = [
        {"w": words[j], "v": words[i], "e": E.rows[i][j], "P1": at_one[i][j]}
        for j in range(n) for i in range(n) if E.rows[i][j] != at_one[i][j]
    ]
    kl_records = [
        {"w": words[j], "v": words[i], "p": list(polys[i][j].coeffs)}
        for j in range(n) for i in range(n) if polys[i][j] is not None
    ]
    report = ObstructionReport(
        cartan=label, node=node, simply_laced=W.rs.datum.simply_laced, basis=list(words),
        csm=C.rows, mather=M.rows, euler=E.rows, kl_at_one=at_one,
        ih_multiplicities=mult.rows, kl_polynomials=kl_records,
        counts={"order_W": W.order(), "size_WP": n, "ideal_size": count_bruhat_ideal(pd)},
        irreducible=not discrepancies, discrepancies=discrepancies,
    )
    report.positivity = check_positivity(report)
    report.checks = {
        "identity_consistency": matmul(E.rows, mult.rows) == at_one,
        "multiplicities_identity": mult.rows == identity_matrix(n),
        "smooth_column_all_ones": all(E.rows[i][n - 1] == 1 for i in range(n)),
        "unit_triangular": all(X.is_unit_upper_triangular() for X in (C, M, E, K)),
    }
    if report.irreducible != report.checks["multiplicities_identity"]:
        raise VerificationError("verdict disagrees with the multiplicity matrix")
    timing["total_s"] = round(time.perf_counter() - t0, 3)
    report.timing = timing
    return report


def check_positivity(report: ObstructionReport) -> Dict[str, dict]:
    """Sign checks on the entries indexed by v <= w.

    ``euler`` and ``mather`` require >= 0, and > 0 when the type is simply
    laced; ``csm`` always requires > 0 (strong positivity).  The Bruhat
    relation is read off the KL matrix, whose entry is nonzero iff v <= w.
    """
    n = len(report.basis)
    words = report.basis
    below = [(i, j) for j in range(n) for i in range(j + 1) if report.kl_at_one[i][j]]
    sl = report.simply_laced

    def clause(rows, strict):
        for i, j in below:
            x = rows[i][j]
            if x < 0 or (strict and x == 0):
                return {"holds": False, "strict": strict,
                        "first_violation": {"w": words[j], "v": words[i], "value": x}}
        return {"holds": True, "strict": strict, "first_violation": None}

    return {
        "euler": clause(report.euler, sl),
        "mather": clause(report.mather, sl),
        "csm": clause(report.csm, True),
    }


@dataclass
class SweepResult:
    reports: List[ObstructionReport]
    failures: List[dict]

    def __iter__(self):
        return iter(self.reports)

    def __len__(self):
        return len(self.reports)


def parse_target(target: str | Tuple[str, int]) -> Tuple[str, int]:
    if isinstance(target, str):
        label, _, node = target.partition(":")
        if not node:
            raise ValueError(f"target {target!r} must look like 'E6:6'")
        return label.strip(), int(node)
    label, node = target
    return label, int(node)


def sweep(targets: Iterable[str | Tuple[str, int]], **kwargs) -> SweepResult:
    """verify_irreducible over several (type, node) pairs, collecting failures."""
    reports, failures = [], []
    for target in targets:
        try:
            label, node = parse_target(target)
            reports.append(verify_irreducible(label, node, **kwargs))
        except Exception as exc:  # keep going; report at the end
            log.error("sweep target %s failed: %s", target, exc)
            failures.append({"target": str(target), "error": f"{type(exc).__name__}: {exc}"})
    return SweepResult(reports, failures)
