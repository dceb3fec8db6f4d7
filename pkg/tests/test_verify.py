import json
import os
import subprocess
import sys

import pytest

from ccycle.classes import identity_matrix, matmul
from ccycle.verify import (LongRunError, NodeError, ObstructionReport, check_positivity,
                           compute_classes, parse_target, sweep, verify_irreducible)
from ccycle.weyl import generate_WP


@pytest.mark.parametrize("label,node,expected", [
    ("A2", 1, True), ("A3", 2, True), ("A4", 2, True), ("A4", 1, True), ("D4", 4, True),
    ("D4", 1, True), ("D5", 5, True), ("E6", 6, True), ("E6", 1, True),
    ("C2", 2, False), ("C3", 3, False), ("B3", 1, False), ("B4", 1, False), ("C4", 4, False),
])
def test_verdicts(label, node, expected):
    r = verify_irreducible(label, node)
    assert r.irreducible is expected
    assert bool(r.discrepancies) is not expected
    n = len(r.basis)
    assert matmul(r.euler, r.ih_multiplicities) == r.kl_at_one
    assert (r.ih_multiplicities == identity_matrix(n)) is expected
    assert r.checks["multiplicities_identity"] is expected
    assert all(v for k, v in r.checks.items() if k != "multiplicities_identity")
    assert [r.euler[i][n - 1] for i in range(n)] == [1] * n


def test_c2_discrepancy():
    r = verify_irreducible("C2", 2)
    assert r.discrepancies == [{"w": "1,2", "v": "", "e": 0, "P1": 1}]


def test_positivity_clauses():
    e6 = verify_irreducible("E6", 6).positivity
    assert all(c["holds"] and c["strict"] for c in e6.values())
    for label, node in [("C2", 2), ("C3", 3)]:
        pos = verify_irreducible(label, node).positivity
        assert pos["euler"] == {"holds": True, "strict": False, "first_violation": None}
        assert pos["mather"]["holds"]


def test_positivity_reports_first_violation():
    r = verify_irreducible("A3", 2)
    r.euler = [row[:] for row in r.euler]
    r.euler[0][5] = -1
    pos = check_positivity(r)
    assert pos["euler"]["first_violation"] == {"w": r.basis[5], "v": "", "value": -1}
    assert pos["csm"]["holds"]


def test_report_support_monotone():
    # a coefficient indexed by (v, w) is nonzero only if v <= w
    r = verify_irreducible("E6", 6)
    n = len(r.basis)
    for M in (r.csm, r.mather, r.euler):
        for i in range(n):
            for j in range(n):
                if M[i][j]:
                    assert r.kl_at_one[i][j] > 0


def test_smooth_row_mather_nonnegative():
    for label, node in [("C3", 3), ("B3", 1), ("E6", 6)]:
        r = verify_irreducible(label, node)
        assert all(row[-1] >= 0 for row in r.mather)


def test_determinism_across_workers():
    a = verify_irreducible("E6", 6, workers=1).to_json(timing=False)
    b = verify_irreducible("E6", 6, workers=3).to_json(timing=False)
    assert a == b


def test_determinism_across_backends():
    env = dict(os.environ, CCYCLE_PURE_PYTHON="1")
    code = "from ccycle.verify import verify_irreducible as v; print(v('D4', 4).to_json(timing=False))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout
    assert out.strip() == verify_irreducible("D4", 4).to_json(timing=False)


def test_report_roundtrip():
    r = verify_irreducible("C3", 3)
    d = json.loads(r.to_json())
    assert "timing" in d and "timing" not in json.loads(r.to_json(timing=False))
    back = ObstructionReport.from_dict(d)
    assert back.to_json() == r.to_json()
    assert "REDUCIBLE" in r.summary()


def test_errors():
    with pytest.raises(NodeError, match="valid nodes: \\[1, 6\\]"):
        verify_irreducible("E6", 2)
    with pytest.raises(NodeError):
        verify_irreducible("F4", 1)
    with pytest.raises(LongRunError):
        verify_irreducible("E7", 7)


def test_checkpoint_resume(tmp_path):
    pd = generate_WP("D4", 4)
    path = str(tmp_path / "ck.jsonl")
    first = compute_classes(pd, checkpoint=path)
    lines = open(path).read().splitlines()
    assert len(lines) == 1 + len(pd)
    # drop the last records, as if interrupted, then resume
    with open(path, "w") as fh:
        fh.write("\n".join(lines[:4]) + "\n")
    seen = []
    again = compute_classes(pd, checkpoint=path, progress=lambda d, n: seen.append(d))
    assert again == first
    assert seen[0] == 4
    assert len(open(path).read().splitlines()) == 1 + len(pd)


def test_sweep():
    assert len(sweep([])) == 0
    res = sweep(["A2:1", ("A3", 2)])
    assert [r.cartan for r in res] == ["A2", "A3"] and not res.failures
    res = sweep(["C2:2", "D4:4", "E6:3"])
    assert [r.irreducible for r in res] == [False, True]
    assert res.failures[0]["target"] == "E6:3"
    with pytest.raises(ValueError):
        parse_target("E6")
