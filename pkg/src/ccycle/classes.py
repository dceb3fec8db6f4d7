"""CSM classes of Schubert cells, Mather classes of Schubert varieties, and
the Euler-obstruction / IH-multiplicity matrices derived from them.

Matrix convention: ``rows[i][j]`` is the coefficient of ``[X_{basis[i]}]`` in
the class attached to ``basis[j]``; columns are classes.  With the basis W^P
sorted by length every such matrix is upper triangular.  In particular the
Euler-obstruction matrix ``E`` has ``E.rows[i][j] = e_{basis[j], basis[i]}``
and satisfies ``Mather = CSM * E``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

from .homology import SchubertClass, chern_cap, dl_op, pushforward_to_P
from .weyl import ParabolicData, WeylElement, WeylGroup

Matrix = List[List[int]]


class TriangularityError(ArithmeticError):
    """A matrix that must be unit upper triangular is not."""


# -- classes in G/B and G/P ---------------------------------------------------

def csm_schubert_cell_B(W: WeylGroup, w: WeylElement,
                        memo: Dict[WeylElement, SchubertClass] | None = None) -> SchubertClass:
    """c_SM of the cell of w in G/B, memoized along lexicographically smallest words."""
    if memo is None:
        memo = {}
    if w == W.identity:
        return SchubertClass.schubert(w)
    chain = []
    u = w
    while u not in memo and u != W.identity:
        i = W.reduced_word(u)[-1]
        chain.append(i)
        u = W.right_mul_simple(u, i)
    c = memo.get(u) or SchubertClass.schubert(W.identity)
    for i in reversed(chain):
        c = dl_op(W, i, c)
        u = W.right_mul_simple(u, i)
        memo[u] = c
    return c


def csm_cell(w: WeylElement, pd: ParabolicData, word: Sequence[int] | None = None,
             memo: Dict[WeylElement, SchubertClass] | None = None) -> SchubertClass:
    """c_SM of the Schubert cell of w in G/P.

    Applies T_{i_1}, then T_{i_2}, ..., T_{i_k} to [X_id] for the reduced word
    ``s_{i_1} ... s_{i_k}`` of w and pushes forward.  ``word`` overrides the
    default (lexicographically smallest) reduced word.
    """
    W = pd.group
    pd.check(w)
    if word is None:
        c = csm_schubert_cell_B(W, w, memo)
    else:
        if W.from_word(word) != w or len(word) != W.length(w):
            raise ValueError("word is not a reduced word for w")
        c = SchubertClass.schubert(W.identity)
        for i in word:
            c = dl_op(W, i, c)
    return pushforward_to_P(c, pd)


def mather(w: WeylElement, pd: ParabolicData, order: Sequence[int] | None = None) -> SchubertClass:
    """Mather class of the Schubert variety X_w in a cominuscule G/P.

    Caps [X_w] with the total Chern class c(L_{-alpha}) = 1 + c_1(L_{-alpha})
    for every alpha in the inversion set of w, one factor at a time, then
    pushes forward.  ``order`` permutes the factors (root indices).
    """
    W = pd.group
    pd.check(w)
    inv = W.inversion_indices(w)
    if order is not None:
        if sorted(order) != sorted(inv):
            raise ValueError("order must be a permutation of the inversion set")
        inv = list(order)
    c = SchubertClass.schubert(w)
    roots = W.rs.positive_roots
    for a in inv:
        minus = tuple(-x for x in roots[a])
        c = c + chern_cap(W, minus, c)
    return pushforward_to_P(c, pd)


# -- matrices -----------------------------------------------------------------

@dataclass
class ClassMatrix:
    basis: List[str]
    rows: Matrix

    @classmethod
    def from_classes(cls, classes: Sequence[SchubertClass], pd: ParabolicData) -> "ClassMatrix":
        n = len(pd.WP)
        rows = [[0] * n for _ in range(n)]
        for j, c in enumerate(classes):
            for v, x in c.items():
                rows[pd.position[v]][j] = x
        return cls(pd.words(), rows)

    @property
    def size(self) -> int:
        return len(self.basis)

    def column(self, j: int) -> List[int]:
        return [row[j] for row in self.rows]

    def is_unit_upper_triangular(self) -> bool:
        return all(self.rows[i][i] == 1 and all(x == 0 for x in self.rows[i][:i])
                   for i in range(self.size))

    def to_dict(self) -> dict:
        return {"basis": list(self.basis), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> "ClassMatrix":
        return cls(list(d["basis"]), [list(map(int, r)) for r in d["rows"]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow([""] + [b or "id" for b in self.basis])
        for b, row in zip(self.basis, self.rows):
            out.writerow([b or "id"] + row)
        return buf.getvalue()


class ObstructionMatrix(ClassMatrix):
    """Local Euler obstructions: ``rows[i][j] = e_{basis[j], basis[i]}``."""


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(m) if A[i][k]) for j in range(p)]
            for i in range(n)]


def solve_unit_upper(A: Matrix, B: Matrix) -> Matrix:
    """Exact X with A X = B for unit upper-triangular integer A."""
    n = len(A)
    for i in range(n):
        if A[i][i] != 1:
            raise TriangularityError(f"diagonal entry {i} is {A[i][i]}, not 1")
        if any(A[i][k] for k in range(i)):
            raise TriangularityError(f"row {i} has entries below the diagonal")
    cols = len(B[0]) if B else 0
    X = [[0] * cols for _ in range(n)]
    for j in range(cols):
        for i in range(n - 1, -1, -1):
            s = B[i][j]
            row = A[i]
            for k in range(i + 1, n):
                if row[k]:
                    s -= row[k] * X[k][j]
            X[i][j] = s  # unit diagonal: no division, stays integral
    return X


def euler_obstructions(M: ClassMatrix, C: ClassMatrix) -> ObstructionMatrix:
    """E with M = C E, by back-substitution over the integers."""
    if M.basis != C.basis:
        raise ValueError("Mather and CSM matrices use different bases")
    for name, X in (("Mather", M), ("CSM", C)):
        if not X.is_unit_upper_triangular():
            raise TriangularityError(f"{name} matrix is not unit upper triangular")
    E = solve_unit_upper(C.rows, M.rows)
    out = ObstructionMatrix(list(M.basis), E)
    if not out.is_unit_upper_triangular():
        raise TriangularityError("Euler-obstruction matrix is not unit upper triangular")
    return out


def ih_multiplicities(E: ClassMatrix, K: ClassMatrix) -> ClassMatrix:
    """IH multiplicities m with P_{w,v}(1) = sum_u m_{w,u} e_{u,v}.

    In the column convention this reads K = E m, so m = E^{-1} K.
    """
    if E.basis != K.basis:
        raise ValueError("matrices use different bases")
    if not K.is_unit_upper_triangular():
        raise TriangularityError("KL matrix is not unit upper triangular")
    return ClassMatrix(list(E.basis), solve_unit_upper(E.rows, K.rows))


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def all_classes(pd: ParabolicData, elements: Iterable[WeylElement] | None = None):
    """``(csm_cells, mather_classes)`` for the given elements of W^P (default all)."""
    elements = pd.WP if elements is None else list(elements)
    memo: Dict[WeylElement, SchubertClass] = {}
    csm = [csm_cell(w, pd, memo=memo) for w in elements]
    ma = [mather(w, pd) for w in elements]
    return csm, ma
