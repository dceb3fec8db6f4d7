"""Sparse Schubert-basis classes in H_*(G/B) and the operators acting on them.

A class is a map from Weyl group elements to nonzero integers; ``[X_w]`` is
the homology class of the Schubert variety of ``w``.  All operators return
fresh classes and never modify their input.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, Iterable, List, Sequence, Tuple

from .weyl import ParabolicData, WeylElement, WeylGroup


class SchubertClass:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[WeylElement, int] | Iterable | None = None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        self.coeffs: Dict[WeylElement, int] = {}
        for w, x in items:
            self.coeffs[w] = self.coeffs.get(w, 0) + x
        self.coeffs = {w: x for w, x in self.coeffs.items() if x}

    @classmethod
    def schubert(cls, w: WeylElement, coeff: int = 1) -> "SchubertClass":
        return cls({w: coeff})

    @classmethod
    def _raw(cls, coeffs: Dict[WeylElement, int]) -> "SchubertClass":
        obj = cls.__new__(cls)
        obj.coeffs = {w: x for w, x in coeffs.items() if x}
        return obj

    def __getitem__(self, w) -> int:
        return self.coeffs.get(w, 0)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def items(self):
        return self.coeffs.items()

    def support(self) -> set:
        return set(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, SchubertClass):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "SchubertClass") -> "SchubertClass":
        out = dict(self.coeffs)
        for w, x in other.coeffs.items():
            out[w] = out.get(w, 0) + x
        return SchubertClass._raw(out)

    def __sub__(self, other: "SchubertClass") -> "SchubertClass":
        out = dict(self.coeffs)
        for w, x in other.coeffs.items():
            out[w] = out.get(w, 0) - x
        return SchubertClass._raw(out)

    def __neg__(self):
        return SchubertClass._raw({w: -x for w, x in self.coeffs.items()})

    def __mul__(self, k: int):
        return SchubertClass._raw({w: k * x for w, x in self.coeffs.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"SchubertClass({len(self.coeffs)} terms)"

    def to_pairs(self, W: WeylGroup) -> List[Tuple[str, int]]:
        """``(reduced word, coefficient)`` pairs sorted by (length, word)."""
        rows = [(W.reduced_word(w), x) for w, x in self.coeffs.items()]
        rows.sort(key=lambda r: (len(r[0]), r[0]))
        return [(",".join(map(str, word)), x) for word, x in rows]

    @classmethod
    def from_pairs(cls, W: WeylGroup, pairs: Iterable[Sequence]) -> "SchubertClass":
        return cls((W.parse_word(word), int(x)) for word, x in pairs)

    def format(self, W: WeylGroup) -> str:
        terms = [f"{x}[{word or 'id'}]" for word, x in self.to_pairs(W)]
        return " + ".join(terms) if terms else "0"


def _cap_coefficients(W: WeylGroup, weight: Tuple[int, ...]) -> List[int]:
    """<-weight, alpha^vee> for every positive root alpha, by root index."""
    cache = W._cap_cache
    coef = cache.get(weight)
    if coef is None:
        rows = W.rs.pairing_table
        coef = [-sum(l * row[j] for j, l in enumerate(weight) if l) for row in rows]
        cache[weight] = coef
    return coef


def chern_cap(W: WeylGroup, weight: Sequence[int], c: SchubertClass) -> SchubertClass:
    """c_1(L_weight) cap c, by the Chevalley formula.

    ``weight`` is an integer vector in the simple-root basis.  Each ``[X_u]``
    goes to the sum of ``<-weight, alpha^vee> [X_{u s_alpha}]`` over positive
    alpha with ``l(u s_alpha) = l(u) - 1``; these alpha lie in the inversion
    set of u, which is all the kernel scans.
    """
    coef = _cap_coefficients(W, tuple(weight))
    out: Dict[WeylElement, int] = defaultdict(int)
    covers = W.covers
    for u, x in c.coeffs.items():
        for v, a in covers(u):
            k = coef[a]
            if k:
                out[v] += k * x
    return SchubertClass._raw(out)


def bgg(W: WeylGroup, i: int, c: SchubertClass) -> SchubertClass:
    """BGG operator: [X_w] -> [X_{w s_i}] if l(w s_i) > l(w), else 0."""
    N = W.N
    j = i - 1
    step = W.kernel.right_simple
    out = {}
    for u, x in c.coeffs.items():
        if u[j] < N:
            out[step(u, j)] = x
    return SchubertClass._raw(out)


def dl_op(W: WeylGroup, i: int, c: SchubertClass) -> SchubertClass:
    """Demazure-Lusztig operator T_i = (1 + c_1(L_{-alpha_i})) d_i - id."""
    d = bgg(W, i, c)
    minus_alpha = tuple(-int(j == i - 1) for j in range(W.n))
    out = dict(d.coeffs)
    for u, x in chern_cap(W, minus_alpha, d).coeffs.items():
        out[u] = out.get(u, 0) + x
    for u, x in c.coeffs.items():
        out[u] = out.get(u, 0) - x
    return SchubertClass._raw(out)


def pushforward_to_P(c: SchubertClass, pd: ParabolicData) -> SchubertClass:
    """pi_*: keep [X_w] for w in W^P, drop the rest."""
    pos = pd.position
    return SchubertClass._raw({w: x for w, x in c.coeffs.items() if w in pos})
