"""Finite root systems built from Cartan matrices.

Conventions
-----------
Nodes are numbered as in Bourbaki, starting at 1.  The Cartan matrix entry
``cartan[i][j]`` is ``<alpha_i^vee, alpha_j>``, so the simple reflection acts
by ``s_i(beta) = beta - <alpha_i^vee, beta> alpha_i`` with
``<alpha_i^vee, beta> = sum_j cartan[i][j] * beta_j``.

Roots are integer vectors in the simple-root basis.  Inside a
:class:`RootSystem` every root also has an integer index: positive roots take
``0 .. N-1`` (ordered by height, simple roots first in node order) and the
negative of root ``k`` has index ``k + N``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Sequence, Tuple

Root = Tuple[int, ...]

_LABEL = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


class CartanError(ValueError):
    """Raised for malformed or non-finite Cartan data."""


@dataclass(frozen=True)
class CartanDatum:
    label: str
    cartan: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        a = self.cartan
        n = len(a)
        if n == 0 or any(len(row) != n for row in a):
            raise CartanError(f"{self.label}: Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError(f"{self.label}: diagonal entry ({i + 1},{i + 1}) is not 2")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise CartanError(f"{self.label}: positive off-diagonal entry at ({i + 1},{j + 1})")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise CartanError(f"{self.label}: entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) disagree on zero")

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simply_laced(self) -> bool:
        return all(x in (0, -1) for i, row in enumerate(self.cartan)
                   for j, x in enumerate(row) if i != j)


def _chain(n: int) -> List[List[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _edges(n: int, edges: Sequence[Tuple[int, int]]) -> List[List[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return a


def cartan_matrix(letter: str, rank: int) -> List[List[int]]:
    """Cartan matrix of a finite type in Bourbaki numbering."""
    letter = letter.upper()
    n = rank
    if letter == "A" and n >= 1:
        return _chain(n)
    if letter == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2  # alpha_n short
        return a
    if letter == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2  # alpha_n long
        return a
    if letter == "D" and n >= 3:
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        return _edges(n, edges)
    if letter == "E" and n in (6, 7, 8):
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
        return _edges(n, edges)
    if letter == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        return a
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]]  # alpha_1 short
    raise CartanError(f"no finite type {letter}{rank}")


def parse_label(label: str) -> CartanDatum:
    """Parse strings such as ``"E6"`` or ``"c3"`` into a :class:`CartanDatum`."""
    m = _LABEL.match(label)
    if not m:
        raise CartanError(f"cannot parse Lie type label {label!r}")
    letter, rank = m.group(1).upper(), int(m.group(2))
    a = cartan_matrix(letter, rank)
    return CartanDatum(f"{letter}{rank}", tuple(tuple(row) for row in a))


def _symmetrizer(a: Sequence[Sequence[int]]) -> List[int]:
    """Positive integers d_i with d_i * a[i][j] symmetric; d_i ~ (alpha_i, alpha_i)/2."""
    n = len(a)
    d: List[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0:
                    dj = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = dj
                        stack.append(j)
                    elif d[j] != dj:
                        raise CartanError("Cartan matrix is not symmetrizable")
    den = lcm(*(x.denominator for x in d))
    return [int(x * den) for x in d]


@dataclass
class RootSystem:
    """A finite root system with its index tables.

    ``positive_roots[k]`` is the root with index ``k``; ``roots`` lists all
    ``2N`` roots by index.  ``pairing_table[a][b]`` holds
    ``<alpha_a^vee, beta_b>`` for positive ``a`` and any ``b``.
    """

    datum: CartanDatum
    positive_roots: List[Root]
    roots: List[Root]
    index: Dict[Root, int]
    pairing_table: List[List[int]]
    highest_root: Root
    symmetrizer: List[int]
    reflection_index: Dict[Tuple[int, ...], int] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def label(self) -> str:
        return self.datum.label

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> Root:
        """Simple root alpha_i (1-based node)."""
        return self.positive_roots[i - 1]

    def negate(self, r: int) -> int:
        N = self.num_positive
        return r + N if r < N else r - N

    def is_positive(self, r: int) -> bool:
        return r < self.num_positive

    def height(self, beta: Root) -> int:
        return sum(beta)

    def form(self, alpha: Root, beta: Root) -> int:
        """Symmetric invariant form, scaled so it is integral."""
        a, d = self.datum.cartan, self.symmetrizer
        n = self.rank
        return sum(alpha[i] * d[i] * a[i][j] * beta[j]
                   for i in range(n) if alpha[i] for j in range(n) if beta[j])

    def pairing(self, alpha: Root, beta: Root) -> int:
        """``<alpha^vee, beta>`` for a root ``alpha`` and any lattice vector ``beta``."""
        k = self.index.get(tuple(alpha))
        if k is None:
            raise KeyError(f"{alpha} is not a root of {self.label}")
        beta = tuple(beta)
        j = self.index.get(beta)
        if j is not None:
            if k < self.num_positive:
                return self.pairing_table[k][j]
            return -self.pairing_table[self.negate(k)][j]
        # arbitrary lattice vector: expand in simple roots
        if k >= self.num_positive:
            return -self.pairing(self.roots[self.negate(k)], beta)
        row = self.pairing_table[k]
        return sum(c * row[i] for i, c in enumerate(beta) if c)

    def reflect(self, alpha: Root, beta: Root) -> Root:
        """s_alpha(beta)."""
        c = self.pairing(alpha, beta)
        return tuple(b - c * a for a, b in zip(alpha, beta))

    def reflection_key(self, alpha: Root) -> Tuple[int, ...]:
        """Canonical Weyl-element form of s_alpha: indices of s_alpha(alpha_j)."""
        return tuple(self.index[self.reflect(alpha, self.simple_root(j))]
                     for j in range(1, self.rank + 1))

    def root_of_reflection(self, t: Tuple[int, ...]) -> Root:
        """The positive root alpha with s_alpha == t."""
        try:
            return self.positive_roots[self.reflection_index[tuple(t)]]
        except KeyError:
            raise ValueError(f"{t} is not a reflection in {self.label}") from None

    def cominuscule_nodes(self) -> List[int]:
        return cominuscule_nodes(self)


def _root_bound(n: int) -> int:
    # largest |R^+| among finite types of rank n (E8 has 120)
    return max(n * n, 120)


def build_root_system(datum: CartanDatum | str) -> RootSystem:
    """Close the simple roots under simple reflections and index everything."""
    if isinstance(datum, str):
        datum = parse_label(datum)
    a = datum.cartan
    n = datum.rank
    bound = _root_bound(n)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(a[i][j] * beta[j] for j in range(n))
                if c == 0:
                    continue
                gamma = list(beta)
                gamma[i] -= c
                gamma = tuple(gamma)
                if all(x <= 0 for x in gamma):
                    continue  # only -alpha_i is reached this way
                if any(x < 0 for x in gamma):
                    raise CartanError(f"{datum.label}: reflection produced a root of mixed sign")
                if gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
                    if len(found) > bound:
                        raise CartanError(f"{datum.label}: root closure exceeds {bound}; type is not finite")
        frontier = nxt

    positive = sorted(found, key=lambda r: (sum(r), tuple(-x for x in r)))
    N = len(positive)
    roots = positive + [tuple(-x for x in r) for r in positive]
    index = {r: k for k, r in enumerate(roots)}
    d = _symmetrizer(a)

    def form(x, y):
        return sum(x[i] * d[i] * a[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])

    table = []
    for alpha in positive:
        aa = form(alpha, alpha)
        row = []
        for beta in roots:
            num = 2 * form(alpha, beta)
            if num % aa:
                raise CartanError(f"{datum.label}: non-integral pairing")
            row.append(num // aa)
        table.append(row)

    highest = positive[-1]
    rs = RootSystem(datum, positive, roots, index, table, highest, d, {})
    rs.reflection_index = {rs.reflection_key(alpha): k for k, alpha in enumerate(positive)}
    return rs


def cominuscule_nodes(rs: RootSystem) -> List[int]:
    """Nodes whose simple root has coefficient 1 in the highest root."""
    return [i + 1 for i, c in enumerate(rs.highest_root) if c == 1]


def root_system(label: str) -> RootSystem:
    return build_root_system(parse_label(label))
