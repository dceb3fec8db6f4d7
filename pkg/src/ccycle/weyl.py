"""Weyl groups, Bruhat order and parabolic quotients.

A Weyl group element is a tuple ``w`` whose ``j``-th entry is the root index
(see :mod:`ccycle.rootsys`) of ``w(alpha_{j+1})``.  The tuple is the
canonical form: hashable, totally ordered, and cheap to update under right
multiplication by a simple reflection.

Simple reflections are numbered from 1 in every public method; reduced words
are lists of these numbers and serialize as ``"1,3,4,2"`` (the identity is
the empty string).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .kernels import kernel_class
from .rootsys import Root, RootSystem, root_system

WeylElement = Tuple[int, ...]


def kernel_tables(rs: RootSystem) -> dict:
    n, N = rs.rank, rs.num_positive
    roots, index = rs.roots, rs.index
    sref = [[index[rs.reflect(rs.simple_root(i + 1), beta)] for beta in roots]
            for i in range(n)]
    add = [[index.get(tuple(x + y for x, y in zip(b1, b2)), -1) for b2 in roots]
           for b1 in roots]
    parent = [-1] * N
    pj = list(range(N))
    for p in range(n, N):
        beta = roots[p]
        for j in range(n):
            prev = list(beta)
            prev[j] -= 1
            k = index.get(tuple(prev))
            if k is not None and k < N:
                parent[p], pj[p] = k, j
                break
        else:
            raise AssertionError(f"root {beta} has no positive predecessor")
    pair = [row[:n] for row in rs.pairing_table]
    cart = [list(r) for r in rs.datum.cartan]
    return dict(n=n, N=N, sref=sref, add=add, parent=parent, pj=pj, pair=pair, cart=cart)


class WeylGroup:
    """Arithmetic in the Weyl group of a root system."""

    def __init__(self, rs: RootSystem, backend: str | None = None):
        self.rs = rs
        self.n = rs.rank
        self.N = rs.num_positive
        self.kernel = kernel_class(backend)(**kernel_tables(rs))
        self.backend = self.kernel.backend
        self.identity: WeylElement = tuple(range(self.n))
        self._covers: Dict[WeylElement, tuple] = {}
        self._quotients: Dict[frozenset, List[WeylElement]] = {}
        self._cap_cache: Dict[tuple, List[int]] = {}

    def __repr__(self):
        return f"WeylGroup({self.rs.label}, backend={self.backend!r})"

    @property
    def label(self) -> str:
        return self.rs.label

    # -- construction -------------------------------------------------------

    def s(self, i: int) -> WeylElement:
        return self.kernel.right_simple(self.identity, i - 1)

    def from_word(self, word: Iterable[int]) -> WeylElement:
        w = self.identity
        rs_ = self.kernel.right_simple
        for i in word:
            if not 1 <= i <= self.n:
                raise ValueError(f"simple index {i} out of range 1..{self.n}")
            w = rs_(w, i - 1)
        return w

    def parse_word(self, text: str) -> WeylElement:
        text = text.strip()
        return self.from_word(int(t) for t in text.split(",")) if text else self.identity

    def reflection(self, alpha: Root) -> WeylElement:
        return self.rs.reflection_key(tuple(alpha))

    # -- group law ----------------------------------------------------------

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return self.kernel.compose(u, v)

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.kernel.inverse(w)

    def right_mul_simple(self, w: WeylElement, i: int) -> WeylElement:
        return self.kernel.right_simple(w, i - 1)

    def left_mul_simple(self, w: WeylElement, i: int) -> WeylElement:
        return self.kernel.left_simple(w, i - 1)

    def act(self, w: WeylElement, beta: Root) -> Root:
        """w(beta) for a root beta."""
        return self.rs.roots[self.kernel.act(w, self.rs.index[tuple(beta)])]

    # -- length, words, descents --------------------------------------------

    def length(self, w: WeylElement) -> int:
        return self.kernel.length(w)

    def right_descents(self, w: WeylElement) -> List[int]:
        N = self.N
        return [j + 1 for j, r in enumerate(w) if r >= N]

    def left_descents(self, w: WeylElement) -> List[int]:
        return [j + 1 for j in self.kernel.left_descents(w)]

    def reduced_word(self, w: WeylElement) -> List[int]:
        """Lexicographically smallest reduced word."""
        # smallest left descent of w == smallest right descent of w^-1
        u = self.kernel.inverse(w)
        N = self.N
        word = []
        while True:
            for j, r in enumerate(u):
                if r >= N:
                    break
            else:
                return word
            word.append(j + 1)
            u = self.kernel.right_simple(u, j)

    def word_string(self, w: WeylElement) -> str:
        return ",".join(map(str, self.reduced_word(w)))

    def inversion_indices(self, w: WeylElement) -> List[int]:
        return self.kernel.inversions(w)

    def inversion_set(self, w: WeylElement) -> set:
        """Positive roots alpha with w(alpha) < 0."""
        return {self.rs.positive_roots[a] for a in self.kernel.inversions(w)}

    # -- Bruhat order -------------------------------------------------------

    def bruhat_leq(self, v: WeylElement, w: WeylElement) -> bool:
        return self.kernel.bruhat_leq(v, w)

    def covers(self, w: WeylElement) -> tuple:
        """``((w s_alpha, alpha_index), ...)`` over alpha with l(w s_alpha) = l(w) - 1."""
        c = self._covers.get(w)
        if c is None:
            c = self._covers[w] = tuple(self.kernel.covers(w))
        return c

    def bruhat_ideal(self, w: WeylElement) -> List[WeylElement]:
        """All v <= w, via [e, us] = [e, u] U [e, u]s along a reduced word."""
        return self.kernel.ideal([i - 1 for i in self.reduced_word(w)])

    def bruhat_ideal_size(self, w: WeylElement) -> int:
        return self.kernel.ideal_size([i - 1 for i in self.reduced_word(w)])

    # -- distinguished elements ---------------------------------------------

    def longest_in(self, subset: Iterable[int]) -> WeylElement:
        """Longest element of the parabolic subgroup generated by ``subset``."""
        subset = sorted(subset)
        N = self.N
        w = self.identity
        while True:
            for j in subset:
                if w[j - 1] < N:  # ascent
                    w = self.kernel.right_simple(w, j - 1)
                    break
            else:
                return w

    def longest_element(self) -> WeylElement:
        return self.longest_in(range(1, self.n + 1))

    def order(self) -> int:
        """|W| from the product of (ht + 1)/ht over positive roots."""
        q = Fraction(1)
        for beta in self.rs.positive_roots:
            h = sum(beta)
            q *= Fraction(h + 1, h)
        assert q.denominator == 1
        return int(q)

    def is_minimal(self, w: WeylElement, subset: Iterable[int]) -> bool:
        """True when w(alpha_j) > 0 for every j in subset (w is in W^K)."""
        N = self.N
        return all(w[j - 1] < N for j in subset)

    def minimal_representative(self, w: WeylElement, subset: Iterable[int]) -> WeylElement:
        subset = list(subset)
        N = self.N
        while True:
            for j in subset:
                if w[j - 1] >= N:
                    w = self.kernel.right_simple(w, j - 1)
                    break
            else:
                return w

    def quotient(self, subset: Iterable[int]) -> List[WeylElement]:
        """Minimal representatives W^K, grown one length at a time by left multiplication.

        If ``s_{i_1} ... s_{i_k}`` is in W^K then so is ``s_{i_2} ... s_{i_k}``,
        so every element of length k+1 is ``s_i u`` for some u of length k.
        Sorted by length, then by reduced word.
        """
        key = frozenset(subset)
        cached = self._quotients.get(key)
        if cached is not None:
            return cached
        sub = sorted(key)
        out = [self.identity]
        prev: set = set()
        level = [self.identity]
        while level:
            current = set(level)
            nxt = set()
            for u in level:
                for i in range(self.n):
                    w = self.kernel.left_simple(u, i)
                    if w in prev or w in current or w in nxt:
                        continue
                    if self.is_minimal(w, sub):
                        nxt.add(w)
            prev = current
            level = sorted(nxt, key=self.reduced_word)
            out.extend(level)
        self._quotients[key] = out
        return out

    def elements(self) -> List[WeylElement]:
        """Every element of W, by length (use on small groups only)."""
        return self.quotient(())


@lru_cache(maxsize=None)
def weyl_group(label: str, backend: str | None = None) -> WeylGroup:
    return WeylGroup(root_system(label), backend)


def longest_element(W: WeylGroup) -> WeylElement:
    return W.longest_element()


@dataclass
class ParabolicData:
    """W^P and friends for the maximal parabolic omitting ``node``."""

    group: WeylGroup
    node: int
    simple_P: Tuple[int, ...]
    positive_roots_P: List[Root]
    WP: List[WeylElement]
    w_P: WeylElement
    position: Dict[WeylElement, int] = field(repr=False)

    @property
    def top(self) -> WeylElement:
        """w_0^P, the longest element of W^P."""
        return self.WP[-1]

    def __len__(self):
        return len(self.WP)

    def __contains__(self, w) -> bool:
        return w in self.position

    def words(self) -> List[str]:
        return [self.group.word_string(w) for w in self.WP]

    def projection(self, w: WeylElement) -> WeylElement:
        return self.group.minimal_representative(w, self.simple_P)

    def check(self, w: WeylElement) -> None:
        if w not in self.position:
            raise ValueError(f"{self.group.word_string(w) or 'id'} is not a minimal representative")


def generate_WP(W: WeylGroup | RootSystem | str, node: int) -> ParabolicData:
    if not isinstance(W, WeylGroup):
        W = weyl_group(W) if isinstance(W, str) else WeylGroup(W)
    if not 1 <= node <= W.n:
        raise ValueError(f"node {node} out of range 1..{W.n}")
    S_P = tuple(j for j in range(1, W.n + 1) if j != node)
    R_P = [beta for beta in W.rs.positive_roots if beta[node - 1] == 0]
    WP = W.quotient(S_P)
    return ParabolicData(W, node, S_P, R_P, WP, W.longest_in(S_P),
                         {w: k for k, w in enumerate(WP)})


def maximal_representative(w: WeylElement, pd: ParabolicData) -> WeylElement:
    """w * w_P, the longest element of the coset w W_P."""
    pd.check(w)
    return pd.group.multiply(w, pd.w_P)


def count_bruhat_ideal(pd: ParabolicData) -> int:
    """#{v in W : v <= w_0^P}."""
    return pd.group.bruhat_ideal_size(pd.top)
